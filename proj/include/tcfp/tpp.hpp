#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tcfp/cohomology.hpp"
#include "tcfp/modforms.hpp"
#include "tcfp/petersson.hpp"

namespace tcfp {

// ---------------------------------------------------------------------------
// Gram oracles

/// Supplies the classical Petersson Gram matrix of the Miller basis of S_w.
/// Implementations must be safe for concurrent calls.
template <class S>
class GramOracle {
 public:
  using scalar_type = S;
  virtual ~GramOracle() = default;
  /// dim_cusp(w) x dim_cusp(w) Hermitian matrix, G(i, j) = <b_i, b_j>.
  virtual Matrix<S> gram(int weight) const = 0;
};

/// Quadrature-backed oracle with a memo per weight.
class QuadratureGramOracle final : public GramOracle<Complex> {
 public:
  explicit QuadratureGramOracle(QuadratureConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

  Matrix<Complex> gram(int weight) const override {
    if (dim_cusp(weight) == 0) return {};
    std::lock_guard lock(mu_);
    auto it = cache_.find(weight);
    if (it == cache_.end()) it = cache_.emplace(weight, tcfp::gram(weight, cfg_)).first;
    return it->second.matrix;
  }

  /// Largest error estimate among the Gram matrices computed so far.
  Real max_error_estimate() const {
    std::lock_guard lock(mu_);
    Real e = 0;
    for (const auto& [w, g] : cache_) e = std::max(e, g.error_estimate);
    return e;
  }
  const QuadratureConfig& config() const { return cfg_; }

 private:
  QuadratureConfig cfg_;
  mutable std::mutex mu_;
  mutable std::map<int, PeterssonGram> cache_;
};

namespace detail {

template <class S>
S from_gaussian(const Gaussian& g) {
  if constexpr (std::is_same_v<S, Gaussian>) {
    return g;
  } else {
    return S(to_long_double(g.re), to_long_double(g.im));
  }
}

}  // namespace detail

/// Exact Hermitian positive-definite stand-in for the Petersson Gram:
/// G = M^H M + I with M a small Gaussian-integer matrix drawn from a seeded
/// generator. Used to run the tpp algebra without quadrature error.
template <class S>
class SyntheticGramOracle final : public GramOracle<S> {
 public:
  explicit SyntheticGramOracle(std::uint64_t seed = 1) : seed_(seed) {}

  Matrix<S> gram(int weight) const override {
    const auto n = static_cast<std::size_t>(dim_cusp(weight));
    std::mt19937_64 rng(seed_ * 1000003ULL + static_cast<std::uint64_t>(weight));
    std::uniform_int_distribution<int> dist(-3, 3);
    Matrix<Gaussian> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Gaussian(dist(rng), dist(rng));
    Matrix<Gaussian> g = adjoint(m) * m + Matrix<Gaussian>::identity(n);
    return map_matrix<S>(g, [](const Gaussian& x) { return detail::from_gaussian<S>(x); });
  }

 private:
  std::uint64_t seed_;
};

// ---------------------------------------------------------------------------
// Elements of the associated graded

/// Weight of the AH-degree-n piece in cohomological degree m, doubled.
inline int twice_weight(int n, int m) { return n - m; }

/// dim_cusp((n - m) / 2), zero at half-integer weights.
inline int component_cusp_dim(int n, int m) { return dim_cusp_twice(n - m); }

/// Element of the associated graded of tcf^m(X) ⊗ C: for each AH degree n a
/// b_n x dim S_{(n-m)/2} matrix whose row r is the cusp-form coordinate
/// vector attached to the r-th basis class of H^n.
template <class S>
class TcfElementT {
 public:
  TcfElementT(RingPtr ring, int degree) : ring_(std::move(ring)), degree_(degree) {
    if (!ring_) throw DomainError("element needs a ring");
    for (int n = 0; n <= ring_->top(); ++n) {
      const int b = ring_->betti(n), w = component_cusp_dim(n, degree_);
      if (b > 0 && w > 0) comps_.emplace(n, Matrix<S>(static_cast<std::size_t>(b), static_cast<std::size_t>(w)));
    }
  }

  const RingPtr& ring() const { return ring_; }
  int degree() const { return degree_; }
  /// Weight attached to AH degree n; only meaningful when has_component(n).
  int weight(int n) const { return (n - degree_) / 2; }

  bool has_component(int n) const { return comps_.count(n) > 0; }
  std::vector<int> ah_degrees() const {
    std::vector<int> out;
    for (const auto& [n, c] : comps_) out.push_back(n);
    return out;
  }
  const Matrix<S>& component(int n) const { return comps_.at(checked(n)); }
  Matrix<S>& component(int n) { return comps_.at(checked(n)); }
  const std::map<int, Matrix<S>>& components() const { return comps_; }

  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& [n, c] : comps_) d += c.rows() * c.cols();
    return d;
  }

  bool is_zero() const {
    for (const auto& [n, c] : comps_)
      for (const auto& x : c.data())
        if (!scalar_traits<S>::is_zero(x)) return false;
    return true;
  }

  /// Copy keeping only the listed AH degrees.
  TcfElementT restricted(const std::function<bool(int)>& keep) const {
    TcfElementT out(ring_, degree_);
    for (const auto& [n, c] : comps_)
      if (keep(n)) out.comps_.at(n) = c;
    return out;
  }

  TcfElementT& operator+=(const TcfElementT& o) {
    check_compatible(o);
    for (auto& [n, c] : comps_) c += o.comps_.at(n);
    return *this;
  }
  TcfElementT& operator-=(const TcfElementT& o) {
    check_compatible(o);
    for (auto& [n, c] : comps_) c -= o.comps_.at(n);
    return *this;
  }
  TcfElementT& operator*=(const S& s) {
    for (auto& [n, c] : comps_) c *= s;
    return *this;
  }
  friend TcfElementT operator+(TcfElementT a, const TcfElementT& b) { return a += b; }
  friend TcfElementT operator-(TcfElementT a, const TcfElementT& b) { return a -= b; }
  friend TcfElementT operator*(const S& s, TcfElementT a) { return a *= s; }
  friend bool operator==(const TcfElementT& a, const TcfElementT& b) {
    return a.ring_ == b.ring_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  void check_compatible(const TcfElementT& o) const {
    if (ring_ != o.ring_ && !ring_->same_algebra(*o.ring_)) throw DomainError("elements live over different rings");
    if (degree_ != o.degree_)
      throw DomainError("elements have degrees " + std::to_string(degree_) + " and " + std::to_string(o.degree_));
  }

 private:
  int checked(int n) const {
    if (!has_component(n))
      throw DomainError("no AH-degree-" + std::to_string(n) + " component in degree " + std::to_string(degree_));
    return n;
  }

  RingPtr ring_;
  int degree_;
  std::map<int, Matrix<S>> comps_;
};
using TcfElement = TcfElementT<Complex>;

/// Element with a single unit coordinate: basis class `row` of H^n tensored
/// with Miller basis form `col` of the attached weight.
template <class S>
TcfElementT<S> basis_element(const RingPtr& ring, int m, int n, std::size_t row, std::size_t col) {
  TcfElementT<S> e(ring, m);
  e.component(n)(row, col) = S(1);
  return e;
}

/// Element with Gaussian-integer coordinates in [-bound, bound].
template <class S, class Rng>
TcfElementT<S> random_element(const RingPtr& ring, int m, Rng& rng, int bound = 5) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  TcfElementT<S> e(ring, m);
  for (int n : e.ah_degrees()) {
    auto& c = e.component(n);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = detail::from_gaussian<S>(Gaussian(dist(rng), dist(rng)));
  }
  return e;
}

/// AH degree n -> b_n * dim S_{(n-m)/2}, for every 0 <= n <= top with n - m even.
inline std::map<int, int> component_dims(const GradedRing& ring, int m) {
  std::map<int, int> out;
  for (int n = 0; n <= ring.top(); ++n)
    if ((n - m) % 2 == 0) out[n] = ring.betti(n) * component_cusp_dim(n, m);
  return out;
}

// ---------------------------------------------------------------------------
// Products

/// Nonhomogeneous class in H^*(X; C), one homogeneous piece per even degree.
template <class S>
struct TppValueT {
  RingPtr ring;
  std::map<int, CohClassT<S>> by_degree;

  static TppValueT zero(const RingPtr& r) {
    TppValueT v{r, {}};
    for (int p = 0; p <= r->top(); p += 2) v.by_degree.emplace(p, r->template zero<S>(p));
    return v;
  }
  bool is_zero() const {
    for (const auto& [p, c] : by_degree)
      if (!c.is_zero()) return false;
    return true;
  }
  Real max_abs() const {
    Real m = 0;
    for (const auto& [p, c] : by_degree)
      for (const auto& x : c.coords) m = std::max(m, scalar_traits<S>::magnitude(x));
    return m;
  }
  /// Concatenated coordinates in increasing degree.
  std::vector<S> flatten() const {
    std::vector<S> out;
    for (const auto& [p, c] : by_degree) out.insert(out.end(), c.coords.begin(), c.coords.end());
    return out;
  }
  friend bool operator==(const TppValueT& a, const TppValueT& b) { return a.by_degree == b.by_degree; }
};
using TppValue = TppValueT<Complex>;

namespace detail {

/// sum over basis pairs (h, i) of <f_h, g_i> (x_h ∪ y_i) for the AH-degree-n
/// components, a class of degree 2n.
template <class S>
CohClassT<S> pair_components(const GradedRing& ring, int n, const Matrix<S>& f, const Matrix<S>& g, const Matrix<S>& gram) {
  auto out = ring.zero<S>(2 * n);
  if (out.coords.empty()) return out;
  const Matrix<S> pairing = f * gram * conjugate(g).transpose();
  for (std::size_t h = 0; h < pairing.rows(); ++h)
    for (std::size_t i = 0; i < pairing.cols(); ++i) {
      const S& c = pairing(h, i);
      if (scalar_traits<S>::is_zero(c)) continue;
      const auto cup = ring.product({n, static_cast<int>(h)}, {n, static_cast<int>(i)});
      for (std::size_t l = 0; l < cup.size(); ++l)
        if (cup[l] != 0) out.coords[l] += c * scalar_traits<S>::from_rational(cup[l]);
    }
  return out;
}

}  // namespace detail

/// Weight-j topological Petersson product on the associated graded. With
/// m = deg f, the AH-degree-n components for n = 2j + m (weight j) are
/// paired by the weight-j Gram and multiplied by cup product; the result
/// lies in degree 2n. Zero whenever either component is absent or n is out
/// of range.
template <class S>
CohClassT<S> weight_product(const TcfElementT<S>& f, const TcfElementT<S>& g, int j, const GramOracle<S>& grams) {
  f.check_compatible(g);
  const GradedRing& ring = *f.ring();
  const int n = 2 * j + f.degree();
  if (n < 0 || n > ring.top() || !f.has_component(n) || !g.has_component(n))
    return {2 * n, std::vector<S>(static_cast<std::size_t>(ring.betti(2 * n)), S(0))};
  return detail::pair_components(ring, n, f.component(n), g.component(n), grams.gram(j));
}

/// Full product: the sum of the weight-j products over all j, i.e. equal
/// AH degrees paired, AH degree n landing in cohomological degree 2n.
template <class S>
TppValueT<S> full_product(const TcfElementT<S>& f, const TcfElementT<S>& g, const GramOracle<S>& grams) {
  f.check_compatible(g);
  auto value = TppValueT<S>::zero(f.ring());
  for (int n : f.ah_degrees()) {
    if (2 * n > f.ring()->top()) continue;
    auto c = weight_product(f, g, f.weight(n), grams);
    auto& slot = value.by_degree.at(2 * n);
    for (std::size_t l = 0; l < c.coords.size(); ++l) slot.coords[l] += c.coords[l];
  }
  return value;
}

// ---------------------------------------------------------------------------
// Radicals

/// Relative singular-value cutoff for numerical kernels.
inline constexpr Real kRadicalTolerance = 1e-8L;

template <class S>
struct RadicalReport {
  int degree = 0;
  std::vector<int> ah_degrees;         ///< AH degrees in the slice with nonzero components
  std::size_t slice_dim = 0;
  std::map<int, std::size_t> block_dims;          ///< slice dimension per AH degree
  std::map<int, std::size_t> block_radical_dims;  ///< radical dimension per AH degree
  std::vector<TcfElementT<S>> radical;
  bool nondegenerate = true;
};

namespace detail {

struct SliceIndex {
  int n;
  std::size_t row, col;
};

template <class S>
std::vector<SliceIndex> block_basis(const TcfElementT<S>& shape, int n) {
  std::vector<SliceIndex> idx;
  const auto& c = shape.component(n);
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t k = 0; k < c.cols(); ++k) idx.push_back({n, r, k});
  return idx;
}

/// Matrix whose kernel is the left radical of one AH-degree block: rows are
/// (slice element a, value coordinate), columns slice elements b, entries
/// the coordinates of full_product(e_b, e_a).
template <class S>
Matrix<S> block_pairing_matrix(const RingPtr& ring, int m, int n, const GramOracle<S>& grams) {
  const TcfElementT<S> shape(ring, m);
  const auto basis = block_basis(shape, n);
  std::vector<TcfElementT<S>> elems;
  for (const auto& b : basis) elems.push_back(basis_element<S>(ring, m, b.n, b.row, b.col));
  const std::size_t value_dim = TppValueT<S>::zero(ring).flatten().size();
  Matrix<S> M(basis.size() * value_dim, basis.size());
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      const auto v = full_product(elems[b], elems[a], grams).flatten();
      for (std::size_t c = 0; c < value_dim; ++c) M(a * value_dim + c, b) = v[c];
    }
  return M;
}

template <class S>
std::vector<std::vector<S>> kernel(const Matrix<S>& m) {
  if constexpr (scalar_traits<S>::exact) {
    return nullspace(m);
  } else {
    // Cusp bases mix forms whose Petersson norms differ by many orders of
    // magnitude, so equilibrate rows and columns first. Column scaling is a
    // change of basis and is undone on the kernel vectors; row scaling does
    // not change the kernel.
    Matrix<S> a = m;
    std::vector<Real> col_scale(a.cols(), 1);
    for (int round = 0; round < 4; ++round) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        Real norm = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) norm = std::hypot(norm, std::abs(a(i, j)));
        if (norm == 0) continue;
        col_scale[j] /= norm;
        for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) /= norm;
      }
      for (std::size_t i = 0; i < a.rows(); ++i) {
        Real norm = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) norm = std::hypot(norm, std::abs(a(i, j)));
        if (norm == 0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) /= norm;
      }
    }
    auto ker = nullspace(a, kRadicalTolerance);
    for (auto& v : ker) {
      Real norm = 0;
      for (std::size_t j = 0; j < v.size(); ++j) norm = std::hypot(norm, std::abs(v[j] *= col_scale[j]));
      for (auto& x : v) x /= norm;
    }
    return ker;
  }
}

}  // namespace detail

/// Left radical of the full product restricted to the slice of AH degrees
/// accepted by `ah_filter` (slice paired against itself). The pairing is
/// block diagonal in AH degree, so each block is solved separately.
template <class S>
RadicalReport<S> left_radical(const RingPtr& ring, int m, const std::function<bool(int)>& ah_filter,
                              const GramOracle<S>& grams) {
  RadicalReport<S> rep;
  rep.degree = m;
  const TcfElementT<S> shape(ring, m);
  for (int n : shape.ah_degrees()) {
    if (!ah_filter(n)) continue;
    rep.ah_degrees.push_back(n);
    const auto basis = detail::block_basis(shape, n);
    rep.block_dims[n] = basis.size();
    rep.slice_dim += basis.size();
    const auto ker = detail::kernel(detail::block_pairing_matrix(ring, m, n, grams));
    rep.block_radical_dims[n] = ker.size();
    for (const auto& v : ker) {
      TcfElementT<S> e(ring, m);
      for (std::size_t i = 0; i < basis.size(); ++i) e.component(n)(basis[i].row, basis[i].col) = v[i];
      rep.radical.push_back(std::move(e));
    }
  }
  rep.nondegenerate = rep.radical.empty();
  return rep;
}

template <class S>
RadicalReport<S> left_radical(const RingPtr& ring, int m, const GramOracle<S>& grams) {
  return left_radical(ring, m, [](int) { return true; }, grams);
}

/// The degeneracy witness: (first Miller basis form of weight (top - m)/2)
/// tensored with the first top-degree class, verified to pair to zero with
/// every element. None for a point or when that weight has no cusp forms.
template <class S>
std::optional<TcfElementT<S>> degeneracy_witness(const RingPtr& ring, int m, const GramOracle<S>& grams) {
  const int top = ring->top();
  if (top == 0 || component_cusp_dim(top, m) == 0) return std::nullopt;
  auto f = basis_element<S>(ring, m, top, 0, 0);
  // Products with other AH degrees vanish identically; check the top block.
  const auto M = detail::block_pairing_matrix(ring, m, top, grams);
  for (std::size_t r = 0; r < M.rows(); ++r)
    if (!scalar_traits<S>::is_zero(M(r, 0)))
      throw NumericalError("degeneracy witness failed to lie in the radical");
  return f;
}

template <class S>
struct KahlerReport {
  int complex_dim = 0;
  RadicalReport<S> radical;
  LefschetzReport lefschetz;
  /// Injectivity of omega^{n/2}: H^n -> H^{2n} on every slice degree.
  bool certificate = false;
};

/// Radical of the product on the slice {n even, n <= 2d/3}, d = top/2, with
/// the hard-Lefschetz certificate for the same slice.
template <class S>
KahlerReport<S> kahler_slice_check(const RingPtr& ring, const CohClass& omega, int m, const GramOracle<S>& grams) {
  if (ring->top() % 2 != 0) throw DomainError("Kähler check needs an even top degree");
  KahlerReport<S> rep;
  rep.complex_dim = ring->top() / 2;
  const int d = rep.complex_dim;
  rep.lefschetz = hard_lefschetz_report(*ring, omega);
  rep.certificate = rep.lefschetz.injectivity_holds();
  rep.radical = left_radical(ring, m, [d](int n) { return n % 2 == 0 && 3 * n <= 2 * d; }, grams);
  return rep;
}

// ---------------------------------------------------------------------------
// Hecke operators

/// Applies the classical T_n weightwise: each component C becomes C T^t,
/// where T is the weight-(n'-m)/2 Hecke matrix (columns are images of the
/// Miller basis).
template <class S>
TcfElementT<S> topological_hecke(const TcfElementT<S>& f, int n) {
  if (n < 1) throw DomainError("Hecke index must be positive");
  TcfElementT<S> out = f;
  for (int ah : f.ah_degrees()) {
    const auto t = from_rational<S>(hecke_matrix(f.weight(ah), n).entries);
    out.component(ah) = f.component(ah) * t.transpose();
  }
  return out;
}

namespace detail {

/// Block-diagonal operator on the flattened associated graded in degree m,
/// acting on each AH-degree-n component (b_n copies) by op(weight).
inline Matrix<Rational> block_operator(const GradedRing& ring, int m,
                                       const std::function<Matrix<Rational>(int)>& op) {
  std::vector<std::pair<int, int>> blocks;  // (copies, weight)
  std::size_t total = 0;
  for (int n = 0; n <= ring.top(); ++n) {
    const int dim = component_cusp_dim(n, m);
    if (dim == 0 || ring.betti(n) == 0) continue;
    blocks.emplace_back(ring.betti(n), (n - m) / 2);
    total += static_cast<std::size_t>(ring.betti(n) * dim);
  }
  Matrix<Rational> out(total, total);
  std::size_t off = 0;
  for (const auto& [copies, w] : blocks) {
    const Matrix<Rational> b = op(w);
    for (int c = 0; c < copies; ++c) {
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
      off += b.rows();
    }
  }
  return out;
}

}  // namespace detail

/// max |T_{p^{r+2}} - (T_p T_{p^{r+1}} - (1/p) Psi^p T_{p^r})| over the
/// associated graded in degree m, with Psi^p acting by p^w on weight w.
/// Exact; zero when the relation holds.
inline Rational adams_relation_residual(const GradedRing& ring, int m, int p, int r) {
  if (p < 2) throw DomainError("p must be a prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw DomainError(std::to_string(p) + " is not prime");
  if (r < 0) throw DomainError("r must be nonnegative");
  const int pr = static_cast<int>(integer_pow(p, static_cast<unsigned>(r)).get_si());
  auto T = [&](int idx) {
    return detail::block_operator(ring, m, [idx](int w) { return hecke_matrix(w, idx).entries; });
  };
  const auto psi_over_p = detail::block_operator(ring, m, [p](int w) {
    Matrix<Rational> id = Matrix<Rational>::identity(static_cast<std::size_t>(dim_cusp(w)));
    id *= Rational(integer_pow(p, static_cast<unsigned>(w))) / p;
    return id;
  });
  const auto lhs = T(pr * p * p);
  const auto rhs = T(p) * T(pr * p) - psi_over_p * T(pr);
  Rational worst = 0;
  const auto diff = lhs - rhs;
  for (const auto& x : diff.data()) worst = std::max(worst, Rational(abs(x)));
  return worst;
}

// ---------------------------------------------------------------------------
// Element file format

/// Reads lines `component <ah-degree> <coh-index> = <re>,<im> ...` (one
/// complex cusp coordinate per token) plus an optional `degree <m>` line
/// that must agree with m. Unlisted rows are zero.
inline TcfElement load_element(const RingPtr& ring, int m, std::string_view text) {
  TcfElement e(ring, m);
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::set<std::pair<int, int>> seen;
  auto parse_real = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const Real x = std::stold(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::logic_error&) {
      throw ParseError("bad number '" + s + "'", lineno);
    }
  };
  auto parse_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + s + "'", lineno);
    }
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    const auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    if (tok[0] == "degree") {
      if (tok.size() != 2) throw ParseError("degree takes one integer", lineno);
      if (parse_int(tok[1]) != m)
        throw ParseError("file is for degree " + tok[1] + " but degree " + std::to_string(m) + " was requested", lineno);
      continue;
    }
    if (tok[0] != "component") throw ParseError("unknown keyword '" + tok[0] + "'", lineno);
    if (tok.size() < 4 || tok[3] != "=") throw ParseError("expected 'component <ah-degree> <index> = <re>,<im> ...'", lineno);
    const int n = parse_int(tok[1]), row = parse_int(tok[2]);
    if (!e.has_component(n))
      throw ParseError("AH degree " + tok[1] + " carries no cusp forms in degree " + std::to_string(m), lineno);
    auto& c = e.component(n);
    if (row < 0 || static_cast<std::size_t>(row) >= c.rows()) throw ParseError("no basis class " + tok[2] + " in degree " + tok[1], lineno);
    if (!seen.insert({n, row}).second) throw ParseError("duplicate component " + tok[1] + " " + tok[2], lineno);
    if (tok.size() - 4 != c.cols())
      throw ParseError("expected " + std::to_string(c.cols()) + " coordinates (dim S_" + std::to_string(e.weight(n)) + ")", lineno);
    for (std::size_t k = 0; k < c.cols(); ++k) {
      const std::string& t = tok[4 + k];
      const auto comma = t.find(',');
      if (comma == std::string::npos) throw ParseError("coordinate '" + t + "' is not <re>,<im>", lineno);
      c(static_cast<std::size_t>(row), k) = Complex(parse_real(t.substr(0, comma)), parse_real(t.substr(comma + 1)));
    }
  }
  return e;
}

inline TcfElement load_element_file(const RingPtr& ring, int m, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open element file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return load_element(ring, m, ss.str());
}

}  // namespace tcfp
