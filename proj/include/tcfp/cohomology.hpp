#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tcfp/matrix.hpp"
#include "tcfp/rational.hpp"

namespace tcfp {

/// Basis element `index` of H^degree.
struct BasisRef {
  int degree = 0;
  int index = 0;
  auto operator<=>(const BasisRef&) const = default;
};

inline std::string to_string(const BasisRef& r) { return std::to_string(r.degree) + ":" + std::to_string(r.index); }

/// A homogeneous cohomology class: coordinates over the degree basis.
template <class S>
struct CohClassT {
  int degree = 0;
  std::vector<S> coords;

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const S& x) { return scalar_traits<S>::is_zero(x); });
  }
  friend bool operator==(const CohClassT&, const CohClassT&) = default;
};
using CohClass = CohClassT<Rational>;

/// Raised when a ring violates a graded-commutative algebra axiom. `axiom`
/// is one of "shape", "unit", "commutativity", "associativity"; `witness`
/// names the offending basis elements.
class RingAxiomError : public Error {
 public:
  RingAxiomError(std::string axiom, std::string witness)
      : Error(axiom + " axiom violated at " + witness), axiom_(std::move(axiom)), witness_(std::move(witness)) {}
  const std::string& axiom() const { return axiom_; }
  const std::string& witness() const { return witness_; }
  const char* kind() const noexcept override { return "axiom"; }

 private:
  std::string axiom_;
  std::string witness_;
};

/// Finite-dimensional graded-commutative Q-algebra given by Betti numbers
/// and cup-product structure constants on an additive basis. Basis element
/// 0:0 is the unit.
class GradedRing {
 public:
  GradedRing(std::string name, std::vector<int> betti, std::vector<std::vector<std::string>> labels = {})
      : name_(std::move(name)), betti_(std::move(betti)), labels_(std::move(labels)) {
    if (betti_.empty()) throw DomainError("ring needs at least b_0");
    for (int b : betti_)
      if (b < 0) throw DomainError("negative Betti number");
    labels_.resize(betti_.size());
    for (int p = 0; p <= top(); ++p) {
      auto& l = labels_[p];
      if (l.empty())
        for (int i = 0; i < betti_[p]; ++i) l.push_back(p == 0 && i == 0 ? "1" : "x" + std::to_string(p) + "_" + std::to_string(i));
      if (static_cast<int>(l.size()) != betti_[p]) throw DomainError("label count differs from b_" + std::to_string(p));
    }
    for (int p = 0; p <= top(); ++p)
      for (int q = 0; p + q <= top(); ++q)
        table_[{p, q}] = std::vector<Rational>(static_cast<std::size_t>(betti_[p]) * betti_[q] * betti_[p + q], Rational(0));
    if (betti_[0] >= 1)
      for (int p = 0; p <= top(); ++p)
        for (int i = 0; i < betti_[p]; ++i) {
          std::vector<Rational> e(static_cast<std::size_t>(betti_[p]), Rational(0));
          e[i] = 1;
          set_product({0, 0}, {p, i}, e);
          set_product({p, i}, {0, 0}, e);
        }
  }

  const std::string& name() const { return name_; }
  int top() const { return static_cast<int>(betti_.size()) - 1; }
  int betti(int p) const { return (p < 0 || p > top()) ? 0 : betti_[p]; }
  const std::vector<int>& betti_numbers() const { return betti_; }
  const std::string& label(BasisRef r) const { return labels_.at(r.degree).at(r.index); }
  const std::vector<std::string>& labels(int p) const { return labels_.at(p); }

  std::string describe(BasisRef r) const { return to_string(r) + "(" + label(r) + ")"; }

  /// Sets a ∪ b = sum_c coeffs[c] e_c in degree |a| + |b|.
  void set_product(BasisRef a, BasisRef b, std::vector<Rational> coeffs) {
    check_ref(a);
    check_ref(b);
    const int r = a.degree + b.degree;
    if (r > top()) {
      for (const auto& c : coeffs)
        if (c != 0) throw RingAxiomError("shape", describe(a) + " x " + describe(b) + " lands above the top degree");
      return;
    }
    if (static_cast<int>(coeffs.size()) != betti_[r]) throw DomainError("product coefficient count differs from b_" + std::to_string(r));
    auto& t = table_.at({a.degree, b.degree});
    const std::size_t base = (static_cast<std::size_t>(a.index) * betti_[b.degree] + b.index) * betti_[r];
    std::copy(coeffs.begin(), coeffs.end(), t.begin() + static_cast<std::ptrdiff_t>(base));
  }

  /// Structure constants of a ∪ b; empty when the product lands above top.
  std::span<const Rational> product(BasisRef a, BasisRef b) const {
    check_ref(a);
    check_ref(b);
    const int r = a.degree + b.degree;
    if (r > top()) return {};
    const auto& t = table_.at({a.degree, b.degree});
    const std::size_t base = (static_cast<std::size_t>(a.index) * betti_[b.degree] + b.index) * betti_[r];
    return {t.data() + base, static_cast<std::size_t>(betti_[r])};
  }

  template <class S = Rational>
  CohClassT<S> zero(int p) const {
    return {p, std::vector<S>(static_cast<std::size_t>(betti(p)), S(0))};
  }
  template <class S = Rational>
  CohClassT<S> basis_class(BasisRef r) const {
    check_ref(r);
    auto c = zero<S>(r.degree);
    c.coords[r.index] = S(1);
    return c;
  }
  template <class S = Rational>
  CohClassT<S> unit() const {
    return basis_class<S>({0, 0});
  }

  template <class S>
  CohClassT<S> cup(const CohClassT<S>& x, const CohClassT<S>& y) const {
    check_class(x);
    check_class(y);
    auto out = zero<S>(x.degree + y.degree);
    if (out.coords.empty()) return out;
    for (int i = 0; i < betti(x.degree); ++i) {
      if (scalar_traits<S>::is_zero(x.coords[i])) continue;
      for (int j = 0; j < betti(y.degree); ++j) {
        if (scalar_traits<S>::is_zero(y.coords[j])) continue;
        const S xy = x.coords[i] * y.coords[j];
        const auto c = product({x.degree, i}, {y.degree, j});
        for (std::size_t l = 0; l < c.size(); ++l)
          if (c[l] != 0) out.coords[l] += xy * scalar_traits<S>::from_rational(c[l]);
      }
    }
    return out;
  }

  CohClass power(const CohClass& x, int e) const {
    CohClass r = unit();
    for (int i = 0; i < e; ++i) r = cup(r, x);
    return r;
  }

  /// Matrix of y -> x ∪ y from H^p to H^{p+|x|}; column j is x ∪ e_j.
  Matrix<Rational> multiplication_matrix(const CohClass& x, int p) const {
    const int r = p + x.degree;
    Matrix<Rational> m(static_cast<std::size_t>(betti(r)), static_cast<std::size_t>(betti(p)));
    for (int j = 0; j < betti(p); ++j) {
      const CohClass col = cup(x, basis_class({p, j}));
      for (int i = 0; i < betti(r); ++i) m(i, j) = col.coords[i];
    }
    return m;
  }

  /// First violated axiom, if any: shape, unit, graded commutativity,
  /// associativity (checked on basis elements, in that order).
  std::optional<RingAxiomError> find_violation() const {
    if (betti_[0] != 1) return RingAxiomError("unit", "b_0 = " + std::to_string(betti_[0]) + " (must be 1)");
    if (top() > 0 && betti_[top()] == 0) return RingAxiomError("shape", "b_top = 0 for declared top " + std::to_string(top()));
    const BasisRef one{0, 0};
    for (const auto& x : all_refs()) {
      const auto e = basis_class(x);
      const auto l = product(one, x), r = product(x, one);
      if (!std::equal(l.begin(), l.end(), e.coords.begin()) || !std::equal(r.begin(), r.end(), e.coords.begin()))
        return RingAxiomError("unit", "(" + describe(one) + ", " + describe(x) + ")");
    }
    for (const auto& x : all_refs())
      for (const auto& y : all_refs()) {
        if (y < x) continue;
        const auto xy = product(x, y), yx = product(y, x);
        const int sign = (x.degree * y.degree) % 2 == 0 ? 1 : -1;
        for (std::size_t l = 0; l < xy.size(); ++l)
          if (xy[l] != sign * yx[l]) return RingAxiomError("commutativity", "(" + describe(x) + ", " + describe(y) + ")");
      }
    for (const auto& x : all_refs())
      for (const auto& y : all_refs())
        for (const auto& z : all_refs()) {
          if (x.degree + y.degree + z.degree > top()) continue;
          const auto ex = basis_class(x), ey = basis_class(y), ez = basis_class(z);
          if (cup(cup(ex, ey), ez) != cup(ex, cup(ey, ez)))
            return RingAxiomError("associativity", "(" + describe(x) + ", " + describe(y) + ", " + describe(z) + ")");
        }
    return std::nullopt;
  }

  void validate() const {
    if (auto v = find_violation()) throw *v;
  }

  /// Reported diagnostic only: b_n = b_{top-n} for all n.
  bool poincare_symmetric() const {
    for (int n = 0; n <= top(); ++n)
      if (betti_[n] != betti_[top() - n]) return false;
    return true;
  }

  std::vector<BasisRef> all_refs() const {
    std::vector<BasisRef> refs;
    for (int p = 0; p <= top(); ++p)
      for (int i = 0; i < betti_[p]; ++i) refs.push_back({p, i});
    return refs;
  }

  std::optional<BasisRef> find_label(std::string_view label) const {
    std::optional<BasisRef> found;
    for (const auto& r : all_refs())
      if (this->label(r) == label) {
        if (found) throw DomainError("label '" + std::string(label) + "' is ambiguous in " + name_);
        found = r;
      }
    return found;
  }

  void set_name(std::string n) { name_ = std::move(n); }

  /// Same Betti numbers and structure constants (names and labels ignored).
  bool same_algebra(const GradedRing& o) const { return betti_ == o.betti_ && table_ == o.table_; }
  friend bool operator==(const GradedRing& a, const GradedRing& b) {
    return a.name_ == b.name_ && a.labels_ == b.labels_ && a.same_algebra(b);
  }

 private:
  void check_ref(BasisRef r) const {
    if (r.degree < 0 || r.degree > top() || r.index < 0 || r.index >= betti_[r.degree])
      throw DomainError("no basis element " + to_string(r) + " in " + name_);
  }
  template <class S>
  void check_class(const CohClassT<S>& c) const {
    if (static_cast<int>(c.coords.size()) != betti(c.degree))
      throw DomainError("class of degree " + std::to_string(c.degree) + " has wrong coordinate count");
  }

  std::string name_;
  std::vector<int> betti_;
  std::vector<std::vector<std::string>> labels_;
  std::map<std::pair<int, int>, std::vector<Rational>> table_;
};

using RingPtr = std::shared_ptr<const GradedRing>;

// ---------------------------------------------------------------------------
// Presets

namespace presets {

inline GradedRing point() { return GradedRing("point", {1}); }

inline GradedRing sphere(int n) {
  if (n < 1) throw DomainError("sphere dimension must be >= 1");
  std::vector<int> b(static_cast<std::size_t>(n) + 1, 0);
  b[0] = b[n] = 1;
  std::vector<std::vector<std::string>> labels(b.size());
  labels[0] = {"1"};
  labels[n] = {"s"};
  return GradedRing("sphere(" + std::to_string(n) + ")", b, labels);
}

inline GradedRing cp(int n) {
  if (n < 1) throw DomainError("cp dimension must be >= 1");
  std::vector<int> b(2 * static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::vector<std::string>> labels(b.size());
  for (int i = 0; i <= n; ++i) {
    b[2 * i] = 1;
    labels[2 * i] = {i == 0 ? "1" : i == 1 ? "h" : "h^" + std::to_string(i)};
  }
  GradedRing r("cp(" + std::to_string(n) + ")", b, labels);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; i + j <= n; ++j) r.set_product({2 * i, 0}, {2 * j, 0}, {Rational(1)});
  return r;
}

/// Exterior algebra on n degree-1 generators e1..en; degree-p basis is the
/// p-subsets in lexicographic order.
inline GradedRing torus(int n) {
  if (n < 1 || n > 16) throw DomainError("torus dimension must be in 1..16");
  std::vector<std::vector<unsigned>> subsets(static_cast<std::size_t>(n) + 1);
  for (unsigned mask = 0; mask < (1U << n); ++mask) subsets[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);
  auto lex_less = [n](unsigned a, unsigned b) {
    for (int i = 0; i < n; ++i) {
      const bool ia = a & (1U << i), ib = b & (1U << i);
      if (ia != ib) return ia;
    }
    return false;
  };
  std::vector<int> b;
  std::vector<std::vector<std::string>> labels;
  std::map<unsigned, int> index_of;
  for (auto& s : subsets) {
    std::sort(s.begin(), s.end(), lex_less);
    b.push_back(static_cast<int>(s.size()));
    std::vector<std::string> l;
    for (std::size_t i = 0; i < s.size(); ++i) {
      index_of[s[i]] = static_cast<int>(i);
      std::string name;
      for (int g = 0; g < n; ++g)
        if (s[i] & (1U << g)) name += "e" + std::to_string(g + 1);
      l.push_back(name.empty() ? "1" : name);
    }
    labels.push_back(std::move(l));
  }
  GradedRing r("torus(" + std::to_string(n) + ")", b, labels);
  for (int p = 1; p <= n; ++p)
    for (unsigned s : subsets[p])
      for (int q = 1; p + q <= n; ++q)
        for (unsigned t : subsets[q]) {
          if (s & t) continue;
          int inversions = 0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
              if ((s & (1U << i)) && (t & (1U << j))) ++inversions;
          std::vector<Rational> c(static_cast<std::size_t>(b[p + q]), Rational(0));
          c[index_of[s | t]] = inversions % 2 == 0 ? 1 : -1;
          r.set_product({p, index_of[s]}, {q, index_of[t]}, c);
        }
  return r;
}

namespace detail {

inline std::string prime(const std::string& l) { return l == "1" ? l : l + "'"; }

inline std::string join_labels(const std::string& a, const std::string& b) {
  if (a == "1") return prime(b);
  if (b == "1") return a;
  return a + "." + prime(b);
}

}  // namespace detail

/// Graded tensor product with Koszul sign
/// (a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} aa' ⊗ bb'.
inline GradedRing product(const GradedRing& A, const GradedRing& B) {
  const int top = A.top() + B.top();
  // degree n basis: pairs (a in A_p, b in B_{n-p}) ordered by p, then a, then b
  std::vector<std::vector<std::pair<BasisRef, BasisRef>>> basis(static_cast<std::size_t>(top) + 1);
  std::map<std::pair<BasisRef, BasisRef>, int> index_of;
  std::vector<int> b(static_cast<std::size_t>(top) + 1, 0);
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n)
    for (int p = std::max(0, n - B.top()); p <= std::min(n, A.top()); ++p)
      for (int i = 0; i < A.betti(p); ++i)
        for (int j = 0; j < B.betti(n - p); ++j) {
          const std::pair<BasisRef, BasisRef> key{{p, i}, {n - p, j}};
          index_of[key] = static_cast<int>(basis[n].size());
          basis[n].push_back(key);
          labels[n].push_back(detail::join_labels(A.label(key.first), B.label(key.second)));
          ++b[n];
        }
  GradedRing r("product(" + A.name() + "," + B.name() + ")", b, labels);
  for (int n1 = 0; n1 <= top; ++n1)
    for (const auto& [a1, b1] : basis[n1])
      for (int n2 = 0; n1 + n2 <= top; ++n2)
        for (const auto& [a2, b2] : basis[n2]) {
          const auto pa = A.product(a1, a2);
          const auto pb = B.product(b1, b2);
          std::vector<Rational> c(static_cast<std::size_t>(b[n1 + n2]), Rational(0));
          const int sign = (b1.degree * a2.degree) % 2 == 0 ? 1 : -1;
          for (std::size_t x = 0; x < pa.size(); ++x) {
            if (pa[x] == 0) continue;
            for (std::size_t y = 0; y < pb.size(); ++y) {
              if (pb[y] == 0) continue;
              const BasisRef ra{a1.degree + a2.degree, static_cast<int>(x)};
              const BasisRef rb{b1.degree + b2.degree, static_cast<int>(y)};
              c[index_of.at({ra, rb})] += sign * pa[x] * pb[y];
            }
          }
          r.set_product({n1, index_of.at({a1, b1})}, {n2, index_of.at({a2, b2})}, c);
        }
  return r;
}

/// One-point union: shared unit, positive-degree parts summed, cross
/// products zero.
inline GradedRing wedge(const GradedRing& A, const GradedRing& B) {
  const int top = std::max(A.top(), B.top());
  std::vector<int> b(static_cast<std::size_t>(top) + 1, 0);
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(top) + 1);
  b[0] = 1;
  labels[0] = {"1"};
  for (int p = 1; p <= top; ++p) {
    b[p] = A.betti(p) + B.betti(p);
    for (int i = 0; i < A.betti(p); ++i) labels[p].push_back(A.labels(p)[i]);
    for (int i = 0; i < B.betti(p); ++i) labels[p].push_back(detail::prime(B.labels(p)[i]));
  }
  GradedRing r("wedge(" + A.name() + "," + B.name() + ")", b, labels);
  auto embed = [&](const GradedRing& S, bool is_b) {
    for (int p = 1; p <= S.top(); ++p)
      for (int i = 0; i < S.betti(p); ++i)
        for (int q = 1; p + q <= S.top(); ++q)
          for (int j = 0; j < S.betti(q); ++j) {
            const auto c = S.product({p, i}, {q, j});
            std::vector<Rational> out(static_cast<std::size_t>(b[p + q]), Rational(0));
            const int shift = is_b ? A.betti(p + q) : 0;
            for (std::size_t l = 0; l < c.size(); ++l) out[shift + l] = c[l];
            r.set_product({p, i + (is_b ? A.betti(p) : 0)}, {q, j + (is_b ? A.betti(q) : 0)}, out);
          }
  };
  embed(A, false);
  embed(B, true);
  return r;
}

namespace detail {

class PresetParser {
 public:
  explicit PresetParser(std::string_view text) : s_(text) {}

  GradedRing parse() {
    GradedRing r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  GradedRing expr() {
    skip_ws();
    std::string name;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) name += s_[pos_++];
    if (name.empty()) fail("expected a preset name");
    if (name == "point" || name == "pt") return point();
    if (name == "product" || name == "wedge") {
      expect('(');
      GradedRing a = expr();
      expect(',');
      GradedRing b = expr();
      expect(')');
      return name == "product" ? product(a, b) : wedge(a, b);
    }
    int n = 0;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      n = integer();
    } else if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      n = integer();
      expect(')');
    } else if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      n = integer();
    } else {
      fail("preset '" + name + "' needs a dimension");
    }
    if (name == "sphere" || name == "S") return sphere(n);
    if (name == "cp" || name == "CP") return cp(n);
    if (name == "torus" || name == "T") return torus(n);
    fail("unknown preset '" + name + "'");
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("preset '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses point | pt | sphere(n) | sphere-n | cp(n) | cp-n | torus(n) |
/// product(A,B) | wedge(A,B).
inline GradedRing parse(std::string_view spec) { return detail::PresetParser(spec).parse(); }

}  // namespace presets

// ---------------------------------------------------------------------------
// Ring file format

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline BasisRef parse_ref(const std::string& tok, int line) {
  const auto colon = tok.find(':');
  if (colon == std::string::npos) throw ParseError("expected <degree>:<index>, got '" + tok + "'", line);
  try {
    std::size_t a = 0, b = 0;
    const int d = std::stoi(tok.substr(0, colon), &a);
    const int i = std::stoi(tok.substr(colon + 1), &b);
    if (a != colon || b != tok.size() - colon - 1) throw std::invalid_argument(tok);
    return {d, i};
  } catch (const std::logic_error&) {
    throw ParseError("expected <degree>:<index>, got '" + tok + "'", line);
  }
}

}  // namespace detail

/// Parses the line-oriented ring format:
///
///     name <label>
///     top <d>
///     betti <b_0> ... <b_d>
///     basis <degree> <label> ...
///     cup <p>:<i> <q>:<j> = <coef>*<p+q>:<l> [+ <coef>*<p+q>:<l> ...]
///
/// `#` starts a comment. Omitted products are zero, except that products
/// with the unit 0:0 default to the identity. When only one ordering of a
/// pair is given the other is filled in by graded commutativity; the result
/// is then checked against every axiom.
inline GradedRing load_ring(std::string_view text) {
  std::optional<std::string> name;
  std::optional<int> top;
  std::optional<std::vector<int>> betti;
  std::map<int, std::vector<std::string>> basis;
  struct CupLine {
    BasisRef a, b;
    std::vector<std::pair<Rational, BasisRef>> terms;
    int line;
  };
  std::vector<CupLine> cups;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    const auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto to_int = [&](const std::string& s) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      } catch (const std::logic_error&) {
        throw ParseError("expected an integer, got '" + s + "'", lineno);
      }
    };
    if (key == "name") {
      if (tok.size() != 2) throw ParseError("name takes one token", lineno);
      if (name) throw ParseError("duplicate name", lineno);
      name = tok[1];
    } else if (key == "top") {
      if (tok.size() != 2) throw ParseError("top takes one integer", lineno);
      if (top) throw ParseError("duplicate top", lineno);
      top = to_int(tok[1]);
      if (*top < 0) throw ParseError("top must be nonnegative", lineno);
    } else if (key == "betti") {
      if (betti) throw ParseError("duplicate betti", lineno);
      std::vector<int> b;
      for (std::size_t i = 1; i < tok.size(); ++i) b.push_back(to_int(tok[i]));
      betti = b;
    } else if (key == "basis") {
      if (tok.size() < 2) throw ParseError("basis needs a degree", lineno);
      const int d = to_int(tok[1]);
      if (basis.count(d)) throw ParseError("duplicate basis line for degree " + tok[1], lineno);
      basis[d] = std::vector<std::string>(tok.begin() + 2, tok.end());
    } else if (key == "cup") {
      if (tok.size() < 5 || tok[3] != "=") throw ParseError("expected 'cup <ref> <ref> = <terms>'", lineno);
      CupLine c{detail::parse_ref(tok[1], lineno), detail::parse_ref(tok[2], lineno), {}, lineno};
      for (std::size_t i = 4; i < tok.size(); ++i) {
        if ((i - 4) % 2 == 1) {
          if (tok[i] != "+") throw ParseError("terms must be separated by ' + '", lineno);
          continue;
        }
        if (tok[i] == "0" && tok.size() == 5) break;
        const auto star = tok[i].find('*');
        if (star == std::string::npos) throw ParseError("term '" + tok[i] + "' is not <coef>*<ref>", lineno);
        c.terms.emplace_back(parse_rational(tok[i].substr(0, star)), detail::parse_ref(tok[i].substr(star + 1), lineno));
      }
      if ((tok.size() - 4) % 2 == 0) throw ParseError("dangling '+'", lineno);
      cups.push_back(std::move(c));
    } else {
      throw ParseError("unknown keyword '" + key + "'", lineno);
    }
  }
  if (!name || !top || !betti) throw ParseError("ring file needs name, top and betti lines");
  if (static_cast<int>(betti->size()) != *top + 1)
    throw ParseError("betti lists " + std::to_string(betti->size()) + " numbers but top is " + std::to_string(*top));
  for (int b : *betti)
    if (b < 0) throw ParseError("negative Betti number");

  std::vector<std::vector<std::string>> labels(betti->size());
  for (const auto& [d, l] : basis) {
    if (d < 0 || d > *top) throw ParseError("basis line for degree " + std::to_string(d) + " outside 0..top");
    if (static_cast<int>(l.size()) != (*betti)[d])
      throw ParseError("basis line for degree " + std::to_string(d) + " lists " + std::to_string(l.size()) +
                       " labels, b_" + std::to_string(d) + " = " + std::to_string((*betti)[d]));
    labels[d] = l;
  }
  GradedRing ring(*name, *betti, labels);

  auto check = [&](BasisRef r, int line) {
    if (r.degree < 0 || r.degree > *top || r.index < 0 || r.index >= (*betti)[r.degree])
      throw ParseError("no basis element " + to_string(r), line);
  };
  std::map<std::pair<BasisRef, BasisRef>, std::vector<Rational>> given;
  for (const auto& c : cups) {
    check(c.a, c.line);
    check(c.b, c.line);
    const int d = c.a.degree + c.b.degree;
    if (given.count({c.a, c.b})) throw ParseError("duplicate product " + to_string(c.a) + " " + to_string(c.b), c.line);
    std::vector<Rational> v(static_cast<std::size_t>(d <= *top ? (*betti)[d] : 0), Rational(0));
    for (const auto& [coef, ref] : c.terms) {
      if (ref.degree != d) throw ParseError("term " + to_string(ref) + " is not in degree " + std::to_string(d), c.line);
      check(ref, c.line);
      v[ref.index] += coef;
    }
    given[{c.a, c.b}] = std::move(v);
  }
  for (const auto& [key, v] : given) {
    ring.set_product(key.first, key.second, v);
    const std::pair<BasisRef, BasisRef> swapped{key.second, key.first};
    if (!given.count(swapped)) {
      const int sign = (key.first.degree * key.second.degree) % 2 == 0 ? 1 : -1;
      std::vector<Rational> s = v;
      for (auto& x : s) x *= sign;
      ring.set_product(swapped.first, swapped.second, s);
    }
  }
  ring.validate();
  return ring;
}

inline GradedRing load_ring_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open ring file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return load_ring(ss.str());
}

/// Canonical serialization: header, basis labels, then every nonzero product
/// a ∪ b with a <= b (neither the unit), in (degree, index) order.
inline std::string write_ring(const GradedRing& r) {
  std::ostringstream out;
  out << "name " << r.name() << "\n";
  out << "top " << r.top() << "\n";
  out << "betti";
  for (int b : r.betti_numbers()) out << " " << b;
  out << "\n";
  for (int p = 0; p <= r.top(); ++p) {
    if (r.betti(p) == 0) continue;
    out << "basis " << p;
    for (const auto& l : r.labels(p)) out << " " << l;
    out << "\n";
  }
  const auto refs = r.all_refs();
  for (const auto& a : refs)
    for (const auto& b : refs) {
      if (b < a || a.degree == 0 || b.degree == 0) continue;
      const auto c = r.product(a, b);
      std::vector<std::string> terms;
      for (std::size_t l = 0; l < c.size(); ++l)
        if (c[l] != 0) terms.push_back(to_string(c[l], true) + "*" + to_string(BasisRef{a.degree + b.degree, static_cast<int>(l)}));
      if (terms.empty()) continue;
      out << "cup " << to_string(a) << " " << to_string(b) << " =";
      for (std::size_t t = 0; t < terms.size(); ++t) out << (t ? " + " : " ") << terms[t];
      out << "\n";
    }
  return out.str();
}

/// Parses a class such as "h", "2:0", "1*2:0 + -1/2*2:1" or "h + 3*h'".
/// All terms must share one degree.
inline CohClass parse_class(const GradedRing& r, std::string_view text) {
  std::vector<std::string> terms;
  std::string cur;
  for (char ch : text) {
    if (ch == '+') {
      terms.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  terms.push_back(cur);
  std::optional<CohClass> out;
  for (auto& t : terms) {
    if (t.empty()) throw ParseError("empty term in class '" + std::string(text) + "'");
    Rational coef = 1;
    std::string ref = t;
    if (auto star = t.find('*'); star != std::string::npos) {
      try {
        coef = parse_rational(t.substr(0, star));
        ref = t.substr(star + 1);
      } catch (const ParseError&) {
        ref = t;  // '*' belongs to a label
      }
    }
    BasisRef b;
    if (ref.find(':') != std::string::npos && std::isdigit(static_cast<unsigned char>(ref[0]))) {
      b = detail::parse_ref(ref, 0);
    } else if (auto found = r.find_label(ref)) {
      b = *found;
    } else {
      throw ParseError("unknown class '" + ref + "' in " + r.name());
    }
    if (b.degree < 0 || b.degree > r.top() || b.index < 0 || b.index >= r.betti(b.degree))
      throw ParseError("no basis element " + to_string(b) + " in " + r.name());
    if (!out) out = r.zero(b.degree);
    if (out->degree != b.degree) throw ParseError("class '" + std::string(text) + "' is not homogeneous");
    out->coords[b.index] += coef;
  }
  return *out;
}

// ---------------------------------------------------------------------------
// Hard Lefschetz

struct LefschetzMap {
  int degree = 0;  ///< source degree n
  int power = 0;   ///< multiplication by omega^power
  int source_dim = 0;
  int target_dim = 0;
  int rank = 0;
  bool holds = false;  ///< isomorphism (or injectivity, for the injectivity list)
};

struct LefschetzReport {
  int complex_dim = 0;
  std::vector<LefschetzMap> isomorphisms;  ///< omega^{d-n}: H^n -> H^{2d-n}, n < d
  std::vector<LefschetzMap> injectivity;   ///< omega^{n/2}: H^n -> H^{2n}, n even, 3n <= 2d

  bool hard_lefschetz_holds() const {
    return std::all_of(isomorphisms.begin(), isomorphisms.end(), [](const auto& m) { return m.holds; });
  }
  bool injectivity_holds() const {
    return std::all_of(injectivity.begin(), injectivity.end(), [](const auto& m) { return m.holds; });
  }
  bool certificate_holds() const { return hard_lefschetz_holds() && injectivity_holds(); }
};

inline LefschetzReport hard_lefschetz_report(const GradedRing& r, const CohClass& omega) {
  if (omega.degree != 2) throw DomainError("omega must have degree 2");
  if (r.top() % 2 != 0) throw DomainError("hard Lefschetz needs an even top degree");
  const int d = r.top() / 2;
  LefschetzReport rep;
  rep.complex_dim = d;
  auto build = [&](int n, int power) {
    const auto m = r.multiplication_matrix(r.power(omega, power), n);
    LefschetzMap lm{n, power, r.betti(n), r.betti(n + 2 * power), static_cast<int>(rank(m)), false};
    return lm;
  };
  for (int n = 0; n < d; ++n) {
    auto lm = build(n, d - n);
    lm.holds = lm.source_dim == lm.target_dim && lm.rank == lm.source_dim;
    rep.isomorphisms.push_back(lm);
  }
  for (int n = 0; 3 * n <= 2 * d; n += 2) {
    auto lm = build(n, n / 2);
    lm.holds = lm.rank == lm.source_dim;
    rep.injectivity.push_back(lm);
  }
  return rep;
}

}  // namespace tcfp
