#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "tcfp/matrix.hpp"
#include "tcfp/qexp.hpp"

namespace tcfp {

/// Dimension of the space of level-1 cusp forms of weight k over Q.
///
/// Implemented as the rank pattern of pi_n of the fiber of tmf -> ko with
/// n = 2k: zero below n = 24, then rank j when n = 24j + r with
/// r in {0, 8, 12, 16, 20}, rank j - 1 when r in {2, 4, 6, 10, 14, 18, 22},
/// and rank 0 otherwise. Odd weights are zero in level 1; for them the
/// pattern's r = 2, 6, 10, ... entries do not apply, so they are cut off first.
inline int dim_cusp(int k) {
  if (k < 0 || k % 2 != 0) return 0;
  const int n = 2 * k;
  if (n < 24) return 0;
  const int j = n / 24;
  switch (n % 24) {
    case 0:
    case 8:
    case 12:
    case 16:
    case 20:
      return j;
    case 2:
    case 4:
    case 6:
    case 10:
    case 14:
    case 18:
    case 22:
      return j - 1;
    default:
      return 0;
  }
}

/// dim_cusp at weight twice_weight / 2, extended by zero to half-integers.
inline int dim_cusp_twice(int twice_weight) {
  if (twice_weight % 2 != 0) return 0;
  return dim_cusp(twice_weight / 2);
}

/// E_4 = 1 + 240 sum sigma_3(n) q^n or E_6 = 1 - 504 sum sigma_5(n) q^n.
inline QExpansion eisenstein(int k, int prec) {
  if (k != 4 && k != 6) throw DomainError("eisenstein: only weights 4 and 6 are provided");
  if (prec < 0) throw DomainError("negative precision");
  std::vector<Integer> sigma(static_cast<std::size_t>(prec) + 1, Integer(0));
  for (int d = 1; d <= prec; ++d) {
    const Integer dp = integer_pow(d, static_cast<unsigned>(k - 1));
    for (int n = d; n <= prec; n += d) sigma[n] += dp;
  }
  const long c = k == 4 ? 240 : -504;
  std::vector<Rational> a(static_cast<std::size_t>(prec) + 1);
  a[0] = 1;
  for (int n = 1; n <= prec; ++n) a[n] = Rational(sigma[n] * c);
  return QExpansion(std::move(a));
}

/// Delta = q prod_{n>=1} (1 - q^n)^24, via Euler's pentagonal series for the
/// product.
inline QExpansion delta(int prec) {
  if (prec < 0) throw DomainError("negative precision");
  if (prec == 0) return QExpansion::zero(0);
  const int p = prec - 1;
  std::vector<Rational> euler(static_cast<std::size_t>(p) + 1, Rational(0));
  for (int j = 0;; ++j) {
    const int g1 = j * (3 * j - 1) / 2;
    const int g2 = j * (3 * j + 1) / 2;
    if (g1 > p) break;
    const int s = (j % 2 == 0) ? 1 : -1;
    euler[g1] = s;
    if (j > 0 && g2 <= p) euler[g2] = s;
  }
  const QExpansion eta24 = pow(QExpansion(std::move(euler)), 24);
  std::vector<Rational> a(static_cast<std::size_t>(prec) + 1, Rational(0));
  for (int n = 1; n <= prec; ++n) a[n] = eta24[n - 1];
  return QExpansion(std::move(a));
}

/// Echelonized ("Miller") basis of S_k: basis[i] = q^{i+1} + O(q^{dim+1}).
struct CuspSpace {
  int weight = 0;
  int dim = 0;
  int prec = 0;
  std::vector<QExpansion> basis;

  CuspSpace truncated(int new_prec) const {
    CuspSpace s{weight, dim, new_prec, {}};
    for (const auto& b : basis) s.basis.push_back(b.truncated(new_prec));
    return s;
  }
};

namespace detail {

inline CuspSpace build_cusp_basis(int k, int prec) {
  const int dim = dim_cusp(k);
  CuspSpace space{k, dim, prec, {}};
  if (dim == 0) return space;

  const QExpansion e4 = eisenstein(4, prec);
  const QExpansion e6 = eisenstein(6, prec);
  const QExpansion d = delta(prec);
  std::vector<QExpansion> monomials;
  for (int c = 1; 12 * c <= k; ++c) {
    const int rest = k - 12 * c;
    for (int b = 0; 6 * b <= rest; ++b) {
      if ((rest - 6 * b) % 4 != 0) continue;
      const int a = (rest - 6 * b) / 4;
      monomials.push_back(pow(d, c) * pow(e4, a) * pow(e6, b));
    }
  }
  Matrix<Rational> m(monomials.size(), static_cast<std::size_t>(prec) + 1);
  for (std::size_t i = 0; i < monomials.size(); ++i)
    for (int n = 0; n <= prec; ++n) m(i, n) = monomials[i][n];
  auto [red, pivots] = rref(std::move(m));
  if (static_cast<int>(pivots.size()) != dim)
    throw NumericalError("cusp monomials span dimension " + std::to_string(pivots.size()) + ", expected " +
                         std::to_string(dim));
  for (int i = 0; i < dim; ++i) {
    if (pivots[i] != static_cast<std::size_t>(i + 1))
      throw NumericalError("cusp basis is not in Miller echelon shape");
    std::vector<Rational> row(red.row(i).begin(), red.row(i).end());
    space.basis.emplace_back(std::move(row));
  }
  return space;
}

// Memo of the highest-precision basis computed per weight. Miller bases at
// different precisions agree on shared coefficients, so truncation is exact.
class BasisCache {
 public:
  CuspSpace get(int k, int prec) {
    {
      std::lock_guard lock(mutex_);
      auto it = spaces_.find(k);
      if (it != spaces_.end() && it->second.prec >= prec) return it->second.truncated(prec);
    }
    CuspSpace built = build_cusp_basis(k, prec);
    std::lock_guard lock(mutex_);
    auto it = spaces_.find(k);
    if (it == spaces_.end() || built.prec > it->second.prec) spaces_.insert_or_assign(k, built);
    return built;
  }

  static BasisCache& instance() {
    static BasisCache cache;
    return cache;
  }

 private:
  std::mutex mutex_;
  std::map<int, CuspSpace> spaces_;
};

}  // namespace detail

/// S_k to the given precision. Requires prec >= dim + 1.
inline CuspSpace cusp_basis(int k, int prec) {
  const int dim = dim_cusp(k);
  if (prec < dim + 1)
    throw PrecisionError("cusp_basis(" + std::to_string(k) + "): prec " + std::to_string(prec) + " < dim + 1 = " +
                         std::to_string(dim + 1));
  return detail::BasisCache::instance().get(k, prec);
}

/// a_m(T_n f) = sum_{d | gcd(m, n)} d^{k-1} a_{mn/d^2}(f).
inline Rational hecke_coefficient(const QExpansion& f, int k, int n, int m) {
  const int g = std::gcd(m, n);
  Rational s = 0;
  for (int d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    const long idx = static_cast<long>(m) * n / (static_cast<long>(d) * d);
    s += Rational(integer_pow(d, static_cast<unsigned>(k - 1))) * f[static_cast<int>(idx)];
  }
  return s;
}

/// Classical T_n on a weight-k q-expansion; output precision floor(prec / n).
inline QExpansion hecke_apply(const QExpansion& f, int k, int n) {
  if (n < 1) throw DomainError("Hecke index must be positive");
  if (k < 1) throw DomainError("Hecke operators need positive weight");
  if (f.prec() < n) throw PrecisionError("T_" + std::to_string(n) + " needs prec >= " + std::to_string(n));
  const int out = f.prec() / n;
  std::vector<Rational> a(static_cast<std::size_t>(out) + 1);
  for (int m = 0; m <= out; ++m) a[m] = hecke_coefficient(f, k, n, m);
  return QExpansion(std::move(a));
}

/// Exact matrix of T_n on the Miller basis of S_k. Column i holds the
/// coordinates of T_n(basis[i]), so composition is matrix multiplication.
struct HeckeMatrix {
  int weight = 0;
  int index = 1;
  Matrix<Rational> entries;
};

inline HeckeMatrix hecke_matrix(int k, int n, int prec) {
  if (n < 1) throw DomainError("Hecke index must be positive");
  const int dim = dim_cusp(k);
  if (dim == 0) return {k, n, Matrix<Rational>(0, 0)};
  if (prec < n * (dim + 1))
    throw PrecisionError("hecke_matrix(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ") needs prec >= " +
                         std::to_string(n * (dim + 1)));
  const CuspSpace space = cusp_basis(k, prec);
  Matrix<Rational> t(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) t(j, i) = hecke_coefficient(space.basis[i], k, n, j + 1);
  return {k, n, std::move(t)};
}

inline HeckeMatrix hecke_matrix(int k, int n) { return hecke_matrix(k, n, n * (dim_cusp(k) + 1)); }

/// A numerically computed Hecke eigenform, as unit coordinates in the Miller
/// basis, with its T_2, T_3, T_5 eigenvalues.
struct Eigenform {
  std::vector<Complex> coords;
  std::map<int, Real> eigenvalues;
  Real max_residual = 0;
};

inline constexpr Real kEigenResidualTolerance = 1e-10L;

namespace detail {

inline EigenRMatrix to_eigen_real(const Matrix<Rational>& m) {
  EigenRMatrix e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_long_double(m(i, j));
  return e;
}

inline bool has_repeated(std::vector<Real> values, Real scale) {
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] - values[i - 1] <= 1e-8L * std::max<Real>(scale, 1)) return true;
  return false;
}

}  // namespace detail

/// Diagonalizes T_2 on S_k and checks every eigenvector against T_2, T_3 and
/// T_5. Residuals are measured relative to the operator norm:
/// |T v - lambda v| <= 1e-10 * max(1, |T|_F) * |v|.
inline std::vector<Eigenform> eigenforms(int k) {
  const int dim = dim_cusp(k);
  std::vector<Eigenform> out;
  if (dim == 0) return out;

  std::map<int, EigenRMatrix> ops;
  for (int p : {2, 3, 5}) ops[p] = detail::to_eigen_real(hecke_matrix(k, p).entries);

  auto spectrum = [](const EigenRMatrix& a) {
    Eigen::EigenSolver<EigenRMatrix> es(a, true);
    if (es.info() != Eigen::Success) throw NumericalError("eigen decomposition failed");
    return es;
  };
  EigenRMatrix target = ops[2];
  auto es = spectrum(target);
  auto real_parts = [&](const auto& solver) {
    std::vector<Real> v;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) v.push_back(solver.eigenvalues()(i).real());
    return v;
  };
  if (detail::has_repeated(real_parts(es), target.norm())) {
    // Separate a repeated T_2 eigenvalue with a generic combination including T_3.
    const Real alpha = std::sqrt(2.0L) * ops[2].norm() / std::max<Real>(ops[3].norm(), 1);
    target = ops[2] + alpha * ops[3];
    es = spectrum(target);
    if (detail::has_repeated(real_parts(es), target.norm()))
      throw NumericalError("T_2 and T_3 do not separate the eigenforms of weight " + std::to_string(k));
  }

  const auto& vecs = es.eigenvectors();
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    Eigen::Matrix<Complex, Eigen::Dynamic, 1> v = vecs.col(c);
    v /= v.norm();
    Eigen::Index lead = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > 1e-8L) {
        lead = i;
        break;
      }
    v *= std::abs(v(lead)) / v(lead);

    Eigenform ef;
    for (Eigen::Index i = 0; i < v.size(); ++i) ef.coords.push_back(v(i));
    for (const auto& [p, t] : ops) {
      const Eigen::Matrix<Complex, Eigen::Dynamic, 1> tv = t.cast<Complex>() * v;
      const Complex lambda = v.dot(tv);  // v is unit
      const Real res = (tv - lambda * v).norm() / std::max<Real>(1, t.norm());
      if (res > kEigenResidualTolerance)
        throw NumericalError("eigenvector residual " + std::to_string(static_cast<double>(res)) + " for T_" +
                             std::to_string(p) + " at weight " + std::to_string(k));
      ef.eigenvalues[p] = lambda.real();
      ef.max_residual = std::max(ef.max_residual, res);
    }
    out.push_back(std::move(ef));
  }
  std::sort(out.begin(), out.end(),
            [](const Eigenform& a, const Eigenform& b) { return a.eigenvalues.at(2) < b.eigenvalues.at(2); });
  return out;
}

}  // namespace tcfp
