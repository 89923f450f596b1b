#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "tcfp/matrix.hpp"
#include "tcfp/modforms.hpp"

namespace tcfp {

/// Tensor-product quadrature over the fundamental domain
/// {|u| <= 1/2, |tau| >= 1}, cut off at v = vmax.
struct QuadratureConfig {
  int qprec = 60;
  Real vmax = 8;
  int nu = 64;
  int nv = 64;
  bool refine = true;

  void validate() const {
    if (qprec < 10) throw DomainError("quadrature qprec must be >= 10");
    if (!(vmax >= 2)) throw DomainError("quadrature vmax must be >= 2");
    if (nu < 8 || nv < 8) throw DomainError("quadrature grid sizes nu, nv must be >= 8");
  }

  /// Every resolution parameter doubled.
  QuadratureConfig doubled() const { return {2 * qprec, 2 * vmax, 2 * nu, 2 * nv, refine}; }

  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

/// A cusp form given by coordinates in the Miller basis of S_weight.
struct CuspForm {
  int weight = 0;
  std::vector<Complex> coords;
};

struct InnerResult {
  Complex value;
  Real error_estimate = 0;
};

struct PeterssonGram {
  int weight = 0;
  Matrix<Complex> matrix;  ///< G(i, j) = <b_i, b_j>, Hermitian
  QuadratureConfig config;
  Real error_estimate = 0;  ///< grid-doubling difference plus cusp tail bound
};

namespace detail {

struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> memo;
  std::lock_guard lock(mutex);
  if (auto it = memo.find(n); it != memo.end()) return it->second;

  GaussRule rule{std::vector<Real>(n), std::vector<Real>(n)};
  const Real pi = std::numbers::pi_v<Real>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 4 * std::numeric_limits<Real>::epsilon()) break;
    }
    {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    const Real w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  memo.emplace(n, rule);
  return rule;
}

struct Node {
  Real u;
  Real v;
  Real weight;
};

/// Gauss-Legendre in u on [-1/2, 1/2]; in v from the arc sqrt(1 - u^2) to
/// vmax in two panels, the lower third of the range getting half the nodes.
inline std::vector<Node> fundamental_domain_nodes(int nu, int nv, Real vmax) {
  const GaussRule gu = gauss_legendre(nu);
  const int n_low = nv / 2;
  const GaussRule g_low = gauss_legendre(n_low);
  const GaussRule g_high = gauss_legendre(nv - n_low);
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(nu) * nv);
  auto panel = [&nodes](const GaussRule& g, Real a, Real b, Real u, Real wu) {
    const Real half = (b - a) / 2, mid = (a + b) / 2;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) nodes.push_back({u, mid + half * g.nodes[i], wu * half * g.weights[i]});
  };
  for (int i = 0; i < nu; ++i) {
    const Real u = gu.nodes[i] / 2;
    const Real wu = gu.weights[i] / 2;
    const Real v0 = std::sqrt(1 - u * u);
    const Real split = v0 + (vmax - v0) / 3;
    panel(g_low, v0, split, u, wu);
    panel(g_high, split, vmax, u, wu);
  }
  return nodes;
}

/// Neumaier-compensated complex accumulator; the summation order is fixed by
/// the caller so results are reproducible.
class ComplexSum {
 public:
  void add(Complex z) {
    add_part(re_, cre_, z.real());
    add_part(im_, cim_, z.imag());
  }
  Complex value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_part(Real& sum, Real& comp, Real x) {
    const Real t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  Real re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

/// Values of every series at every node, row per node.
inline Matrix<Complex> evaluate_at_nodes(const std::vector<QExpansion>& series, const std::vector<Node>& nodes,
                                         int qprec) {
  Matrix<Complex> values(nodes.size(), series.size());
  std::vector<std::vector<Real>> coeffs;
  for (const auto& s : series) {
    const int p = std::min(qprec, s.prec());
    std::vector<Real> c(static_cast<std::size_t>(p) + 1);
    for (int n = 0; n <= p; ++n) c[n] = to_long_double(s[n]);
    coeffs.push_back(std::move(c));
  }
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const Complex q = std::polar(std::exp(-two_pi * nodes[a].v), two_pi * nodes[a].u);
    for (std::size_t s = 0; s < series.size(); ++s) {
      Complex acc = 0;
      for (std::size_t n = coeffs[s].size(); n-- > 0;) acc = acc * q + coeffs[s][n];
      values(a, s) = acc;
    }
  }
  return values;
}

/// Gram matrix sum_nodes w v^{k-2} F_i conj(F_j) of arbitrary series.
inline Matrix<Complex> quadrature_gram(const std::vector<QExpansion>& series, int k, int nu, int nv, Real vmax,
                                       int qprec) {
  const auto nodes = fundamental_domain_nodes(nu, nv, vmax);
  const auto values = evaluate_at_nodes(series, nodes, qprec);
  const std::size_t d = series.size();
  std::vector<ComplexSum> acc(d * d);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const Real w = nodes[a].weight * std::pow(nodes[a].v, static_cast<Real>(k - 2));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) acc[i * d + j].add(w * values(a, i) * std::conj(values(a, j)));
  }
  Matrix<Complex> g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = acc[i * d + j].value();
  return g;
}

/// Upper bound for the integrand mass above vmax: |F_i(tau)| <= A_i e^{-2 pi v}
/// there, and int_{vmax}^inf v^{k-2} e^{-4 pi v} dv is an incomplete gamma.
inline Real cusp_tail_bound(const std::vector<QExpansion>& series, int k, Real vmax, int qprec) {
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  Real amax = 0;
  for (const auto& s : series) {
    Real a = 0;
    for (int n = 1; n <= std::min(qprec, s.prec()); ++n)
      a += std::fabs(to_long_double(s[n])) * std::exp(-two_pi * (n - 1) * vmax);
    amax = std::max(amax, a);
  }
  const Real c = 2 * two_pi;
  const Real shape = static_cast<Real>(k - 1);
  const Real integral = boost::math::tgamma(shape, c * vmax) / std::pow(c, shape);
  return amax * amax * integral;
}

inline Matrix<Complex> hermitize(const Matrix<Complex>& g) {
  Matrix<Complex> h = g + adjoint(g);
  h *= Complex(0.5L);
  return h;
}

inline void check_space(int k) {
  if (dim_cusp(k) < 1) throw DomainError("S_" + std::to_string(k) + " is zero; no Petersson product to compute");
}

}  // namespace detail

/// Gram matrix of the Miller basis of S_k under the Petersson product
/// <f, g> = int_F f conj(g) v^{k-2} du dv.
inline PeterssonGram gram(int k, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  detail::check_space(k);
  const CuspSpace space = cusp_basis(k, cfg.qprec);
  Matrix<Complex> g = detail::quadrature_gram(space.basis, k, cfg.nu, cfg.nv, cfg.vmax, cfg.qprec);
  Real err = 0;
  if (cfg.refine) {
    Matrix<Complex> fine = detail::quadrature_gram(space.basis, k, 2 * cfg.nu, 2 * cfg.nv, cfg.vmax, cfg.qprec);
    err = max_abs(Matrix<Complex>(fine - g));
    g = std::move(fine);
  }
  err += detail::cusp_tail_bound(space.basis, k, cfg.vmax, cfg.qprec);
  return {k, detail::hermitize(g), cfg, err};
}

/// Petersson product of two cusp forms of the same weight; linear in f,
/// conjugate-linear in g.
inline InnerResult inner(const CuspForm& f, const CuspForm& g, const QuadratureConfig& cfg = {}) {
  if (f.weight != g.weight)
    throw DomainError("Petersson product of weights " + std::to_string(f.weight) + " and " + std::to_string(g.weight));
  cfg.validate();
  const int k = f.weight;
  detail::check_space(k);
  const std::size_t dim = static_cast<std::size_t>(dim_cusp(k));
  if (f.coords.size() != dim || g.coords.size() != dim)
    throw DomainError("cusp form coordinates do not match dim S_" + std::to_string(k));
  const CuspSpace space = cusp_basis(k, cfg.qprec);

  auto integrate = [&](int nu, int nv) {
    const auto nodes = detail::fundamental_domain_nodes(nu, nv, cfg.vmax);
    const auto values = detail::evaluate_at_nodes(space.basis, nodes, cfg.qprec);
    detail::ComplexSum acc;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      Complex fv = 0, gv = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        fv += f.coords[i] * values(a, i);
        gv += g.coords[i] * values(a, i);
      }
      acc.add(nodes[a].weight * std::pow(nodes[a].v, static_cast<Real>(k - 2)) * fv * std::conj(gv));
    }
    return acc.value();
  };
  Complex value = integrate(cfg.nu, cfg.nv);
  Real err = 0;
  if (cfg.refine) {
    const Complex fine = integrate(2 * cfg.nu, 2 * cfg.nv);
    err = std::abs(fine - value);
    value = fine;
  }
  Real nf = 0, ng = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    nf += std::abs(f.coords[i]);
    ng += std::abs(g.coords[i]);
  }
  err += nf * ng * detail::cusp_tail_bound(space.basis, k, cfg.vmax, cfg.qprec);
  return {value, err};
}

/// |T^t G - G conj(T)| / |G| (Frobenius) for T = T_n on S_k: the relative
/// failure of <T_n f, g> = <f, T_n g> on the Miller basis.
inline Real self_adjointness_residual(int k, int n, const QuadratureConfig& cfg = {}) {
  detail::check_space(k);
  const Matrix<Complex> t = from_rational<Complex>(hecke_matrix(k, n).entries);
  const Matrix<Complex> g = gram(k, cfg).matrix;
  const Matrix<Complex> r = t.transpose() * g - g * conjugate(t);
  return frobenius_norm(r) / frobenius_norm(g);
}

}  // namespace tcfp
