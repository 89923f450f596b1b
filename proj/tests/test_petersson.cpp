#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcfp/petersson.hpp"

using namespace tcfp;

namespace {

// Brute-force Simpson value of <Delta, Delta>, see tests/oracles.hpp; also
// reproduced to 25 digits by tests/oracles/delta_norm.py.
constexpr long double kDeltaNorm = 1.035362056804320922347817e-06L;

QuadratureConfig coarse(int n) {
  QuadratureConfig c;
  c.nu = c.nv = n;
  c.refine = false;
  return c;
}

}  // namespace

TEST(QuadratureConfigTest, Validation) {
  QuadratureConfig c;
  EXPECT_NO_THROW(c.validate());
  c.vmax = 1.5L;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.nu = 4;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.qprec = 9;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Gram, DeltaNormMatchesOracle) {
  const auto g = gram(12);
  ASSERT_EQ(g.matrix.rows(), 1u);
  const Real v = g.matrix(0, 0).real();
  EXPECT_NEAR(static_cast<double>(v / kDeltaNorm - 1), 0, 1e-9);
  EXPECT_EQ(g.matrix(0, 0).imag(), 0);
  EXPECT_LT(g.error_estimate, 1e-9L * v);
}

TEST(Gram, SimpsonOracleIsIndependentlyConsistent) {
  const Real simpson = oracle::delta_norm_richardson(400);
  EXPECT_NEAR(static_cast<double>(simpson / kDeltaNorm - 1), 0, 1e-8);
}

TEST(Gram, DoublingIsStable) {
  const Real a = gram(12).matrix(0, 0).real();
  const Real b = gram(12, QuadratureConfig{}.doubled()).matrix(0, 0).real();
  EXPECT_LE(std::fabs(a - b) / b, 1e-9L);
}

TEST(Gram, Weight24IsHermitianPositiveDefinite) {
  const auto g = gram(24);
  ASSERT_EQ(g.matrix.rows(), 2u);
  EXPECT_EQ(g.matrix, adjoint(g.matrix));
  const auto ev = hermitian_eigenvalues(g.matrix);
  EXPECT_GT(ev.front(), 0);
}

TEST(Gram, ZeroSpaceIsAnError) { EXPECT_THROW(gram(10), DomainError); }

TEST(Gram, PositiveDefiniteThroughWeight28) {
  for (int k = 12; k <= 28; k += 2) {
    if (dim_cusp(k) == 0) continue;
    const auto ev = hermitian_eigenvalues(gram(k).matrix);
    EXPECT_GT(ev.front(), 0) << "k=" << k;
  }
}

TEST(Gram, GridDoublingConverges) {
  for (int k : {12, 20, 24, 28}) {
    const Real v8 = gram(k, coarse(8)).matrix(0, 0).real();
    const Real v16 = gram(k, coarse(16)).matrix(0, 0).real();
    const Real v32 = gram(k, coarse(32)).matrix(0, 0).real();
    const Real v64 = gram(k, coarse(64)).matrix(0, 0).real();
    EXPECT_LT(std::fabs(v32 - v16), std::fabs(v16 - v8)) << k;
    EXPECT_LE(std::fabs(v64 - v32) / v64, 1e-8L) << k;
  }
}

TEST(Inner, LinearAndConjugateLinear) {
  const CuspForm f{24, {Complex(1, 2), Complex(-0.5L, 0.25L)}};
  const CuspForm g{24, {Complex(0.3L, -1), Complex(2, 0.5L)}};
  const Complex a(0.7L, -1.3L);
  const auto fg = inner(f, g).value;
  const CuspForm af{24, {a * f.coords[0], a * f.coords[1]}};
  const CuspForm ag{24, {a * g.coords[0], a * g.coords[1]}};
  EXPECT_LE(std::abs(inner(af, g).value - a * fg), 1e-12L * std::abs(fg));
  EXPECT_LE(std::abs(inner(f, ag).value - std::conj(a) * fg), 1e-12L * std::abs(fg));
  EXPECT_LE(std::abs(inner(g, f).value - std::conj(fg)), 1e-12L * std::abs(fg));
}

TEST(Inner, PositiveOnNonzeroForms) {
  for (const auto& c : {std::vector<Complex>{1, 0}, {0, 1}, {Complex(1, 1), Complex(-2, 0.5L)}}) {
    const auto v = inner({24, c}, {24, c}).value;
    EXPECT_GT(v.real(), 0);
    EXPECT_LE(std::fabs(v.imag()), 1e-15L * v.real());
  }
}

TEST(Inner, AgreesWithGram) {
  const auto G = gram(24).matrix;
  const CuspForm f{24, {Complex(1, 2), Complex(-0.5L, 0.25L)}};
  const CuspForm g{24, {Complex(0.3L, -1), Complex(2, 0.5L)}};
  Complex want = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) want += f.coords[i] * G(i, j) * std::conj(g.coords[j]);
  EXPECT_LE(std::abs(inner(f, g).value - want), 1e-10L * std::abs(want));
}

TEST(Inner, Errors) {
  EXPECT_THROW(inner({12, {1}}, {24, {1, 0}}), DomainError);
  EXPECT_THROW(inner({24, {1}}, {24, {1, 0}}), DomainError);
  EXPECT_THROW(inner({10, {}}, {10, {}}), DomainError);
}

TEST(SelfAdjointness, Examples) {
  EXPECT_LE(self_adjointness_residual(12, 2), 1e-15L);
  EXPECT_LE(self_adjointness_residual(24, 2), 1e-6L);
  EXPECT_LE(self_adjointness_residual(26, 3), 1e-6L);
}

TEST(SelfAdjointness, DecreasesUnderRefinement) {
  for (int n : {2, 5, 7}) {
    Real prev = self_adjointness_residual(24, n, coarse(8));
    for (int g : {16, 32}) {
      const Real r = self_adjointness_residual(24, n, coarse(g));
      EXPECT_LT(r, prev) << "n=" << n << " grid " << g;
      prev = r;
    }
  }
}

TEST(SelfAdjointness, EigenformsAreOrthogonal) {
  for (int k : {24, 28}) {
    const auto e = eigenforms(k);
    ASSERT_EQ(e.size(), 2u);
    const CuspForm f{k, e[0].coords}, g{k, e[1].coords};
    const Real nf = std::sqrt(inner(f, f).value.real()), ng = std::sqrt(inner(g, g).value.real());
    EXPECT_LE(std::abs(inner(f, g).value), 1e-6L * nf * ng) << k;
  }
}
