#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcfp/cohomology.hpp"

using namespace tcfp;

namespace {

std::string data(const std::string& name) { return std::string(TCFP_DATA_DIR) + "/" + name; }

std::vector<GradedRing> all_presets() {
  return {presets::point(),        presets::sphere(1),  presets::sphere(4),
          presets::cp(1),          presets::cp(3),      presets::torus(2),
          presets::torus(4),       presets::parse("product(cp(1),cp(1))"),
          presets::parse("product(torus(2),sphere(3))"),
          presets::parse("wedge(cp(2),torus(3))"),
          presets::parse("product(wedge(sphere(1),sphere(3)),torus(1))")};
}

}  // namespace

TEST(Presets, CupSquareOfGeneratorOfCP2) {
  const auto r = presets::cp(2);
  const auto h = r.basis_class({2, 0});
  EXPECT_EQ(r.cup(h, h), r.basis_class({4, 0}));
}

TEST(Presets, SphereSquareVanishes) {
  for (int n = 1; n <= 6; ++n) {
    const auto r = presets::sphere(n);
    const auto x = r.basis_class({n, 0});
    const auto sq = r.cup(x, x);
    EXPECT_EQ(sq.degree, 2 * n);
    EXPECT_TRUE(sq.coords.empty());
    EXPECT_TRUE(sq.is_zero());
  }
}

TEST(Presets, KunnethBettiNumbers) {
  EXPECT_EQ(presets::parse("product(cp(1),cp(1))").betti_numbers(), (std::vector<int>{1, 0, 2, 0, 1}));
  const std::vector<std::pair<GradedRing, GradedRing>> pairs = {
      {presets::cp(2), presets::torus(3)}, {presets::sphere(3), presets::sphere(5)}, {presets::torus(2), presets::cp(1)}};
  for (const auto& [a, b] : pairs)
    EXPECT_EQ(presets::product(a, b).betti_numbers(), oracle::kunneth(a.betti_numbers(), b.betti_numbers()));
}

TEST(Presets, TorusIsExterior) {
  const auto t = presets::torus(3);
  EXPECT_EQ(t.betti_numbers(), (std::vector<int>{1, 3, 3, 1}));
  const auto e1 = t.basis_class({1, 0}), e2 = t.basis_class({1, 1});
  auto neg = t.cup(e2, e1);
  for (auto& c : neg.coords) c = -c;
  EXPECT_EQ(t.cup(e1, e2), neg);
  EXPECT_TRUE(t.cup(e1, e1).is_zero());
}

TEST(Presets, WedgeHasZeroCrossProducts) {
  const auto w = presets::wedge(presets::cp(1), presets::cp(1));
  EXPECT_EQ(w.betti_numbers(), (std::vector<int>{1, 0, 2}));
  const auto s = presets::wedge(presets::cp(2), presets::cp(2));
  EXPECT_TRUE(s.cup(s.basis_class({2, 0}), s.basis_class({2, 1})).is_zero());
  EXPECT_EQ(s.cup(s.basis_class({2, 1}), s.basis_class({2, 1})), s.basis_class({4, 1}));
}

TEST(Presets, AllValidateAndArePoincareSymmetric) {
  for (const auto& r : all_presets()) {
    EXPECT_NO_THROW(r.validate()) << r.name();
    EXPECT_EQ(r.poincare_symmetric(), r.name().find("wedge") == std::string::npos) << r.name();
  }
}

TEST(Presets, Grammar) {
  EXPECT_EQ(presets::parse("sphere-3").betti_numbers(), presets::sphere(3).betti_numbers());
  EXPECT_EQ(presets::parse(" cp ( 2 ) ").name(), "cp(2)");
  EXPECT_EQ(presets::parse("pt").name(), "point");
  EXPECT_THROW(presets::parse("klein(2)"), ParseError);
  EXPECT_THROW(presets::parse("cp(2"), ParseError);
  EXPECT_THROW(presets::parse("product(cp(1))"), ParseError);
  EXPECT_THROW(presets::parse("cp"), ParseError);
  EXPECT_THROW(presets::parse("sphere(0)"), DomainError);
}

TEST(Cup, UnitAndBilinearity) {
  const auto r = presets::parse("product(torus(2),cp(1))");
  const auto u = r.unit();
  for (const auto& ref : r.all_refs()) EXPECT_EQ(r.cup(u, r.basis_class(ref)), r.basis_class(ref));
  CohClass x = r.zero(1), y = r.zero(1);
  x.coords = {Rational(2), Rational(-1, 3)};
  y.coords = {Rational(5, 2), Rational(7)};
  const auto xy = r.cup(x, y), yx = r.cup(y, x);
  for (std::size_t i = 0; i < xy.coords.size(); ++i) EXPECT_EQ(xy.coords[i], -yx.coords[i]);
}

TEST(RingFile, ShippedCP2EqualsPreset) {
  const auto r = load_ring_file(data("cp2.ring"));
  EXPECT_EQ(r, presets::cp(2));
}

TEST(RingFile, RoundTripIsByteStable) {
  for (const auto& r : all_presets()) {
    const std::string text = write_ring(r);
    const auto back = load_ring(text);
    EXPECT_EQ(back, r) << r.name();
    EXPECT_EQ(write_ring(back), text);
  }
}

TEST(RingFile, OneSidedProductsAreSymmetrized) {
  const auto r = load_ring("name t\ntop 2\nbetti 1 2 1\ncup 1:0 1:1 = 1*2:0\n");
  const auto p = r.product({1, 1}, {1, 0});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], -1);
}

TEST(RingFile, CommutativityViolation) {
  try {
    load_ring_file(data("invalid/anticommuting_h.ring"));
    FAIL() << "expected an axiom error";
  } catch (const RingAxiomError& e) {
    EXPECT_EQ(e.axiom(), "commutativity");
    EXPECT_NE(e.witness().find("2:0"), std::string::npos);
  }
}

TEST(RingFile, UnitViolation) {
  try {
    load_ring_file(data("invalid/two_units.ring"));
    FAIL() << "expected an axiom error";
  } catch (const RingAxiomError& e) {
    EXPECT_EQ(e.axiom(), "unit");
  }
  EXPECT_THROW(load_ring("name u\ntop 2\nbetti 1 0 1\ncup 0:0 2:0 = 2*2:0\n"), RingAxiomError);
}

TEST(RingFile, AssociativityViolationNamesTriple) {
  try {
    load_ring_file(data("invalid/nonassociative.ring"));
    FAIL() << "expected an axiom error";
  } catch (const RingAxiomError& e) {
    EXPECT_EQ(e.axiom(), "associativity");
    EXPECT_EQ(std::count(e.witness().begin(), e.witness().end(), ':'), 3);
  }
}

TEST(RingFile, ParseErrors) {
  EXPECT_THROW(load_ring("top 2\nbetti 1 0 1\n"), ParseError);
  EXPECT_THROW(load_ring("name x\ntop 2\nbetti 1 0\n"), ParseError);
  EXPECT_THROW(load_ring("name x\ntop 2\nbetti 1 0 1\ncup 2:0 2:0 = 1*4:0\n"), ParseError);
  EXPECT_THROW(load_ring("name x\ntop 4\nbetti 1 0 1 0 1\ncup 2:0 2:0 = 1*2:0\n"), ParseError);
  EXPECT_THROW(load_ring("name x\ntop 4\nbetti 1 0 1 0 1\ncup 2:0 2:0 = 1/0*4:0\n"), ParseError);
  EXPECT_THROW(load_ring("name x\ntop 4\nbetti 1 0 1 0 1\ncup 2:0 2:0 = 1*4:0 +\n"), ParseError);
  EXPECT_THROW(load_ring("name x\ntop 4\nbetti 1 0 1 0 1\nbasis 2 a b\n"), ParseError);
  EXPECT_THROW(load_ring("name x\ntop 4\nbetti 1 0 1 0 1\nfrobnicate\n"), ParseError);
  EXPECT_THROW(load_ring_file(data("does-not-exist.ring")), ParseError);
  try {
    load_ring("name x\ntop 4\nbetti 1 0 1 0 1\n\ncup 2:0 2:0 = 1*4:9\n");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
  }
}

TEST(RingFile, RationalCoefficientsCanonical) {
  const auto r = load_ring("name q\ntop 4\nbetti 1 0 1 0 1\ncup 2:0 2:0 = 6/4*4:0 + -1/2*4:0\n");
  EXPECT_NE(write_ring(r).find("cup 2:0 2:0 = +1*4:0"), std::string::npos);
  const auto s = load_ring("name q\ntop 4\nbetti 1 0 1 0 1\ncup 2:0 2:0 = -6/4*4:0\n");
  EXPECT_NE(write_ring(s).find("= -3/2*4:0"), std::string::npos);
}

TEST(ParseClass, LabelsReferencesAndCombinations) {
  const auto r = presets::parse("product(cp(1),cp(1))");
  const auto a = parse_class(r, "h + 2*h'");
  EXPECT_EQ(a.degree, 2);
  EXPECT_EQ(a.coords, (std::vector<Rational>{Rational(2), Rational(1)}));
  EXPECT_EQ(parse_class(r, "-1/2*2:1").coords, (std::vector<Rational>{Rational(0), Rational(-1, 2)}));
  EXPECT_THROW(parse_class(r, "nope"), ParseError);
  EXPECT_THROW(parse_class(r, "h + 1"), ParseError);
  EXPECT_THROW(parse_class(r, "7:0"), ParseError);
}

TEST(Lefschetz, ProjectiveSpaces) {
  for (int d = 1; d <= 6; ++d) {
    const auto r = presets::cp(d);
    const auto rep = hard_lefschetz_report(r, r.basis_class({2, 0}));
    EXPECT_EQ(rep.complex_dim, d);
    EXPECT_EQ(rep.isomorphisms.size(), static_cast<std::size_t>(d));
    EXPECT_TRUE(rep.hard_lefschetz_holds());
    EXPECT_TRUE(rep.injectivity_holds());
    for (const auto& m : rep.injectivity) EXPECT_LE(3 * m.degree, 2 * d);
  }
}

TEST(Lefschetz, SphereTwo) {
  const auto r = presets::sphere(2);
  const auto rep = hard_lefschetz_report(r, r.basis_class({2, 0}));
  ASSERT_EQ(rep.isomorphisms.size(), 1u);
  EXPECT_EQ(rep.isomorphisms[0].degree, 0);
  EXPECT_TRUE(rep.isomorphisms[0].holds);
}

TEST(Lefschetz, FailsWhenSquareVanishes) {
  const auto r = load_ring_file(data("fake_cp2.ring"));
  const auto rep = hard_lefschetz_report(r, r.basis_class({2, 0}));
  EXPECT_FALSE(rep.isomorphisms[0].holds);
  EXPECT_EQ(rep.isomorphisms[0].rank, 0);
  EXPECT_FALSE(rep.hard_lefschetz_holds());

  const auto r3 = load_ring_file(data("fake_cp3.ring"));
  const auto rep3 = hard_lefschetz_report(r3, r3.basis_class({2, 0}));
  EXPECT_FALSE(rep3.injectivity_holds());
  EXPECT_FALSE(rep3.injectivity.back().holds);
  EXPECT_EQ(rep3.injectivity.back().degree, 2);
}

TEST(Lefschetz, Errors) {
  const auto r = presets::cp(2);
  EXPECT_THROW(hard_lefschetz_report(r, r.basis_class({4, 0})), DomainError);
  const auto t = presets::sphere(3);
  EXPECT_THROW(hard_lefschetz_report(t, t.zero(2)), DomainError);
}

TEST(Lefschetz, ProductOfProjectiveSpaces) {
  const auto r = presets::parse("product(cp(2),cp(3))");
  const auto omega = parse_class(r, "h + h'");
  EXPECT_TRUE(hard_lefschetz_report(r, omega).hard_lefschetz_holds());
  EXPECT_FALSE(hard_lefschetz_report(r, parse_class(r, "h")).hard_lefschetz_holds());
}
