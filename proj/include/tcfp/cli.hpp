#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

#include "tcfp/cohomology.hpp"
#include "tcfp/modforms.hpp"
#include "tcfp/petersson.hpp"
#include "tcfp/tpp.hpp"

namespace tcfp::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// A flag value that parsed but makes no sense; reported like a CLI11 usage error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Formatting

inline std::string fmt(Real x) {
  if (x == 0) x = 0;  // fold -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Le", x);
  return buf;
}

inline json to_json(const Rational& q) { return to_string(q); }
inline json to_json(const Complex& z) { return {{"re", fmt(z.real())}, {"im", fmt(z.imag())}}; }
inline json to_json(const Gaussian& z) { return {{"re", to_string(z.re)}, {"im", to_string(z.im)}}; }
inline json to_json(Real x) { return fmt(x); }

template <class T>
json to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class S>
json to_json(std::span<const S> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

template <class S>
json to_json(const std::vector<S>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const QuadratureConfig& c) {
  return {{"qprec", c.qprec}, {"vmax", fmt(c.vmax)}, {"nu", c.nu}, {"nv", c.nv}, {"refine", c.refine}};
}

template <class S>
json to_json(const TcfElementT<S>& e) {
  json comps = json::array();
  for (const auto& [n, c] : e.components())
    comps.push_back({{"ah_degree", n}, {"weight", e.weight(n)}, {"rows", to_json(c)}});
  return {{"degree", e.degree()}, {"components", comps}};
}

template <class S>
json to_json(const TppValueT<S>& v) {
  json out = json::array();
  for (const auto& [p, c] : v.by_degree) out.push_back({{"degree", p}, {"coords", to_json(c.coords)}});
  return out;
}

template <class S>
json to_json(const RadicalReport<S>& r, bool with_basis = true) {
  json blocks = json::array();
  for (const auto& [n, d] : r.block_dims)
    blocks.push_back({{"ah_degree", n}, {"dim", d}, {"radical_dim", r.block_radical_dims.at(n)}});
  json out = {{"degree", r.degree},
              {"ah_degrees", r.ah_degrees},
              {"slice_dim", r.slice_dim},
              {"blocks", blocks},
              {"radical_dim", r.radical.size()},
              {"nondegenerate", r.nondegenerate}};
  if (with_basis) {
    json basis = json::array();
    for (const auto& e : r.radical) basis.push_back(to_json(e));
    out["radical_basis"] = basis;
  }
  return out;
}

inline json to_json(const LefschetzMap& m) {
  return {{"degree", m.degree}, {"power", m.power}, {"source_dim", m.source_dim},
          {"target_dim", m.target_dim}, {"rank", m.rank}, {"holds", m.holds}};
}

inline json to_json(const LefschetzReport& r) {
  json iso = json::array(), inj = json::array();
  for (const auto& m : r.isomorphisms) iso.push_back(to_json(m));
  for (const auto& m : r.injectivity) inj.push_back(to_json(m));
  return {{"complex_dim", r.complex_dim},
          {"isomorphisms", iso},
          {"injectivity", inj},
          {"hard_lefschetz", r.hard_lefschetz_holds()},
          {"injectivity_certificate", r.injectivity_holds()}};
}

inline json ring_json(const GradedRing& r) {
  return {{"name", r.name()}, {"top", r.top()}, {"betti", r.betti_numbers()},
          {"poincare_symmetric", r.poincare_symmetric()}, {"ring_file", write_ring(r)}};
}

inline json error_json(const std::exception& e) {
  json err = {{"message", e.what()}, {"kind", "internal"}};
  if (const auto* te = dynamic_cast<const Error*>(&e)) err["kind"] = te->kind();
  if (const auto* ae = dynamic_cast<const RingAxiomError*>(&e)) {
    err["axiom"] = ae->axiom();
    err["witness"] = ae->witness();
  }
  if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe && pe->line() > 0) err["line"] = pe->line();
  return err;
}

// ---------------------------------------------------------------------------
// Argument resolution

/// A preset expression, or a path to a ring file.
inline GradedRing resolve_space(const std::string& space, const std::string& flag) {
  if (std::filesystem::is_regular_file(space)) return load_ring_file(space);
  try {
    return presets::parse(space);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": '" + space + "' is neither a ring file nor a preset (" + e.what() + ")");
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

inline CohClass resolve_class(const GradedRing& r, const std::string& text, const std::string& flag) {
  try {
    return parse_class(r, text);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// repro recipes

struct Check {
  std::string name;
  bool pass;
  json detail;
};

inline json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

namespace detail {

inline constexpr Real kReproTolerance = 1e-6L;

inline bool close(const Complex& a, const Complex& b, Real rel = kReproTolerance) {
  return std::abs(a - b) <= rel * std::max<Real>(std::abs(b), std::numeric_limits<Real>::min());
}

/// Classical Petersson product of two rows of coordinates, through the
/// direct quadrature path rather than the Gram matrix.
inline Complex classical(int weight, std::span<const Complex> f, std::span<const Complex> g, const QuadratureConfig& cfg) {
  return inner(CuspForm{weight, {f.begin(), f.end()}}, CuspForm{weight, {g.begin(), g.end()}}, cfg).value;
}

inline std::vector<Check> repro_point(const QuadratureGramOracle& grams, std::mt19937_64& rng) {
  std::vector<Check> checks;
  auto ring = std::make_shared<const GradedRing>(presets::point());
  for (int k : {12, 16, 24}) {
    const int m = -2 * k;
    const auto f = random_element<Complex>(ring, m, rng), g = random_element<Complex>(ring, m, rng);
    const auto v = full_product(f, g, grams);
    const Complex got = v.by_degree.at(0).coords[0];
    const Complex want = classical(k, f.component(0).row(0), g.component(0).row(0), grams.config());
    checks.push_back({"k=" + std::to_string(k) + ": product over the point is the classical product",
                      close(got, want), {{"product", to_json(got)}, {"classical", to_json(want)}}});
    bool vanish = true;
    for (int j = k - 4; j <= k + 4; ++j)
      if (j != k && !weight_product(f, g, j, grams).is_zero()) vanish = false;
    checks.push_back({"k=" + std::to_string(k) + ": weight-j product vanishes for j != k", vanish, json::object()});
    const auto rad = left_radical<Complex>(ring, m, grams);
    checks.push_back({"k=" + std::to_string(k) + ": product is nondegenerate", rad.nondegenerate, to_json(rad, false)});
  }
  return checks;
}

inline std::vector<Check> repro_sphere(int n, const QuadratureGramOracle& grams, std::mt19937_64& rng) {
  std::vector<Check> checks;
  auto ring = std::make_shared<const GradedRing>(presets::sphere(n));
  for (int m = -20; m >= -40; --m) {
    const TcfElement shape(ring, m);
    if (shape.total_dim() == 0) continue;
    const std::string tag = "m=" + std::to_string(m) + ": ";
    const auto f = random_element<Complex>(ring, m, rng), g = random_element<Complex>(ring, m, rng);
    auto basepoint = [](int ah) { return ah == 0; };
    const bool local = full_product(f, g, grams) == full_product(f.restricted(basepoint), g.restricted(basepoint), grams);
    checks.push_back({tag + "product depends only on the basepoint component", local, json::object()});
    const auto rad = left_radical<Complex>(ring, m, grams);
    bool ok = true;
    if (rad.block_dims.count(n)) ok = ok && rad.block_radical_dims.at(n) == rad.block_dims.at(n);
    if (rad.block_dims.count(0)) ok = ok && rad.block_radical_dims.at(0) == 0;
    checks.push_back({tag + "radical is exactly the degree-" + std::to_string(n) + " block", ok, to_json(rad, false)});
  }
  return checks;
}

inline std::vector<Check> repro_cp2(const QuadratureGramOracle& grams, std::mt19937_64& rng) {
  std::vector<Check> checks;
  auto ring = std::make_shared<const GradedRing>(presets::cp(2));
  for (int k = 12; k <= 20; ++k) {
    const int m = -2 * k;
    const std::string tag = "k=" + std::to_string(k) + ": ";
    const auto f = random_element<Complex>(ring, m, rng), g = random_element<Complex>(ring, m, rng);
    const auto v = full_product(f, g, grams);
    auto expected = [&](int ah) -> Complex {
      if (!f.has_component(ah)) return 0;
      return classical(f.weight(ah), f.component(ah).row(0), g.component(ah).row(0), grams.config());
    };
    const Complex c0 = v.by_degree.at(0).coords[0], c2 = v.by_degree.at(2).coords[0], c4 = v.by_degree.at(4).coords[0];
    const Complex e0 = expected(0), e4 = expected(2);
    const bool ok0 = f.has_component(0) ? close(c0, e0) : c0 == Complex(0);
    const bool ok4 = f.has_component(2) ? close(c4, e4) : c4 == Complex(0);
    checks.push_back({tag + "degree-0 value is <f_k, g_k>", ok0, {{"value", to_json(c0)}, {"classical", to_json(e0)}}});
    checks.push_back({tag + "degree-2 value vanishes", c2 == Complex(0), {{"value", to_json(c2)}}});
    checks.push_back({tag + "degree-4 value is <f_{k+1}, g_{k+1}> h^2", ok4, {{"value", to_json(c4)}, {"classical", to_json(e4)}}});
    const auto rad = left_radical<Complex>(ring, m, grams);
    bool ok = true;
    for (const auto& [ah, d] : rad.block_dims) ok = ok && rad.block_radical_dims.at(ah) == (ah == 4 ? d : 0);
    checks.push_back({tag + "radical is exactly the top-cell block", ok, to_json(rad, false)});
  }
  return checks;
}

inline std::vector<Check> repro_kahler_cp(int d, const QuadratureGramOracle& grams) {
  std::vector<Check> checks;
  auto ring = std::make_shared<const GradedRing>(presets::cp(d));
  const CohClass omega = ring->basis_class({2, 0});
  for (int m = -24; m >= -56; --m) {
    const auto rep = kahler_slice_check<Complex>(ring, omega, m, grams);
    checks.push_back({"m=" + std::to_string(m) + ": slice product nondegenerate with Lefschetz certificate",
                      rep.radical.nondegenerate && rep.certificate,
                      {{"radical", to_json(rep.radical, false)}, {"certificate", rep.certificate}}});
  }
  return checks;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Entry point

/// Runs one command. Returns 0 on success, 1 on a computation-level failure
/// (a JSON report with an "error" field is still printed), 2 on a usage error
/// (message on `err`, nothing on `out`).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological Petersson products on tcf-cohomology of finite CW complexes"};
  app.name("tcfp");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  struct {
    int weight = 12, prec = 20, index = 2, degree = -24, prime = 2, r = 0, max_ah = -1, weight_j = 0;
    bool even_only = false, no_refine = false;
    std::uint64_t seed = 20240601, synthetic = 0;
    std::string name, path, space, omega, f, g, recipe, write;
    QuadratureConfig q;
  } o;

  std::string command;
  std::function<json()> action;
  json echo;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* sub = parent->add_subcommand(name, help);
    return sub;
  };
  auto add_quadrature = [&](CLI::App* sub) {
    sub->add_option("--qprec", o.q.qprec, "q-expansion truncation")->capture_default_str();
    sub->add_option("--vmax", o.q.vmax, "height cutoff of the fundamental domain")->capture_default_str();
    sub->add_option("--nu", o.q.nu, "Gauss nodes in u")->capture_default_str();
    sub->add_option("--nv", o.q.nv, "Gauss nodes in v")->capture_default_str();
    sub->add_flag("--no-refine", o.no_refine, "skip the grid-doubling error estimate");
  };
  auto quadrature = [&] {
    QuadratureConfig c = o.q;
    c.refine = !o.no_refine;
    try {
      c.validate();
    } catch (const DomainError& e) {
      throw UsageError(std::string("quadrature flags: ") + e.what());
    }
    echo["quadrature"] = to_json(c);
    return c;
  };
  auto bind = [&](CLI::App* sub, std::string name, std::function<json()> fn) {
    sub->callback([&command, &action, name, fn] {
      command = name;
      action = fn;
    });
  };
  // Runs fn with the requested Gram oracle: quadrature, or an exact
  // synthetic one when --synthetic-gram SEED is given.
  auto with_grams = [&](auto&& fn) -> json {
    if (o.synthetic != 0) {
      echo["gram"] = {{"kind", "synthetic"}, {"seed", o.synthetic}};
      return fn(SyntheticGramOracle<Gaussian>(o.synthetic));
    }
    const auto c = quadrature();
    echo["gram"] = {{"kind", "quadrature"}};
    QuadratureGramOracle grams(c);
    json r = fn(grams);
    r["gram_error_estimate"] = fmt(grams.max_error_estimate());
    return r;
  };

  // cusp ---------------------------------------------------------------
  auto* cusp = app.add_subcommand("cusp", "spaces of level-1 cusp forms")->require_subcommand(1);
  {
    auto* s = leaf(cusp, "dim", "dimension of S_k");
    s->add_option("--weight", o.weight, "weight k")->required();
    bind(s, "cusp dim", [&] {
      echo["weight"] = o.weight;
      return json{{"weight", o.weight}, {"dim", dim_cusp(o.weight)}};
    });
  }
  {
    auto* s = leaf(cusp, "basis", "Miller basis of S_k as q-expansions");
    s->add_option("--weight", o.weight, "weight k")->required();
    s->add_option("--prec", o.prec, "number of coefficients a_0..a_prec")->capture_default_str();
    bind(s, "cusp basis", [&] {
      echo["weight"] = o.weight;
      echo["prec"] = o.prec;
      const auto space = cusp_basis(o.weight, o.prec);
      json basis = json::array();
      for (const auto& b : space.basis) basis.push_back(to_json(b.coeffs()));
      return json{{"weight", space.weight}, {"dim", space.dim}, {"prec", space.prec}, {"basis", basis}};
    });
  }

  // hecke --------------------------------------------------------------
  auto* hecke = app.add_subcommand("hecke", "Hecke operators")->require_subcommand(1);
  {
    auto* s = leaf(hecke, "matrix", "exact matrix of T_n on the Miller basis");
    s->add_option("--weight", o.weight, "weight k")->required();
    s->add_option("--index", o.index, "Hecke index n")->required()->check(CLI::PositiveNumber);
    bind(s, "hecke matrix", [&] {
      echo["weight"] = o.weight;
      echo["index"] = o.index;
      const auto t = hecke_matrix(o.weight, o.index);
      Rational trace = 0;
      for (std::size_t i = 0; i < t.entries.rows(); ++i) trace += t.entries(i, i);
      return json{{"weight", t.weight}, {"index", t.index}, {"dim", t.entries.rows()}, {"entries", to_json(t.entries)},
                  {"trace", to_json(trace)}};
    });
  }
  {
    auto* s = leaf(hecke, "eigen", "numerical Hecke eigenforms");
    s->add_option("--weight", o.weight, "weight k")->required();
    bind(s, "hecke eigen", [&] {
      echo["weight"] = o.weight;
      json forms = json::array();
      for (const auto& e : eigenforms(o.weight)) {
        json ev = json::object();
        for (const auto& [p, l] : e.eigenvalues) ev["T" + std::to_string(p)] = fmt(l);
        forms.push_back({{"coords", to_json(e.coords)}, {"eigenvalues", ev}, {"max_residual", fmt(e.max_residual)}});
      }
      return json{{"weight", o.weight}, {"eigenforms", forms}, {"residual_tolerance", fmt(kEigenResidualTolerance)}};
    });
  }

  // petersson ----------------------------------------------------------
  auto* pet = app.add_subcommand("petersson", "classical Petersson products")->require_subcommand(1);
  {
    auto* s = leaf(pet, "gram", "Gram matrix of the Miller basis");
    s->add_option("--weight", o.weight, "weight k")->required();
    add_quadrature(s);
    bind(s, "petersson gram", [&] {
      echo["weight"] = o.weight;
      const auto g = gram(o.weight, quadrature());
      const auto ev = hermitian_eigenvalues(g.matrix);
      return json{{"weight", g.weight},
                  {"matrix", to_json(g.matrix)},
                  {"error_estimate", fmt(g.error_estimate)},
                  {"eigenvalues", to_json(ev)},
                  {"positive_definite", !ev.empty() && ev.front() > 0}};
    });
  }
  {
    auto* s = leaf(pet, "selfadj", "relative failure of Hecke self-adjointness");
    s->add_option("--weight", o.weight, "weight k")->required();
    s->add_option("--index", o.index, "Hecke index n")->required()->check(CLI::PositiveNumber);
    add_quadrature(s);
    bind(s, "petersson selfadj", [&] {
      echo["weight"] = o.weight;
      echo["index"] = o.index;
      return json{{"weight", o.weight}, {"index", o.index},
                  {"residual", fmt(self_adjointness_residual(o.weight, o.index, quadrature()))}};
    });
  }

  // ring ---------------------------------------------------------------
  auto* ring = app.add_subcommand("ring", "cohomology rings")->require_subcommand(1);
  {
    auto* s = leaf(ring, "preset", "build a preset ring");
    s->add_option("name", o.name, "preset name or expression, e.g. cp, cp(2), product(cp(1),cp(1))")->required();
    s->add_option("--n", o.index, "dimension parameter when the name has none");
    s->add_option("--write", o.write, "also write the canonical ring file here");
    bind(s, "ring preset", [&, s] {
      std::string spec = o.name;
      if (s->get_option("--n")->count() > 0) spec += "(" + std::to_string(o.index) + ")";
      echo["spec"] = spec;
      const GradedRing r = resolve_space(spec, "name");
      r.validate();
      if (!o.write.empty()) {
        std::ofstream f(o.write);
        if (!f) throw DomainError("cannot write '" + o.write + "'");
        f << write_ring(r);
        echo["write"] = o.write;
      }
      return ring_json(r);
    });
  }
  {
    auto* s = leaf(ring, "load", "load and validate a ring file");
    s->add_option("path", o.path, "ring file")->required();
    bind(s, "ring load", [&] {
      echo["path"] = o.path;
      return ring_json(load_ring_file(o.path));
    });
  }
  {
    auto* s = leaf(ring, "lefschetz", "hard Lefschetz report for a degree-2 class");
    s->add_option("space", o.space, "preset or ring file")->required();
    s->add_option("--omega", o.omega, "class: label, deg:idx or c*ref + ...")->required();
    bind(s, "ring lefschetz", [&] {
      echo["space"] = o.space;
      echo["omega"] = o.omega;
      const GradedRing r = resolve_space(o.space, "space");
      return json{{"ring", r.name()}, {"lefschetz", to_json(hard_lefschetz_report(r, resolve_class(r, o.omega, "--omega")))}};
    });
  }

  // tpp ----------------------------------------------------------------
  auto* tpp = app.add_subcommand("tpp", "topological Petersson products")->require_subcommand(1);
  auto add_space = [&](CLI::App* s) {
    s->add_option("--space", o.space, "preset or ring file")->required();
    s->add_option("--degree", o.degree, "cohomological degree m (= -2k)")->required();
  };
  auto space_ptr = [&] {
    echo["space"] = o.space;
    echo["degree"] = o.degree;
    return std::make_shared<const GradedRing>(resolve_space(o.space, "--space"));
  };
  {
    auto* s = leaf(tpp, "dims", "dimensions of the associated graded");
    add_space(s);
    bind(s, "tpp dims", [&] {
      const auto r = space_ptr();
      json dims = json::array();
      int total = 0;
      for (const auto& [n, d] : component_dims(*r, o.degree)) {
        dims.push_back({{"ah_degree", n}, {"weight_twice", n - o.degree}, {"betti", r->betti(n)}, {"dim", d}});
        total += d;
      }
      return json{{"ring", r->name()}, {"components", dims}, {"total_dim", total}};
    });
  }
  {
    auto* s = leaf(tpp, "product", "full or weight-j product of two elements");
    add_space(s);
    s->add_option("--f", o.f, "element file")->required();
    s->add_option("--g", o.g, "element file")->required();
    auto* wopt = s->add_option("--weight", o.weight_j, "weight j for a single weight-j product");
    add_quadrature(s);
    s->add_option("--synthetic-gram", o.synthetic, "use an exact synthetic Gram with this nonzero seed");
    bind(s, "tpp product", [&, wopt] {
      const auto r = space_ptr();
      echo["f"] = o.f;
      echo["g"] = o.g;
      const auto f = load_element_file(r, o.degree, o.f), g = load_element_file(r, o.degree, o.g);
      auto compute = [&](const GramOracle<Complex>& grams) {
        if (wopt->count() > 0) {
          echo["weight"] = o.weight_j;
          const auto c = weight_product(f, g, o.weight_j, grams);
          return json{{"weight", o.weight_j}, {"class", {{"degree", c.degree}, {"coords", to_json(c.coords)}}}};
        }
        return json{{"value", to_json(full_product(f, g, grams))}};
      };
      if (o.synthetic != 0) {
        echo["gram"] = {{"kind", "synthetic"}, {"seed", o.synthetic}};
        return compute(SyntheticGramOracle<Complex>(o.synthetic));
      }
      echo["gram"] = {{"kind", "quadrature"}};
      QuadratureGramOracle grams(quadrature());
      json res = compute(grams);
      res["gram_error_estimate"] = fmt(grams.max_error_estimate());
      return res;
    });
  }
  {
    auto* s = leaf(tpp, "radical", "left radical of the product on a slice");
    add_space(s);
    s->add_option("--max-ah", o.max_ah, "largest AH degree in the slice");
    s->add_flag("--even-only", o.even_only, "only even AH degrees");
    add_quadrature(s);
    s->add_option("--synthetic-gram", o.synthetic, "use an exact synthetic Gram with this nonzero seed");
    bind(s, "tpp radical", [&] {
      const auto r = space_ptr();
      echo["max_ah"] = o.max_ah;
      echo["even_only"] = o.even_only;
      const int max_ah = o.max_ah, even = o.even_only;
      auto filter = [max_ah, even](int n) { return (max_ah < 0 || n <= max_ah) && (!even || n % 2 == 0); };
      return with_grams([&](const auto& grams) {
        using S = typename std::decay_t<decltype(grams)>::scalar_type;
        return json{{"ring", r->name()}, {"radical", to_json(left_radical<S>(r, o.degree, filter, grams))}};
      });
    });
  }
  {
    auto* s = leaf(tpp, "witness", "degeneracy witness supported on the top cell");
    add_space(s);
    add_quadrature(s);
    s->add_option("--synthetic-gram", o.synthetic, "use an exact synthetic Gram with this nonzero seed");
    bind(s, "tpp witness", [&] {
      const auto r = space_ptr();
      return with_grams([&](const auto& grams) {
        using S = typename std::decay_t<decltype(grams)>::scalar_type;
        const auto w = degeneracy_witness<S>(r, o.degree, grams);
        return json{{"ring", r->name()}, {"witness", w ? to_json(*w) : json(nullptr)}, {"found", w.has_value()}};
      });
    });
  }
  {
    auto* s = leaf(tpp, "kahler", "radical on the Kähler slice with its Lefschetz certificate");
    add_space(s);
    s->add_option("--omega", o.omega, "Kähler class")->required();
    add_quadrature(s);
    s->add_option("--synthetic-gram", o.synthetic, "use an exact synthetic Gram with this nonzero seed");
    bind(s, "tpp kahler", [&] {
      const auto r = space_ptr();
      echo["omega"] = o.omega;
      const CohClass omega = resolve_class(*r, o.omega, "--omega");
      return with_grams([&](const auto& grams) {
        using S = typename std::decay_t<decltype(grams)>::scalar_type;
        const auto rep = kahler_slice_check<S>(r, omega, o.degree, grams);
        return json{{"ring", r->name()},
                    {"complex_dim", rep.complex_dim},
                    {"radical", to_json(rep.radical)},
                    {"lefschetz", to_json(rep.lefschetz)},
                    {"certificate", rep.certificate}};
      });
    });
  }
  {
    auto* s = leaf(tpp, "hecke-check", "exact residual of the Adams-Hecke relation");
    add_space(s);
    s->add_option("--prime", o.prime, "prime p")->required();
    s->add_option("--r", o.r, "exponent r")->required()->check(CLI::NonNegativeNumber);
    bind(s, "tpp hecke-check", [&] {
      const auto r = space_ptr();
      echo["prime"] = o.prime;
      echo["r"] = o.r;
      const Rational res = adams_relation_residual(*r, o.degree, o.prime, o.r);
      return json{{"ring", r->name()}, {"residual", to_json(res)}, {"holds", res == 0}};
    });
  }

  // repro --------------------------------------------------------------
  {
    auto* s = app.add_subcommand("repro", "run a worked example end to end");
    s->add_option("recipe", o.recipe, "pt | sphere-N | cp2 | kahler-cpD")
        ->required()
        ->check(CLI::Validator(
            [](std::string& v) {
              static const std::regex re("pt|cp2|sphere-[1-9][0-9]?|kahler-cp[1-9]");
              return std::regex_match(v, re) ? std::string() : "unknown recipe '" + v + "'";
            },
            "RECIPE"));
    s->add_option("--seed", o.seed, "seed for the random elements")->capture_default_str();
    add_quadrature(s);
    bind(s, "repro", [&] {
      echo["recipe"] = o.recipe;
      echo["seed"] = o.seed;
      QuadratureGramOracle grams(quadrature());
      std::mt19937_64 rng(o.seed);
      std::vector<Check> checks;
      const std::string& rc = o.recipe;
      if (rc == "pt") checks = detail::repro_point(grams, rng);
      else if (rc == "cp2") checks = detail::repro_cp2(grams, rng);
      else if (rc.rfind("sphere-", 0) == 0) checks = detail::repro_sphere(std::stoi(rc.substr(7)), grams, rng);
      else checks = detail::repro_kahler_cp(std::stoi(rc.substr(9)), grams);
      const bool pass = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
      return json{{"recipe", rc}, {"checks", checks_json(checks)}, {"pass", pass},
                  {"gram_error_estimate", fmt(grams.max_error_estimate())}};
    });
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  json report = {{"command", command}, {"provenance", {{"tool", "tcfp"}, {"version", kVersion}}}};
  report["provenance"]["tolerances"] = {{"eigen_residual", fmt(kEigenResidualTolerance)},
                                        {"radical_singular_value", fmt(kRadicalTolerance)},
                                        {"repro_relative", fmt(detail::kReproTolerance)}};
  int status = 0;
  try {
    json results = action();
    if (results.contains("pass") && results["pass"] == false) status = 1;
    report["results"] = std::move(results);
  } catch (const UsageError& e) {
    err << "tcfp: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    report["error"] = error_json(e);
    status = 1;
  }
  report["args"] = echo;
  out << report.dump(2) << "\n";
  return status;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace tcfp::cli
