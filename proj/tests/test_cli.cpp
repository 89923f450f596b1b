#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "tcfp/cli.hpp"

using namespace tcfp;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(TCFP_DATA_DIR) + "/" + name; }

struct Outcome {
  int status;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(std::move(args), out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CuspDim) {
  const auto o = run({"cusp", "dim", "--weight", "12"});
  ASSERT_EQ(o.status, 0) << o.err;
  const auto r = o.report();
  EXPECT_EQ(r["results"]["dim"], 1);
  EXPECT_EQ(r["command"], "cusp dim");
  EXPECT_EQ(r["args"]["weight"], 12);
  EXPECT_TRUE(r["provenance"].contains("version"));
}

TEST(Cli, UsageErrorsExitTwoWithoutReport) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"cusp", "dim", "--weight", "12", "--bogus"},
           {"cusp", "dim"},
           {"cusp", "dim", "--weight", "twelve"},
           {"frobnicate"},
           {},
           {"repro", "cp7"},
           {"tpp", "dims", "--space", "klein(2)", "--degree", "-24"},
           {"ring", "lefschetz", "cp(2)", "--omega", "q"},
           {"petersson", "gram", "--weight", "12", "--nu", "4"}}) {
    const auto o = run(args);
    EXPECT_EQ(o.status, 2) << (args.empty() ? "" : args[0]);
    EXPECT_TRUE(o.out.empty());
    EXPECT_FALSE(o.err.empty());
  }
  const auto o = run({"cusp", "dim", "--weight", "12", "--bogus"});
  EXPECT_NE(o.err.find("--bogus"), std::string::npos);
  const auto s = run({"tpp", "dims", "--space", "klein(2)", "--degree", "-24"});
  EXPECT_NE(s.err.find("--space"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const auto o = run({"--help"});
  EXPECT_EQ(o.status, 0);
  EXPECT_NE(o.out.find("repro"), std::string::npos);
}

TEST(Cli, ComputationErrorsExitOneWithStructuredError) {
  const auto o = run({"ring", "load", data("invalid/anticommuting_h.ring")});
  ASSERT_EQ(o.status, 1);
  const auto r = o.report();
  EXPECT_EQ(r["error"]["kind"], "axiom");
  EXPECT_EQ(r["error"]["axiom"], "commutativity");
  EXPECT_FALSE(r.contains("results"));

  const auto g = run({"petersson", "gram", "--weight", "10"});
  EXPECT_EQ(g.status, 1);
  EXPECT_EQ(g.report()["error"]["kind"], "domain");

  const auto p = run({"cusp", "basis", "--weight", "24", "--prec", "2"});
  EXPECT_EQ(p.status, 1);
  EXPECT_EQ(p.report()["error"]["kind"], "precision");
}

TEST(Cli, CuspBasisAndHecke) {
  const auto b = run({"cusp", "basis", "--weight", "12", "--prec", "4"}).report();
  EXPECT_EQ(b["results"]["basis"][0], json({"0", "1", "-24", "252", "-1472"}));
  const auto h = run({"hecke", "matrix", "--weight", "24", "--index", "2"}).report();
  EXPECT_EQ(h["results"]["trace"], "1080");
  const auto e = run({"hecke", "eigen", "--weight", "12"}).report();
  EXPECT_EQ(e["results"]["eigenforms"].size(), 1u);
}

TEST(Cli, PeterssonCommands) {
  const auto g = run({"petersson", "gram", "--weight", "12"});
  ASSERT_EQ(g.status, 0);
  const auto r = g.report();
  EXPECT_TRUE(r["results"]["positive_definite"]);
  EXPECT_EQ(r["args"]["quadrature"]["nu"], 64);
  const double v = std::stod(r["results"]["matrix"][0][0]["re"].get<std::string>());
  EXPECT_NEAR(v, 1.0353620568e-6, 1e-15);
  const auto s = run({"petersson", "selfadj", "--weight", "24", "--index", "3", "--nu", "32", "--nv", "32"});
  ASSERT_EQ(s.status, 0);
  EXPECT_LT(std::stod(s.report()["results"]["residual"].get<std::string>()), 1e-6);
}

TEST(Cli, RingCommands) {
  const auto p = run({"ring", "preset", "cp", "--n", "2"}).report();
  EXPECT_EQ(p["results"]["ring_file"], write_ring(presets::cp(2)));
  const auto l = run({"ring", "load", data("cp2.ring")}).report();
  EXPECT_EQ(l["results"]["ring_file"], p["results"]["ring_file"]);

  const auto path = (std::filesystem::temp_directory_path() / "tcfp_cli_test.ring").string();
  ASSERT_EQ(run({"ring", "preset", "product(torus(2),cp(1))", "--write", path}).status, 0);
  EXPECT_EQ(load_ring_file(path), presets::parse("product(torus(2),cp(1))"));
  std::filesystem::remove(path);

  const auto lf = run({"ring", "lefschetz", data("fake_cp2.ring"), "--omega", "h"}).report();
  EXPECT_FALSE(lf["results"]["lefschetz"]["hard_lefschetz"]);
  const auto lc = run({"ring", "lefschetz", "cp(3)", "--omega", "2:0"}).report();
  EXPECT_TRUE(lc["results"]["lefschetz"]["hard_lefschetz"]);
}

TEST(Cli, TppCommands) {
  const auto d = run({"tpp", "dims", "--space", "cp(2)", "--degree", "-32"}).report();
  EXPECT_EQ(d["results"]["total_dim"], 2);

  const auto pr = run({"tpp", "product", "--space", data("cp2.ring"), "--degree", "-22", "--f", data("cp2_f.elem"), "--g",
                       data("cp2_g.elem")});
  ASSERT_EQ(pr.status, 0) << pr.out << pr.err;
  const auto val = pr.report()["results"]["value"];
  EXPECT_EQ(val.size(), 3u);
  EXPECT_EQ(val[2]["degree"], 4);
  EXPECT_NE(val[2]["coords"][0]["re"], cli::fmt(0));
  EXPECT_EQ(val[0]["coords"][0]["re"], cli::fmt(0));

  const auto wj = run({"tpp", "product", "--space", "cp(2)", "--degree", "-22", "--f", data("cp2_f.elem"), "--g",
                       data("cp2_g.elem"), "--weight", "11"});
  EXPECT_EQ(wj.report()["results"]["class"]["degree"], 0);

  const auto rad = run({"tpp", "radical", "--space", "cp(2)", "--degree", "-28"}).report();
  EXPECT_EQ(rad["results"]["radical"]["radical_dim"], 1);
  const auto rad_even = run({"tpp", "radical", "--space", "cp(2)", "--degree", "-28", "--max-ah", "2"}).report();
  EXPECT_EQ(rad_even["results"]["radical"]["slice_dim"], 0);

  const auto syn = run({"tpp", "radical", "--space", "torus(2)", "--degree", "-24", "--synthetic-gram", "5"}).report();
  EXPECT_EQ(syn["args"]["gram"]["kind"], "synthetic");

  const auto w = run({"tpp", "witness", "--space", "sphere(3)", "--degree", "-21"}).report();
  EXPECT_TRUE(w["results"]["found"]);
  const auto wn = run({"tpp", "witness", "--space", "point", "--degree", "-24"}).report();
  EXPECT_FALSE(wn["results"]["found"]);

  const auto k = run({"tpp", "kahler", "--space", "cp(3)", "--degree", "-24", "--omega", "h"}).report();
  EXPECT_TRUE(k["results"]["radical"]["nondegenerate"]);
  EXPECT_TRUE(k["results"]["certificate"]);

  const auto hc = run({"tpp", "hecke-check", "--space", "cp(2)", "--degree", "-24", "--prime", "2", "--r", "0"}).report();
  EXPECT_EQ(hc["results"]["residual"], "0");
}

TEST(Cli, ReproRecipesPassAndAreDeterministic) {
  for (const char* recipe : {"pt", "cp2", "sphere-2", "sphere-3", "kahler-cp2"}) {
    const auto a = run({"repro", recipe});
    ASSERT_EQ(a.status, 0) << recipe << "\n" << a.out;
    EXPECT_TRUE(a.report()["results"]["pass"]) << recipe;
    const auto b = run({"repro", recipe});
    EXPECT_EQ(a.out, b.out) << recipe;
  }
}

TEST(Cli, ReproCP2Structure) {
  const auto r = run({"repro", "cp2"}).report();
  const auto& checks = r["results"]["checks"];
  EXPECT_EQ(checks.size(), 9u * 4u);
  for (const auto& c : checks) EXPECT_TRUE(c["pass"]) << c["name"];
}
