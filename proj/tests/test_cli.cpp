#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kissing/cli.hpp"
#include "kissing/expansion_io.hpp"
#include "kissing/proofcheck.hpp"

using namespace kissing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  std::vector<std::string> artifacts;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o;
  std::ostringstream e;
  const auto oc = run_cli(args, o, e);
  return {oc.exit_code, o.str(), e.str(), oc.artifacts};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "kissing3_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("verify certifies and is deterministic") {
  const auto a = scratch("cert_a.json");
  const auto b = scratch("cert_b.json");
  const auto r = run({"verify", "--out", a.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "ratio 123000000/9465869 = 12.99405263"));
  CHECK(contains(r.out, "kissing(3) ≤ 12 — CERTIFIED"));
  CHECK(r.artifacts == std::vector<std::string>{a.string()});
  CHECK(run({"verify", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto text = slurp(a);
  CHECK(contains(text, "\"all_pass\": true"));
  std::size_t passes = 0;
  for (std::size_t at = text.find("\"Pass\""); at != std::string::npos; at = text.find("\"Pass\"", at + 1)) ++passes;
  CHECK(passes == 6);
}

TEST_CASE("verify fault injection and usage errors") {
  const auto p = scratch("cert_fault.json");
  const auto thr = run({"verify", "--threshold", "122/100", "--out", p.string()});
  CHECK(thr.code == 1);
  CHECK(contains(thr.out, "claim B: Fail"));
  CHECK(fs::exists(p));  // failed certificates are still written

  const auto neg = run({"verify", "--negate-coeff", "5", "--out", p.string()});
  CHECK(neg.code == 1);
  CHECK(contains(neg.out, "admissible: no c_5<0"));

  CHECK(run({"verify", "--out", "/nonexistent-dir/cert.json"}).code == 2);
  CHECK(run({"verify", "--threshold", "abc", "--out", p.string()}).code == 2);
  CHECK(run({"verify", "--function", "/nonexistent-dir/f.txt", "--out", p.string()}).code == 2);
  CHECK(run({"verify", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify reads an expansion file") {
  const auto f = scratch("published.expansion");
  write_expansion_file(f.string(), proof::paper_f());
  const auto c = scratch("cert_file.json");
  const auto r = run({"verify", "--function", f.string(), "--out", c.string()});
  CHECK(r.code == 0);
  CHECK(slurp(c) == slurp(scratch("cert_a.json")));
  // a certificate is itself an accepted function source
  CHECK(run({"verify", "--function", c.string(), "--out", scratch("cert_from_cert.json").string()}).code == 0);
}

TEST_CASE("eval") {
  auto r = run({"eval", "--t", "1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"99999853/100000000", "0.999998530000"});
  r = run({"eval", "--t", "-1"});
  CHECK(lines(r.out).at(0) == "22999929/100000000");
  r = run({"eval", "--t", "1/2"});
  CHECK(lines(r.out).at(0).front() == '-');
  CHECK(run({"eval", "--t", "2"}).code == 2);
  CHECK(run({"eval", "--t", "-1001/1000"}).code == 2);
  CHECK(run({"eval"}).code == 2);
}

TEST_CASE("plot") {
  auto r = run({"plot", "--samples", "3", "--from", "-1", "--to", "0"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "t,f");
  CHECK(l[1] == "-1.000000000000,0.229999290000");
  CHECK(l[2].rfind("-0.500000000000,", 0) == 0);
  CHECK(l[3] == "0.000000000000,-0.000087560000");

  r = run({"plot"});
  const auto all = lines(r.out);
  CHECK(all.size() == 501);
  CHECK(all[1].rfind("-1.000000000000,", 0) == 0);
  CHECK(all[500].rfind("0.500000000000,", 0) == 0);

  const auto svg = scratch("f.svg");
  r = run({"plot", "--format", "svg", "--out", svg.string()});
  CHECK(r.code == 0);
  const auto text = slurp(svg);
  CHECK(text.rfind("<?xml", 0) == 0);
  CHECK(contains(text, "<svg"));
  CHECK(contains(text, "</svg>\n"));
  CHECK(contains(text, "<polyline"));

  CHECK(run({"plot", "--from", "1", "--to", "0"}).code == 2);
  CHECK(run({"plot", "--samples", "1"}).code == 2);
  CHECK(run({"plot", "--format", "png"}).code == 2);
}

TEST_CASE("bound") {
  auto r = run({"bound", "--dim", "3", "--cos-theta", "-1/2", "--max-degree", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "certified bound 3.0000000"));
  // with cos 1/2 no degree-1 polynomial is admissible
  CHECK(run({"bound", "--dim", "3", "--max-degree", "1"}).code == 1);
  CHECK(run({"bound", "--dim", "1"}).code == 2);
  CHECK(run({"bound", "--cos-theta", "x"}).code == 2);

  const auto dump = scratch("lp.txt");
  r = run({"bound", "--dim", "8", "--max-degree", "6", "--grid", "256", "--dump", dump.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "certified bound 240.000000"));
  CHECK(slurp(dump).rfind("vars 6\n", 0) == 0);
}

TEST_CASE("search composes with verify") {
  const auto e = scratch("search.expansion");
  auto r = run({"search", "--grid", "128", "--out", e.string()});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "floor 12"));
  const auto expansion = read_expansion_file(e.string());
  CHECK(expansion.coeff(0) >= Rational(946, 10000));
  CHECK(run({"verify", "--function", e.string(), "--out", scratch("cert_search.json").string()}).code == 0);

  const auto none = scratch("search0.expansion");
  CHECK(run({"search", "--support", "0", "--out", none.string()}).code == 1);
  CHECK_FALSE(fs::exists(none));
  CHECK(run({"search", "--support", "0,x"}).code == 2);
}

TEST_CASE("geom") {
  auto r = run({"geom", "--check", "icosahedron"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "vertices 12"));
  r = run({"geom", "--check", "cap-lemma", "--trials", "20000", "--seed", "7", "--workers", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "counterexamples 0"));
  CHECK(r.out == run({"geom", "--check", "cap-lemma", "--trials", "20000", "--seed", "7", "--workers", "4"}).out);
  r = run({"geom", "--check", "stress", "--n-points", "12", "--trials", "40", "--workers", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == run({"geom", "--check", "stress", "--n-points", "12", "--trials", "40"}).out);
  r = run({"geom", "--check", "prop1", "--trials", "60", "--workers", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == run({"geom", "--check", "prop1", "--trials", "60"}).out);
  CHECK(run({"geom", "--check", "nope"}).code == 2);
  CHECK(run({"geom"}).code == 2);
  CHECK(run({"geom", "--check", "stress", "--n-points", "13"}).code == 2);
}
