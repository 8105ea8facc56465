#include "kissing/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kissing/errors.hpp"
#include "kissing/expansion_io.hpp"
#include "kissing/lpbound.hpp"
#include "kissing/proofcheck.hpp"
#include "kissing/spheregeom.hpp"

namespace kissing {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& s, const std::string& flag) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw UsageError(flag + ": not a rational number: " + s);
  }
}

// Opens the output before any work so a bad path is a usage error.
std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  return f;
}

GegenbauerExpansion load_function(const std::string& path) {
  if (path.empty()) return proof::paper_f();
  try {
    return read_expansion_file(path);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string out = "certificate.json";
  int precision_bits = 50;
  std::string threshold;
  std::vector<int> negate;
  std::string function;
};

CommandOutcome cmd_verify(const VerifyArgs& a, std::ostream& out) {
  CommandOutcome oc;
  std::ofstream file = open_out(a.out);
  if (a.precision_bits < 10 || a.precision_bits > 200) throw UsageError("--precision-bits must be in [10, 200]");
  const auto f = load_function(a.function);
  if (f.dim() != 3) throw UsageError("--function: expansion must have dim 3");

  proof::FaultInjection fault;
  if (!a.threshold.empty()) fault.threshold = parse_rational(a.threshold, "--threshold");
  fault.negate_coefficients = a.negate;
  const auto constants = proof::inject(proof::make_constants(f), fault);
  proof::CheckOptions opts;
  opts.eps = Rational::pow2(-a.precision_bits);
  const auto cert = proof::run_full_verification(constants, opts);

  file << proof::certificate_json(cert);
  file.close();
  if (!file) throw UsageError("cannot write " + a.out);
  oc.artifacts.push_back(a.out);

  out << "admissible: " << (cert.admissible() ? "yes" : "no");
  for (int k : cert.negative_coefficients) out << " c_" << k << "<0";
  out << "\n";
  for (const auto& r : cert.claims) {
    out << "claim " << to_string(r.id) << ": " << to_string(r.verdict);
    if (r.enclosure) out << "  max in [" << r.enclosure->lo().to_decimal(12) << ", " << r.enclosure->hi().to_decimal(12) << "]";
    if (const auto s = r.slack()) out << "  slack " << s->to_decimal(4);
    if (r.bnb_nodes) out << "  nodes " << *r.bnb_nodes;
    out << "\n";
  }
  for (const auto& e : cert.identities) out << "identity " << e.name << ": " << (e.agrees ? "ok" : "MISMATCH") << "\n";
  if (cert.bound) {
    out << "ratio " << cert.bound->ratio.str() << " = " << cert.bound->ratio.to_fixed(8) << "\n";
  }
  out << "certificate written to " << a.out << "\n";

  if (cert.all_pass() && cert.conclusion) {
    out << "kissing(3) ≤ " << *cert.conclusion << " — CERTIFIED\n";
    oc.exit_code = kExitOk;
  } else if (!cert.admissible() || !cert.any_inconclusive()) {
    out << "NOT CERTIFIED\n";
    oc.exit_code = kExitFail;
  } else {
    bool failed = false;
    for (const auto& r : cert.claims) failed = failed || r.verdict == proof::Verdict::Fail;
    for (const auto& e : cert.identities) failed = failed || !e.agrees;
    out << (failed ? "NOT CERTIFIED\n" : "INCONCLUSIVE\n");
    oc.exit_code = failed ? kExitFail : kExitInconclusive;
  }
  return oc;
}

// ------------------------------------------------------------------- bound

struct BoundArgs {
  int dim = 3;
  std::string cos_theta = "1/2";
  int max_degree = 9;
  int grid = 512;
  int refine_rounds = 30;
  std::string dump;
};

CommandOutcome cmd_bound(const BoundArgs& a, std::ostream& out) {
  CommandOutcome oc;
  const Rational s = parse_rational(a.cos_theta, "--cos-theta");
  std::unique_ptr<ClassicalLP> model;
  try {
    model = std::make_unique<ClassicalLP>(a.dim, s, a.max_degree, a.grid);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto rep = solve_and_refine(*model, a.refine_rounds);
  if (!a.dump.empty()) {
    auto f = open_out(a.dump);
    f << dump_problem(model->problem());
    oc.artifacts.push_back(a.dump);
  }
  out << "dim " << a.dim << " cos_theta " << s.str() << " degree " << a.max_degree << " grid " << a.grid << "\n";
  out << "lp: " << to_string(rep.lp_status) << " refinement rounds " << rep.rounds << " cuts " << rep.cuts_added << "\n";
  if (rep.lp_status == LPStatus::Infeasible) {
    out << "no admissible polynomial of this degree: LP infeasible\n";
    oc.exit_code = kExitFail;
    return oc;
  }
  if (!rep.certified) {
    out << "refinement failed: " << rep.detail << "\n";
    oc.exit_code = kExitInconclusive;
    return oc;
  }
  out << "certificate:";
  for (const auto& [k, c] : rep.f->coeffs()) out << " c_" << k << "=" << c.to_decimal(10);
  out << "\n";
  out << "certified bound " << rep.bound->str() << "\n";
  out << "certified bound " << rep.bound->to_fixed(12) << "\n";
  return oc;
}

// ------------------------------------------------------------------ search

struct SearchArgs {
  std::string support = "0,1,2,3,4,5,9";
  std::string threshold = "123/100";
  int grid = 512;
  int refine_rounds = 30;
  std::string out = "search.expansion";
};

std::vector<int> parse_support(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size() || k < 0) throw std::invalid_argument(item);
      v.push_back(k);
    } catch (const std::exception&) {
      throw UsageError("--support: bad index '" + item + "'");
    }
  }
  return v;
}

CommandOutcome cmd_search(const SearchArgs& a, std::ostream& out) {
  CommandOutcome oc;
  const auto support = parse_support(a.support);
  const Rational thr = parse_rational(a.threshold, "--threshold");
  std::ofstream file = open_out(a.out);
  ExtendedGrids grids;
  grids.per_family = a.grid;
  std::unique_ptr<ExtendedLP> model;
  try {
    model = std::make_unique<ExtendedLP>(support, thr, grids);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto rep = solve_and_refine(*model, a.refine_rounds);
  if (!rep.certified) {
    // nothing to write; drop the placeholder opened for the writability check
    file.close();
    std::filesystem::remove(a.out);
  }
  out << "support " << a.support << " threshold " << thr.str() << " grid " << a.grid << "\n";
  out << "lp: " << to_string(rep.lp_status) << " refinement rounds " << rep.rounds << " cuts " << rep.cuts_added << "\n";
  if (rep.lp_status != LPStatus::Optimal) {
    out << "infeasible: no expansion on this support meets every constraint family\n";
    oc.exit_code = kExitFail;
    return oc;
  }
  if (!rep.certified) {
    out << "refinement failed: " << rep.detail << "\n";
    oc.exit_code = kExitInconclusive;
    return oc;
  }
  file << write_expansion(*rep.f);
  file.close();
  oc.artifacts.push_back(a.out);
  const Rational c0 = rep.f->coeff(0);
  out << "c_0 " << c0.str() << " = " << c0.to_fixed(10) << "\n";
  out << "implied bound " << rep.bound->to_fixed(8) << " floor " << rep.bound->floor().get_str() << "\n";
  out << "expansion written to " << a.out << "\n";
  return oc;
}

// -------------------------------------------------------------------- eval

CommandOutcome cmd_eval(const std::string& t_text, const std::string& function, std::ostream& out) {
  const Rational t = parse_rational(t_text, "--t");
  if (t < Rational(-1) || t > Rational(1)) throw UsageError("--t must lie in [-1, 1]");
  const Polynomial p = expansion_to_poly(load_function(function));
  const Rational v = p.eval(t);
  out << v.str() << "\n" << v.to_fixed(12) << "\n";
  return {};
}

// -------------------------------------------------------------------- plot

struct PlotArgs {
  std::string from = "-1";
  std::string to = "1/2";
  int samples = 500;
  std::string format = "csv";
  std::string out;
  std::string function;
};

std::string svg_chart(const std::vector<std::pair<double, double>>& pts) {
  double ymin = pts.front().second;
  double ymax = ymin;
  for (const auto& [x, y] : pts) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (ymax == ymin) ymax = ymin + 1;
  const double x0 = pts.front().first;
  const double x1 = pts.back().first;
  const double w = 640;
  const double h = 400;
  const double pad = 40;
  auto sx = [&](double x) { return pad + (x - x0) / (x1 - x0) * (w - 2 * pad); };
  auto sy = [&](double y) { return h - pad - (y - ymin) / (ymax - ymin) * (h - 2 * pad); };
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
    << " " << h << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  if (ymin <= 0 && ymax >= 0)
    s << "<line x1=\"" << pad << "\" y1=\"" << sy(0) << "\" x2=\"" << w - pad << "\" y2=\"" << sy(0)
      << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
  s << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) s << (i ? " " : "") << sx(pts[i].first) << "," << sy(pts[i].second);
  s << "\"/>\n";
  s.precision(4);
  s << "<text x=\"" << pad << "\" y=\"" << h - 10 << "\" font-size=\"12\">t = " << x0 << "</text>\n";
  s << "<text x=\"" << w - pad << "\" y=\"" << h - 10 << "\" font-size=\"12\" text-anchor=\"end\">t = " << x1
    << "</text>\n";
  s << "<text x=\"5\" y=\"" << pad - 10 << "\" font-size=\"12\">f max " << ymax << ", min " << ymin << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

CommandOutcome cmd_plot(const PlotArgs& a, std::ostream& out) {
  CommandOutcome oc;
  const Rational lo = parse_rational(a.from, "--from");
  const Rational hi = parse_rational(a.to, "--to");
  if (!(lo < hi)) throw UsageError("plot: need --from < --to");
  if (a.samples < 2) throw UsageError("plot: need --samples >= 2");
  const Polynomial p = expansion_to_poly(load_function(a.function));
  std::ostringstream body;
  std::vector<std::pair<double, double>> pts;
  if (a.format == "csv") body << "t,f\n";
  const Rational step = (hi - lo) / Rational(a.samples - 1);
  for (int i = 0; i < a.samples; ++i) {
    const Rational t = lo + step * Rational(i);
    const Rational v = p.eval(t);
    if (a.format == "csv") body << t.to_fixed(12) << "," << v.to_fixed(12) << "\n";
    pts.emplace_back(t.to_double(), v.to_double());
  }
  const std::string text = a.format == "csv" ? body.str() : svg_chart(pts);
  if (a.out.empty()) {
    out << text;
  } else {
    auto f = open_out(a.out);
    f << text;
    oc.artifacts.push_back(a.out);
  }
  return oc;
}

// -------------------------------------------------------------------- geom

struct GeomArgs {
  std::string check;
  std::size_t trials = 100000;
  std::uint64_t seed = 7;
  int n_points = 12;
  unsigned workers = 1;
  std::string threshold = "123/100";
  std::string function;
};

CommandOutcome cmd_geom(const GeomArgs& a, std::ostream& out) {
  CommandOutcome oc;
  const Rational thr = parse_rational(a.threshold, "--threshold");
  bool pass = false;
  if (a.check == "cap-lemma") {
    const auto r = verify_cap_lemma(a.trials, a.seed, a.workers);
    out << r.text();
    pass = r.pass();
  } else if (a.check == "icosahedron") {
    const auto r = icosahedron_report(load_function(a.function));
    out << r.text();
    pass = r.pass(thr);
    out << "icosahedron: " << (pass ? "PASS" : "FAIL") << "\n";
  } else if (a.check == "stress") {
    if (a.n_points < 1 || a.n_points > 12) throw UsageError("--n-points must be in [1, 12]");
    if (a.trials < 1) throw UsageError("--trials must be >= 1");
    const auto r = config_stress(a.n_points, a.trials, a.seed, load_function(a.function), a.workers);
    out << r.text();
    pass = r.pass(thr.to_double() + 1e-9);
    out << "stress: " << (pass ? "PASS" : "FAIL") << "\n";
  } else if (a.check == "prop1") {
    const auto r = positivity_check(a.trials, a.seed, 12, 12, a.workers);
    out << r.text();
    pass = r.pass();
    out << "prop1: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  oc.exit_code = pass ? kExitOk : kExitFail;
  return oc;
}

}  // namespace

CommandOutcome run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of the Delsarte-type certificate for the kissing number in dimension 3",
               "kissing3"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check all claims and write a certificate");
  verify->add_option("--out", va.out, "certificate JSON path")->capture_default_str();
  verify->add_option("--precision-bits", va.precision_bits, "radical evaluation precision 2^-bits")->capture_default_str();
  verify->add_option("--threshold", va.threshold, "override the per-point threshold (fault injection)");
  verify->add_option("--negate-coeff", va.negate, "negate c_k (fault injection); repeatable");
  verify->add_option("--function", va.function, "expansion file (default: published f)");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "certified classical Delsarte LP bound");
  bound->add_option("--dim", ba.dim)->capture_default_str();
  bound->add_option("--cos-theta", ba.cos_theta)->capture_default_str();
  bound->add_option("--max-degree", ba.max_degree)->capture_default_str();
  bound->add_option("--grid", ba.grid)->capture_default_str();
  bound->add_option("--refine-rounds", ba.refine_rounds)->capture_default_str();
  bound->add_option("--dump", ba.dump, "write the final LP problem");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "maximize c_0 under the claim constraints");
  search->add_option("--support", sa.support)->capture_default_str();
  search->add_option("--threshold", sa.threshold)->capture_default_str();
  search->add_option("--grid", sa.grid, "nodes per constraint family")->capture_default_str();
  search->add_option("--refine-rounds", sa.refine_rounds)->capture_default_str();
  search->add_option("--out", sa.out)->capture_default_str();

  std::string et;
  std::string ef;
  auto* eval = app.add_subcommand("eval", "exact value of f(t)");
  eval->add_option("--t", et)->required();
  eval->add_option("--function", ef);

  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "sample f on a grid");
  plot->add_option("--from", pa.from)->capture_default_str();
  plot->add_option("--to", pa.to)->capture_default_str();
  plot->add_option("--samples", pa.samples)->capture_default_str();
  plot->add_option("--format", pa.format)->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
  plot->add_option("--out", pa.out, "output file (default stdout)");
  plot->add_option("--function", pa.function);

  GeomArgs ga;
  auto* geom = app.add_subcommand("geom", "geometry checks");
  geom->add_option("--check", ga.check)->required()->check(CLI::IsMember({"cap-lemma", "stress", "icosahedron", "prop1"}));
  geom->add_option("--trials", ga.trials)->capture_default_str();
  geom->add_option("--seed", ga.seed)->capture_default_str();
  geom->add_option("--n-points", ga.n_points)->capture_default_str();
  geom->add_option("--workers", ga.workers)->capture_default_str();
  geom->add_option("--threshold", ga.threshold)->capture_default_str();
  geom->add_option("--function", ga.function);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {};
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return {};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return {kExitUsage, {}};
  }

  try {
    if (*verify) return cmd_verify(va, out);
    if (*bound) return cmd_bound(ba, out);
    if (*search) return cmd_search(sa, out);
    if (*eval) return cmd_eval(et, ef, out);
    if (*plot) return cmd_plot(pa, out);
    if (*geom) return cmd_geom(ga, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return {kExitUsage, {}};
  } catch (const RefinementError& e) {
    err << "error: " << e.what() << "\n";
    return {kExitInconclusive, {}};
  }
  return {kExitUsage, {}};
}

}  // namespace kissing
