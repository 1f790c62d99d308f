#include "sellab/cli.hpp"

#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "sellab/chebyshev.hpp"
#include "sellab/experiments.hpp"
#include "sellab/json_io.hpp"
#include "sellab/l1.hpp"
#include "sellab/mean_point.hpp"
#include "sellab/selection.hpp"

namespace sellab {

namespace {

struct NetArgs {
  std::string input;
  std::string space;
  std::string out;
};

void add_net_args(CLI::App* sub, NetArgs& a) {
  sub->add_option("--input", a.input, "Net JSON file")->required();
  sub->add_option("--space", a.space, "Space descriptor overriding the file (e.g. lp:2:4)");
  sub->add_option("--out", a.out, "Write the result JSON here instead of stdout");
}

LoadedNet load(const NetArgs& a) {
  Json j = read_json_file(a.input);
  if (!a.space.empty()) {
    if (!j.is_object()) throw InputError(a.input + ": net file must hold a JSON object");
    j["space"] = space_to_json(parse_space_arg(a.space));
  }
  try {
    return net_from_json(j);
  } catch (const InputError& e) {
    throw InputError(a.input + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path + ": cannot open for writing");
  f << text;
  if (!f) throw InputError(path + ": write failed");
}

Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const Point& p : pts) a.push_back(point_to_json(p));
  return a;
}

int cmd_mp(const NetArgs& a, double tol, int cap, bool trace, std::ostream& out) {
  const LoadedNet net = load(a);
  Json j;
  if (net.masses) {
    const WeightedMpResult w = mean_point_weighted(net.space, {net.points, *net.masses}, tol, cap);
    j["point"] = point_to_json(w.point);
    j["denominator"] = w.denominator;
    j["counts"] = w.counts;
    j["mass_error"] = w.mass_error;
  } else {
    MpOptions o;
    o.record_rounds = trace;
    const MpResult r = mean_point_net(net.space, net.points, tol, o);
    j["point"] = point_to_json(r.point);
    j["rounds"] = r.trace.ratios.size();
    Json ratios = Json::array();
    for (double v : r.trace.ratios) ratios.push_back(std::isnan(v) ? Json(nullptr) : Json(v));
    j["ratios"] = ratios;
    j["violation"] = r.trace.violation;
    j["midpoints"] = r.trace.midpoints;
    if (trace) {
      Json rounds = Json::array();
      for (const Net& n : r.trace.rounds) rounds.push_back(points_json(n));
      j["trace"] = rounds;
    }
  }
  emit(a.out, j.dump(2) + "\n", out);
  return 0;
}

int cmd_cheb(const NetArgs& a, double tol, std::ostream& out) {
  const LoadedNet net = load(a);
  Json j;
  if (net.space.kind() == SpaceKind::l1) {
    validate_net(net.space, net.points);
    if (net.points.size() == 2) {
      const CenterResult c = cheb_l1_pair(net.points[0], net.points[1]);
      j["center"] = point_to_json(c.center);
      j["radius"] = c.radius;
      j["corner_points"] = points_json(c.corner_points);
    } else {
      const L1CenterSet c = l1_center_set(net.points);
      j["center"] = point_to_json(c.representative);
      j["radius"] = c.radius;
      j["corner_points"] = points_json(c.vertices);
    }
  } else {
    const CenterResult c = cheb_center(net.space, net.points, tol);
    j["center"] = point_to_json(c.center);
    j["radius"] = c.radius;
    j["radius_lower"] = c.radius_lower;
    j["support"] = c.support;
  }
  emit(a.out, j.dump(2) + "\n", out);
  return 0;
}

int cmd_select(const NetArgs& a, const std::string& method, const std::string& config,
               std::ostream& out) {
  const LoadedNet net = load(a);
  SelectionConfig cfg;
  if (!config.empty()) {
    const Json j = read_json_file(config);
    try {
      cfg = selection_config_from_json(j);
    } catch (const InputError& e) {
      throw InputError(config + ": " + e.what());
    }
  }
  const SelectionResult r = method == "cheb" ? select_cheb(net.space, net.points, cfg)
                                             : select_mp(net.space, net.points, cfg);
  Json j;
  j["point"] = point_to_json(r.point);
  j["branch"] = r.branch;
  j["rho_or_lambda"] = r.rho_or_lambda;
  emit(a.out, j.dump(2) + "\n", out);
  return 0;
}

struct ExperimentArgs {
  std::string name, config, space, out, format;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::vector<double> eps;
  std::vector<std::size_t> n;
  std::optional<double> theta, p, tol;
  bool serial = false;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec;
  if (!a.config.empty()) {
    const Json j = read_json_file(a.config);
    try {
      spec = experiment_spec_from_json(j);
    } catch (const InputError& e) {
      throw InputError(a.config + ": " + e.what());
    }
  }
  if (!a.name.empty()) spec.name = a.name;
  if (spec.name.empty()) throw InputError("experiment: give --name or a config with \"name\"");
  if (!a.space.empty()) spec.spaces = {space_arg(parse_space_arg(a.space))};
  if (a.seed) spec.seed = *a.seed;
  if (a.trials) spec.trials = *a.trials;
  if (!a.eps.empty()) spec.eps = a.eps;
  if (!a.n.empty()) spec.n = a.n;
  if (a.theta) spec.theta = a.theta;
  if (a.p) spec.p = a.p;
  if (a.tol) spec.tol = *a.tol;
  if (!a.out.empty()) spec.out = a.out;
  if (!a.format.empty()) spec.format = a.format;
  spec.validate();

  const ExperimentReport r = run_experiment(spec, a.serial ? Exec::serial : Exec::parallel);
  const std::string text = spec.format == "json" ? to_json(r).dump(2) + "\n" : to_csv(r);
  emit(spec.out, text, out);
  std::ostream& status = spec.out.empty() ? err : out;
  status << (r.verdict.pass ? "PASS " : "FAIL ") << spec.name << " [" << r.verdict.claim
         << "]: " << r.verdict.detail << "\n";
  return r.verdict.pass ? 0 : 1;
}

int cmd_validate(std::uint64_t seed, double scale, std::ostream& out) {
  const std::vector<CheckResult> checks = run_validation(seed, scale);
  std::size_t passed = 0;
  for (const CheckResult& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    if (c.pass) ++passed;
  }
  out << passed << "/" << checks.size() << " checks passed\n";
  return passed == checks.size() ? 0 : 1;
}

int cmd_list(std::ostream& out) {
  for (const ExperimentInfo& e : builtin_experiments()) {
    out << e.name << "\n  claim: " << e.claim << "\n  columns:";
    for (const std::string& c : e.columns) out << " " << c;
    out << "\n  " << e.description << "\n";
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selection maps on geodesic metric spaces: solvers and experiments", "sellab"};
  app.require_subcommand(1);

  NetArgs mp_args, cheb_args, sel_args;
  double mp_tol = 1e-9, cheb_tol = 1e-10;
  int cap = 8;
  bool trace = false;
  CLI::App* mp = app.add_subcommand("mp", "Mean point of a net (weighted when masses are given)");
  add_net_args(mp, mp_args);
  mp->add_option("--tol", mp_tol, "Stopping diameter")->check(CLI::PositiveNumber);
  mp->add_option("--cap", cap, "Denominator cap for weighted nets")->check(CLI::Range(1, 12));
  mp->add_flag("--trace", trace, "Include every round in the output");

  CLI::App* cheb = app.add_subcommand("cheb", "Chebyshev center and radius of a net");
  add_net_args(cheb, cheb_args);
  cheb->add_option("--tol", cheb_tol, "Radius tolerance")->check(CLI::PositiveNumber);

  std::string method = "mp", sel_config;
  CLI::App* sel = app.add_subcommand("select", "Inductive selection of a net");
  add_net_args(sel, sel_args);
  sel->add_option("--method", method, "mp or cheb")->check(CLI::IsMember({"mp", "cheb"}));
  sel->add_option("--config", sel_config, "SelectionConfig JSON (holder_constants, tolerances)");

  ExperimentArgs ex;
  CLI::App* exp = app.add_subcommand("experiment", "Run a named builtin experiment");
  exp->add_option("--name", ex.name, "Experiment name (see list)");
  exp->add_option("--config", ex.config, "ExperimentSpec JSON file");
  exp->add_option("--space", ex.space, "Space descriptor");
  exp->add_option("--seed", ex.seed, "Base seed");
  exp->add_option("--trials", ex.trials, "Trials per block")->check(CLI::PositiveNumber);
  exp->add_option("--eps", ex.eps, "Eps grid, strictly decreasing")->delimiter(',');
  exp->add_option("--theta", ex.theta, "Fixed triple angle for the Holder families");
  exp->add_option("--n", ex.n, "Net sizes or dimensions")->delimiter(',');
  exp->add_option("--p", ex.p, "Exponent of the lp space");
  exp->add_option("--tol", ex.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  exp->add_option("--out", ex.out, "Report file (stdout when absent)");
  exp->add_option("--format", ex.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  exp->add_flag("--serial", ex.serial, "Run trials on the calling thread");

  std::uint64_t vseed = 20240611;
  double vscale = 1.0;
  CLI::App* val = app.add_subcommand("validate", "Run the invariant suite");
  val->add_option("--seed", vseed, "Base seed");
  val->add_option("--scale", vscale, "Sample-count multiplier")->check(CLI::PositiveNumber);

  CLI::App* list = app.add_subcommand("list", "List builtin experiments");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mp->parsed()) return cmd_mp(mp_args, mp_tol, cap, trace, out);
    if (cheb->parsed()) return cmd_cheb(cheb_args, cheb_tol, out);
    if (sel->parsed()) return cmd_select(sel_args, method, sel_config, out);
    if (exp->parsed()) return cmd_experiment(ex, out, err);
    if (val->parsed()) return cmd_validate(vseed, vscale, out);
    if (list->parsed()) return cmd_list(out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedOperation& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what();
    if (std::string(e.what()).find("bracket") == std::string::npos)
      err << " (bracket [" << format_double(e.lower()) << ", " << format_double(e.upper()) << "])";
    err << "\n";
    return 1;
  }
  return 2;
}

}  // namespace sellab
