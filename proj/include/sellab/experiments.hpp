#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sellab/json_io.hpp"
#include "sellab/parallel.hpp"

namespace sellab {

/// Parameters of one experiment run. Empty or zero fields take the
/// experiment's defaults; run_experiment echoes the resolved values.
struct ExperimentSpec {
  std::string name;
  std::vector<std::string> spaces;  // descriptors such as "lp:2:4"
  std::vector<std::size_t> n;
  std::vector<double> eps;          // strictly decreasing
  std::optional<double> theta;
  int trials = 0;
  std::uint64_t seed = 20240611;
  double tol = 0.0;
  std::optional<double> p;
  std::string out;
  std::string format = "csv";

  void validate() const;
};

/// Config-file form: {"name", "space" (string or list), "n" (int or list),
/// "eps" (number or list), "theta", "trials", "seed", "tol", "p", "out", "format"}.
ExperimentSpec experiment_spec_from_json(const Json& j);
Json experiment_spec_to_json(const ExperimentSpec& spec);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Verdict {
  std::string claim;  // the claim the check tests, in words
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
  Verdict verdict;
};

struct ExperimentInfo {
  std::string name;
  std::string claim;
  std::string description;
  std::vector<std::string> columns;
};

/// The sixteen named experiments.
const std::vector<ExperimentInfo>& builtin_experiments();
const ExperimentInfo& find_experiment(const std::string& name);

/// Runs trials with the given execution policy; the report does not depend on it.
ExperimentReport run_experiment(const ExperimentSpec& spec, Exec exec = Exec::parallel);

/// Header line plus one line per row, doubles in shortest round-trip form.
std::string to_csv(const ExperimentReport& report);
/// {"experiment", "claim", "spec", "columns", "rows": [{column: value}], "summary",
///  "verdict": {"claim", "pass", "detail"}}
Json to_json(const ExperimentReport& report);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Property suite over all modules: metric axioms, geodesic parameterization,
/// midpoint convexity, hull distance bounds, mean-point invariances,
/// Chebyshev optimality, l1 corner sets and selection membership.
/// `scale` multiplies the default sample counts.
std::vector<CheckResult> run_validation(std::uint64_t seed, double scale = 1.0);

}  // namespace sellab
