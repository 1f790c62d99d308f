// Acceptance harness: one PASS/FAIL line per criterion.
//
//   acceptance                 all criteria
//   acceptance --criterion N   criterion N only

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "sellab/chebyshev.hpp"
#include "sellab/experiments.hpp"
#include "sellab/json_io.hpp"
#include "sellab/l1.hpp"
#include "sellab/mean_point.hpp"
#include "sellab/parallel.hpp"
#include "sellab/random.hpp"

using namespace sellab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << (ok ? "" : "[failed] ") << what;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) { return format_double(v); }

double summary(const ExperimentReport& r, const std::string& key) {
  for (const auto& [k, v] : r.summary)
    if (k == key) {
      if (const double* d = std::get_if<double>(&v)) return *d;
      if (const std::int64_t* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    }
  throw std::runtime_error(r.spec.name + ": summary has no numeric key " + key);
}

double cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return *d;
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw std::runtime_error("non-numeric cell");
}

std::size_t column(const ExperimentReport& r, const std::string& name) {
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    if (r.columns[i] == name) return i;
  throw std::runtime_error(r.spec.name + ": no column " + name);
}

ExperimentReport run(const std::string& name, const std::function<void(ExperimentSpec&)>& tweak = {}) {
  ExperimentSpec s;
  s.name = name;
  if (tweak) tweak(s);
  return run_experiment(s);
}

double euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// 1. Every mean-point round at most halves pairwise distances.
void contraction(Outcome& o) {
  const auto t0 = Clock::now();
  const ExperimentReport r = run("mp_contraction");
  const double secs = seconds_since(t0);
  o.require(r.rows.size() >= 1000, std::to_string(r.rows.size()) + " nets");
  o.require(summary(r, "max_ratio") <= 0.5 + 1e-9, "max round ratio " + num(summary(r, "max_ratio")) + " <= 0.5 + 1e-9");
  o.require(summary(r, "violations") == 0, "violations " + num(summary(r, "violations")));
  o.require(secs < 60.0, "runtime " + num(std::round(secs * 10) / 10) + " s < 60 s");
}

// 2. Euclidean mean point against the arithmetic mean.
void euclidean_oracle(Outcome& o) {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  const double tol = 1e-7;
  std::vector<double> err(1000);
  run_trials(err.size(), Exec::parallel, [&](std::size_t t) {
    Rng rng(trial_seed(7001, t));
    const Net net = random_net(e, 2 + t % 5, rng);
    err[t] = euclid(mean_point(e, net, tol), oracle::centroid(net));
  });
  double worst = 0.0;
  for (double v : err) worst = std::max(worst, v);
  o.require(worst <= tol, "1000 nets, n = 2..6: max distance to the centroid " + num(worst) + " <= 1e-7");
}

// 3. Local 1-Lipschitz property below half the minimum gap.
void local_lipschitz(Outcome& o) {
  const ExperimentReport r = run("mp_local_lipschitz");
  o.require(summary(r, "counted") >= 1000, num(summary(r, "counted")) + " counted trials");
  o.require(summary(r, "max_ratio") <= 1.0 + 1e-3, "max ratio " + num(summary(r, "max_ratio")) + " <= 1 + 1e-3");
}

// 4. Mean point as minimizer of the sum of p-th powers in lp.
void lp_minimizer(Outcome& o) {
  const ExperimentReport r = run("mp_lp_minimizer");
  const double tol = r.spec.tol;
  const std::size_t cs = column(r, "space"), cm = column(r, "f_mp"), cb = column(r, "f_best_probe");
  std::map<std::string, std::pair<int, int>> per;  // failing, total
  for (const auto& row : r.rows) {
    auto& [fail, total] = per[std::get<std::string>(row[cs])];
    ++total;
    if (cell(row[cm]) > cell(row[cb]) + 10 * tol) ++fail;
  }
  for (const auto& [space, ft] : per)
    o.require(ft.first == 0, space + ": " + std::to_string(ft.first) + "/" +
                                 std::to_string(ft.second) + " nets beaten by a probe beyond 10 tol");
  // Independent check of the lp(2,4) outcome with the gradient-descent oracle.
  const GeodesicSpace l4 = GeodesicSpace::lp(2, 4);
  double gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(trial_seed(7004, t));
    const Net net = random_net(l4, 3, rng);
    const Point mp = mean_point(l4, net, 1e-9);
    gap = std::max(gap, oracle::power_sum(net, mp, 4) -
                            oracle::power_sum(net, oracle::power_sum_minimizer(net, 4), 4));
  }
  o.detail << "; oracle: in lp(2,4) f(mp) - min f reaches " << num(gap)
           << " (the mean point equals the centroid in every normed space)";
}

// 5. Perturbation and weighted-mass bounds.
void perturbation(Outcome& o) {
  const ExperimentReport a = run("mp_perturbation");
  o.require(a.rows.size() >= 1000 && summary(a, "failures") == 0,
            std::to_string(a.rows.size()) + " instances, " + num(summary(a, "failures")) +
                " above max-distance * k/(n+k) + slack");
  const ExperimentReport b = run("mp_weighted_bound");
  o.require(summary(b, "failures") == 0,
            "weighted-mass bound failures " + num(summary(b, "failures")) + " (slack 3 tol), max shift/bound " +
                num(summary(b, "max_shift_over_bound")));
}

// 6. Chebyshev centers against a miniball oracle; supports reproduce.
void cheb_oracle(Outcome& o) {
  const double tol = 1e-9;
  std::vector<double> ce(1000), re(1000);
  run_trials(ce.size(), Exec::parallel, [&](std::size_t t) {
    Rng rng(trial_seed(7006, t));
    const GeodesicSpace g = GeodesicSpace::euclidean(1 + t % 3);
    const Net net = random_net(g, 1 + (t / 3) % 7, rng);
    const CenterResult c = cheb_center(g, net, tol);
    const oracle::Ball b = oracle::welzl(net);
    ce[t] = euclid(c.center, b.center);
    re[t] = std::abs(c.radius - b.radius);
  });
  double wc = 0.0, wr = 0.0;
  for (std::size_t t = 0; t < ce.size(); ++t) wc = std::max(wc, ce[t]), wr = std::max(wr, re[t]);
  o.require(wc <= 5 * tol && wr <= 5 * tol,
            "Welzl: 1000 nets, n <= 7, dim <= 3, center error " + num(wc) + ", radius error " + num(wr) + " <= 5 tol");
  const ExperimentReport r = run("cheb_oracle");
  o.require(summary(r, "max_center_error") <= 5 * tol && summary(r, "max_radius_error") <= 5 * tol,
            "cheb_oracle experiment center/radius error " + num(summary(r, "max_center_error")) + "/" +
                num(summary(r, "max_radius_error")));
  o.require(summary(r, "max_support_center_error") <= 10 * tol &&
                summary(r, "max_support_radius_error") <= tol,
            "support center/radius error " + num(summary(r, "max_support_center_error")) + "/" +
                num(summary(r, "max_support_radius_error")));
  const ExperimentReport s = run("cheb_support");
  o.require(summary(s, "not_reproducing") == 0,
            "cheb_support: " + num(summary(s, "not_reproducing")) + " supports failing to reproduce");
}

void holder_check(Outcome& o, const ExperimentReport& r, double lo, double hi) {
  const double e = summary(r, "exponent"), r2 = summary(r, "r2");
  const std::string space = r.spec.spaces.empty() ? "" : r.spec.spaces.front();
  o.require(e >= lo && e <= hi, space + " slope " + num(e) + " in [" + num(lo) + ", " + num(hi) + "]");
  o.require(r2 >= 0.98, space + " r2 " + num(r2) + " >= 0.98");
}

// 7. Exponent 1/2 in Euclidean space and the hyperbolic plane.
void holder_half(Outcome& o) {
  const auto t0 = Clock::now();
  holder_check(o, run("holder_euclidean"), 0.40, 0.60);
  holder_check(o, run("holder_hyperbolic"), 0.40, 0.60);
  const double secs = seconds_since(t0);
  o.require(secs < 120.0, "runtime " + num(std::round(secs * 10) / 10) + " s < 120 s");
}

// 8. Exponent 1/p in lp.
void holder_lp(Outcome& o) {
  holder_check(o, run("holder_lp", [](ExperimentSpec& s) { s.p = 4.0; }), 0.17, 0.33);
  holder_check(o, run("holder_lp", [](ExperimentSpec& s) { s.p = 6.0; }), 0.10, 0.24);
}

// 9. l1 lower and upper bounds.
void l1_bounds(Outcome& o) {
  const double eps = 0.01;
  const ExperimentReport lo = run("l1_lower", [&](ExperimentSpec& s) {
    s.n = {2, 3};
    s.eps = {eps};
  });
  const std::size_t cn = column(lo, "n"), cr = column(lo, "reading"), cd = column(lo, "displacement");
  for (const auto& row : lo.rows) {
    if (std::get<std::string>(row[cr]) != "corrected") continue;
    const double n = cell(row[cn]), d = cell(row[cd]);
    o.require(d >= (n - 1) * eps - 1e-9,
              "lower n=" + num(n) + ": displacement " + num(d) + " >= " + num((n - 1) * eps) + " - 1e-9");
  }
  for (std::size_t n : {2U, 3U}) {
    const L1UpperResult u = l1_upper_bound_check(n, 1000, 0.05, trial_seed(7009, n));
    o.require(u.max_ratio <= 4.0 * n && u.lp_mismatches == 0,
              "upper n=" + std::to_string(n) + ": max ratio " + num(u.max_ratio) + " <= " +
                  num(4.0 * n) + ", LP mismatches " + std::to_string(u.lp_mismatches));
  }
  // Pair corner sets against brute-force hyperplane intersection.
  double worst = 0.0;
  Rng rng(7019);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 2 + t % 2;
    Point x(d), y(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = unit(rng), y[i] = unit(rng);
    const CenterResult c = cheb_l1_pair(x, y);
    worst = std::max(worst, oracle::l1_hausdorff(c.corner_points, oracle::l1_pair_vertices(x, y, c.radius)));
  }
  o.require(worst <= 1e-9, "corner sets vs hyperplane oracle: Hausdorff " + num(worst));
}

// 10. Selection Lipschitz constants.
void selection(Outcome& o) {
  const std::map<std::size_t, double> mp_bound = {{2, 1.0}, {3, 3.0}, {4, 5.0}};
  const std::map<std::size_t, double> cheb_bound = {{2, 1.0}, {3, 3.5}, {4, 9.75}};
  for (const auto& [name, bounds] : {std::pair{"selection_mp_constant", mp_bound},
                                     std::pair{"selection_cheb_constant", cheb_bound}}) {
    const ExperimentReport r = run(name);
    o.require(r.rows.size() >= 3000, std::string(name) + ": " + std::to_string(r.rows.size()) + " trials");
    for (const auto& [n, b] : bounds) {
      const std::string k = "n" + std::to_string(n) + "_";
      const double m = summary(r, k + "max_ratio");
      std::string what = std::string(name) + " n=" + std::to_string(n) + " max " + num(m) +
                         " <= " + num(b) + " + 0.2";
      if (m > b + 0.2) what += " (reproducer seed " + num(summary(r, k + "worst_seed")) + ")";
      o.require(m <= b + 0.2, what);
    }
  }
}

// 11. Convexity modulus exponents.
void modulus(Outcome& o) {
  const ExperimentReport r = run("modulus_fit");
  for (const auto& [key, target, band] :
       {std::tuple{"euclidean:2_exponent", 2.0, 0.1}, std::tuple{"hyperbolic2_exponent", 2.0, 0.1},
        std::tuple{"lp:2:4_exponent", 4.0, 0.4}, std::tuple{"lp:2:6_exponent", 6.0, 0.6}}) {
    const double e = summary(r, key);
    o.require(std::abs(e - target) <= band, std::string(key) + " " + num(e) + " within " + num(band) +
                                                " of " + num(target));
  }
}

// 12. Whole catalog: deterministic and within budget on one thread.
void catalog(Outcome& o) {
  std::vector<std::string> serial, parallel;
  const auto t0 = Clock::now();
  for (const ExperimentInfo& e : builtin_experiments()) {
    ExperimentSpec s;
    s.name = e.name;
    serial.push_back(to_csv(run_experiment(s, Exec::serial)));
  }
  const double secs = seconds_since(t0);
  for (const ExperimentInfo& e : builtin_experiments()) {
    ExperimentSpec s;
    s.name = e.name;
    parallel.push_back(to_csv(run_experiment(s, Exec::parallel)));
  }
  int differ = 0;
  for (std::size_t i = 0; i < serial.size(); ++i)
    if (serial[i] != parallel[i]) {
      ++differ;
      o.detail << (o.detail.tellp() > 0 ? "; " : "") << builtin_experiments()[i].name << " differs";
    }
  o.require(serial.size() == 16, std::to_string(serial.size()) + " experiments");
  o.require(differ == 0, std::to_string(differ) + " reports differ between serial and parallel runs");
  o.require(secs < 600.0, "serial catalog " + num(std::round(secs * 10) / 10) + " s < 600 s");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"mean-point contraction", contraction},
      {"Euclidean mean point equals the centroid", euclidean_oracle},
      {"local 1-Lipschitz mean point", local_lipschitz},
      {"lp mean point minimizes the p-th power sum", lp_minimizer},
      {"perturbation and weighted-mass bounds", perturbation},
      {"Chebyshev center oracle and supports", cheb_oracle},
      {"Holder exponent 1/2", holder_half},
      {"lp exponent 1/p", holder_lp},
      {"l1 lower and upper bounds", l1_bounds},
      {"selection Lipschitz constants", selection},
      {"convexity modulus exponents", modulus},
      {"catalog determinism and runtime", catalog},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
