#include "sellab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "sellab/chebyshev.hpp"
#include "sellab/l1.hpp"
#include "sellab/mean_point.hpp"
#include "sellab/modulus.hpp"
#include "sellab/random.hpp"
#include "sellab/regression.hpp"
#include "sellab/selection.hpp"

namespace sellab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Cell D(double v) { return v; }
Cell I(long long v) { return static_cast<std::int64_t>(v); }
Cell S(std::string v) { return v; }

Rng stream(std::uint64_t seed, std::uint64_t block, std::uint64_t trial) {
  return Rng(trial_seed(trial_seed(seed, block), trial));
}

// ---------------------------------------------------------------- resolution

std::vector<GeodesicSpace> spaces_or(ExperimentSpec& s, std::vector<std::string> def) {
  if (s.spaces.empty()) s.spaces = std::move(def);
  std::vector<GeodesicSpace> out;
  for (const std::string& d : s.spaces) out.push_back(parse_space_arg(d));
  return out;
}

std::vector<std::size_t> n_or(ExperimentSpec& s, std::vector<std::size_t> def, std::size_t lo,
                              std::size_t hi) {
  if (s.n.empty()) s.n = std::move(def);
  for (std::size_t n : s.n)
    if (n < lo || n > hi) {
      std::ostringstream os;
      os << s.name << ": n = " << n << " outside [" << lo << ", " << hi << "]";
      throw InputError(os.str());
    }
  return s.n;
}

int trials_or(ExperimentSpec& s, int def, int lo = 1) {
  if (s.trials == 0) s.trials = def;
  if (s.trials < lo) {
    std::ostringstream os;
    os << s.name << ": trials must be at least " << lo;
    throw InputError(os.str());
  }
  return s.trials;
}

double tol_or(ExperimentSpec& s, double def) {
  if (s.tol == 0.0) s.tol = def;
  return s.tol;
}

std::vector<double> eps_or(ExperimentSpec& s, std::vector<double> def) {
  if (s.eps.empty()) s.eps = std::move(def);
  return s.eps;
}

void require_linear(const ExperimentSpec& s, const GeodesicSpace& g) {
  if (!g.is_linear()) throw InputError(s.name + ": needs a linear space kind, got " + g.name());
}

double max_ignoring_nan(const std::vector<double>& v) {
  double m = kNaN;
  for (double x : v)
    if (!std::isnan(x) && !(x <= m)) m = x;
  return m;
}

Point origin_of(const GeodesicSpace& space) {
  if (space.kind() == SpaceKind::hyperbolic2) return GeodesicSpace::lift_spatial(0.0, 0.0);
  return Point(space.dim());
}

/// Unit pair (x, y) along the first axis, used by the regularity families.
std::pair<Point, Point> base_pair(const GeodesicSpace& space) {
  if (space.kind() == SpaceKind::hyperbolic2)
    return {GeodesicSpace::lift_spatial(-0.5, 0.0), GeodesicSpace::lift_spatial(0.5, 0.0)};
  Point x(space.dim()), y(space.dim());
  x[0] = -1.0;
  y[0] = 1.0;
  return {x, y};
}

std::string fmt(double v) { return format_double(v); }

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ------------------------------------------------------------- mean point

void mp_contraction(ExperimentReport& r, Exec exec) {
  ExperimentSpec& s = r.spec;
  const auto spaces = spaces_or(s, {"euclidean:2", "lp:2:4", "hyperbolic2"});
  const auto ns = n_or(s, {3, 4, 5}, 2, kMaxNet);
  const int trials = trials_or(s, 1000);
  const double tol = tol_or(s, 1e-7);
  r.columns = {"space", "trial", "n", "rounds", "max_ratio", "centroid_error"};
  double worst = 0.0, centroid = 0.0;
  long long violations = 0;
  std::string first_violation;
  for (std::size_t b = 0; b < spaces.size(); ++b) {
    const GeodesicSpace& g = spaces[b];
    struct Row {
      std::size_t n = 0;
      std::size_t rounds = 0;
      double ratio = kNaN, centroid = kNaN;
      bool violation = false;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));
    run_trials(rows.size(), exec, [&](std::size_t t) {
      Rng rng = stream(s.seed, b, t);
      Row& row = rows[t];
      row.n = ns[t % ns.size()];
      const Net net = random_net(g, row.n, rng);
      MpOptions o;
      o.record_rounds = false;
      const MpResult res = mean_point_net(g, net, tol, o);
      row.rounds = res.trace.ratios.size();
      row.ratio = max_ignoring_nan(res.trace.ratios);
      row.violation = res.trace.violation;
      if (g.is_linear()) {
        Point c(g.dim());
        for (const Point& p : net) c = c + (1.0 / static_cast<double>(net.size())) * p;
        row.centroid = g.distance(c, res.point);
      }
    });
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const Row& row = rows[t];
      r.rows.push_back({S(space_arg(g)), I(static_cast<long long>(t)),
                        I(static_cast<long long>(row.n)), I(static_cast<long long>(row.rounds)),
                        D(row.ratio), D(row.centroid)});
      if (!std::isnan(row.ratio)) worst = std::max(worst, row.ratio);
      if (!std::isnan(row.centroid)) centroid = std::max(centroid, row.centroid);
      if (row.violation) {
        if (violations == 0)
          first_violation = space_arg(g) + " trial " + std::to_string(t) + " seed " +
                            std::to_string(trial_seed(trial_seed(s.seed, b), t));
        ++violations;
      }
    }
  }
  r.summary = {{"max_ratio", D(worst)}, {"violations", I(violations)},
               {"max_centroid_error", D(centroid)}};
  r.verdict.pass = violations == 0;
  r.verdict.detail = "max round ratio " + fmt(worst) + " against 0.5 + 1e-9";
  if (violations > 0) r.verdict.detail += "; first violation: " + first_violation;
}

void mp_local_lipschitz(ExperimentReport& r, Exec exec) {
  ExperimentSpec& s = r.spec;
  const auto spaces = spaces_or(s, {"euclidean:2", "lp:2:4", "hyperbolic2"});
  const auto ns = n_or(s, {3, 4}, 1, kMaxNet);
  const int trials = trials_or(s, 1000, 100);
  const double tol = tol_or(s, 1e-10);
  SelectionConfig cfg;
  cfg.mp_tol = tol;
  r.columns = {"space", "n", "trial", "ratio"};
  double worst = 0.0, p99 = 0.0;
  long long counted = 0, excluded = 0;
  std::string where;
  std::uint64_t block = 0;
  for (const GeodesicSpace& g : spaces)
    for (std::size_t n : ns) {
      const LipschitzReport rep =
          empirical_lipschitz(g, Selector::mean_point, n, trials, 0.25,
                              trial_seed(s.seed, block++), PerturbMode::within_half_gap, cfg, exec);
      for (std::size_t t = 0; t < rep.ratios.size(); ++t)
        r.rows.push_back({S(space_arg(g)), I(static_cast<long long>(n)),
                          I(static_cast<long long>(t)), D(rep.ratios[t])});
      if (rep.counted > 0 && rep.max_ratio >= worst) {
        worst = rep.max_ratio;
        where = space_arg(g) + " n=" + std::to_string(n) + " seed " + std::to_string(rep.worst_seed);
      }
      p99 = std::max(p99, rep.p99);
      counted += static_cast<long long>(rep.counted);
      excluded += static_cast<long long>(rep.excluded);
    }
  r.summary = {{"max_ratio", D(worst)}, {"max_p99", D(p99)}, {"counted", I(counted)},
               {"excluded", I(excluded)}};
  r.verdict.pass = counted > 0 && worst <= 1.0 + 1e-3;
  r.verdict.detail = "max ratio " + fmt(worst) + " against 1 + 1e-3 (worst at " + where + ")";
}

double power_sum(const Net& net, const Point& x, double p) {
  double f = 0.0;
  for (const Point& a : net)
    for (std::size_t k = 0; k < x.size(); ++k) f += std::pow(std::abs(x[k] - a[k]), p);
  return f;
}

/// Minimizer of sum_j ||x - a_j||_p^p, which separates over coordinates.
Point power_minimizer(const Net& net, double p) {
  const std::size_t dim = net[0].size();
  Point x(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    double lo = net[0][k], hi = net[0][k];
    for (const Point& a : net) lo = std::min(lo, a[k]), hi = std::max(hi, a[k]);
    if (hi == lo) {
      x[k] = lo;
      continue;
    }
    auto g = [&](double v) {
      double f = 0.0;
      for (const Point& a : net) f += std::pow(std::abs(v - a[k]), p);
      return f;
    };
    x[k] = boost::math::tools::brent_find_minima(g, lo, hi, 52).first;
  }
  return x;
}

void mp_lp_minimizer(ExperimentReport& r, Exec exec) {
  ExperimentSpec& s = r.spec;
  std::vector<std::string> def = {"euclidean:2", "lp:2:4"};
  if (s.p && s.spaces.empty()) def = {*s.p == 2.0 ? "euclidean:2" : "lp:2:" + fmt(*s.p)};
  const auto spaces = spaces_or(s, def);
  const auto ns = n_or(s, {3, 4}, 2, kMaxNet);
  const int trials = trials_or(s, 200);
  const double tol = tol_or(s, 1e-9);
  constexpr int probes = 100;
  r.columns = {"space", "net", "n", "f_mp", "f_best_probe", "f_min", "probe_failures"};
  long long failing_nets = 0, total = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  std::vector<std::string> per_space;
  for (std::size_t b = 0; b < spaces.size(); ++b) {
    const GeodesicSpace& g = spaces[b];
    require_linear(s, g);
    const double p = g.kind() == SpaceKind::euclidean ? 2.0 : g.p();
    struct Row {
      std::size_t n = 0;
      double f_mp = 0, f_probe = 0, f_min = 0;
      int failures = 0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));
    run_trials(rows.size(), exec, [&](std::size_t t) {
      Rng rng = stream(s.seed, b, t);
      Row& row = rows[t];
      row.n = ns[t % ns.size()];
      const Net net = random_net(g, row.n, rng);
      const Point mp = mean_point(g, net, tol);
      row.f_mp = power_sum(net, mp, p);
      row.f_min = power_sum(net, power_minimizer(net, p), p);
      row.f_probe = std::numeric_limits<double>::infinity();
      const double dm = diam(g, net);
      for (int k = 0; k < probes; ++k) {
        const Point z = k % 2 == 0 ? random_point(g, rng)
                                   : random_displacement(g, mp, dm * std::pow(10.0, -1 - (k / 2) % 5), rng);
        const double fz = power_sum(net, z, p);
        row.f_probe = std::min(row.f_probe, fz);
        if (row.f_mp > fz + 10.0 * tol) ++row.failures;
      }
    });
    long long bad = 0;
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const Row& row = rows[t];
      r.rows.push_back({S(space_arg(g)), I(static_cast<long long>(t)),
                        I(static_cast<long long>(row.n)), D(row.f_mp), D(row.f_probe),
                        D(row.f_min), I(row.failures)});
      if (row.failures > 0) ++bad;
      worst_gap = std::max(worst_gap, row.f_mp - row.f_probe);
    }
    per_space.push_back(space_arg(g) + ": " + std::to_string(bad) + "/" +
                        std::to_string(rows.size()) + " nets beaten by a probe");
    failing_nets += bad;
    total += static_cast<long long>(rows.size());
  }
  r.summary = {{"nets", I(total)}, {"failing_nets", I(failing_nets)},
               {"max_f_mp_minus_best_probe", D(worst_gap)}};
  r.verdict.pass = failing_nets == 0;
  std::string detail;
  for (const std::string& d : per_space) detail += (detail.empty() ? "" : "; ") + d;
  r.verdict.detail = detail;
}

void mp_perturbation(ExperimentReport& r, Exec exec) {
  ExperimentSpec& s = r.spec;
  const auto spaces = spaces_or(s, {"euclidean:2", "hyperbolic2"});
  const bool custom_n = !s.n.empty();
  const auto ns = n_or(s, {2, 3, 4}, 1, kMaxNet - 1);
  const int trials = trials_or(s, 1000);
  const double tol = tol_or(s, 1e-7);
  r.columns = {"space", "trial", "n", "k", "shift", "max_distance", "bound", "ratio", "pass"};
  // (n, k) pairs with n + k <= 5 unless n was given explicitly.
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t n : ns)
    for (std::size_t k = 1; k <= 3; ++k)
      if (n + k <= (custom_n ? kMaxNet : 5)) shapes.emplace_back(n, k);
  if (shapes.empty()) throw InputError("mp_perturbation: no admissible (n, k) pair");
  long long failures = 0;
  double worst = 0.0;
  for (std::size_t b = 0; b < spaces.size(); ++b) {
    const GeodesicSpace& g = spaces[b];
    g.require_geodesics("mp_perturbation");
    std::vector<PerturbationReport> reps(static_cast<std::size_t>(trials));
    run_trials(reps.size(), exec, [&](std::size_t t) {
      Rng rng = stream(s.seed, b, t);
      const auto [n, k] = shapes[t % shapes.size()];
      const Net all = random_net(g, n + k, rng);
      const Net sigma(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
      const Net extra(all.begin() + static_cast<std::ptrdiff_t>(n), all.end());
      reps[t] = perturbation_bound_check(g, sigma, extra, tol);
    });
    for (std::size_t t = 0; t < reps.size(); ++t) {
      const auto [n, k] = shapes[t % shapes.size()];
      const PerturbationReport& p = reps[t];
      r.rows.push_back({S(space_arg(g)), I(static_cast<long long>(t)),
                        I(static_cast<long long>(n)), I(static_cast<long long>(k)), D(p.shift),
                        D(p.max_distance), D(p.bound), D(p.ratio), I(p.pass ? 1 : 0)});
      if (!p.pass) ++failures;
      if (p.factor > 0.0) worst = std::max(worst, p.ratio / p.factor);
    }
  }
  r.summary = {{"failures", I(failures)}, {"max_ratio_over_factor", D(worst)}};
  r.verdict.pass = failures == 0;
  r.verdict.detail = std::to_string(failures) + " instances above max-distance * k/(n+k) + slack; "
                     "largest ratio/(k/(n+k)) = " + fmt(worst);
}

void mp_weighted_bound(ExperimentReport& r, Exec exec) {
  ExperimentSpec& s = r.spec;
  const auto spaces = spaces_or(s, {"euclidean:2", "hyperbolic2"});
  const auto ns = n_or(s, {2, 3, 4}, 1, 5);
  const int trials = trials_or(s, 300);
  const double tol = tol_or(s, 1e-7);
  r.columns = {"space", "trial", "n", "q", "shift", "bound", "pass"};
  long long failures = 0;
  double worst = 0.0;
  for (std::size_t b = 0; b < spaces.size(); ++b) {
    const GeodesicSpace& g = spaces[b];
    g.require_geodesics("mp_weighted_bound");
    std::vector<MassBoundReport> reps(static_cast<std::size_t>(trials));
    std::vector<int> qs(reps.size());
    run_trials(reps.size(), exec, [&](std::size_t t) {
      Rng rng = stream(s.seed, b, t);
      const std::size_t n = ns[t % ns.size()];
      const int q = 2 + static_cast<int>(t % 4);
      qs[t] = q;
      const Net pts = random_net(g, n, rng);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      auto masses = [&] {
        std::vector<int> c(n, 0);
        for (int u = 0; u < q; ++u) ++c[pick(rng)];
        std::vector<double> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<double>(c[i]) / q;
        return m;
      };
      const auto m1 = masses();
      const auto m2 = masses();
      reps[t] = weighted_mass_bound_check(g, pts, m1, m2, tol, 5);
    });
    for (std::size_t t = 0; t < reps.size(); ++t) {
      const MassBoundReport& m = reps[t];
      r.rows.push_back({S(space_arg(g)), I(static_cast<long long>(t)),
                        I(static_cast<long long>(ns[t % ns.size()])), I(qs[t]), D(m.shift),
                        D(m.bound), I(m.pass ? 1 : 0)});
      if (!m.pass) ++failures;
      if (m.bound > 0.0) worst = std::max(worst, m.shift / m.bound);
    }
  }
  r.summary = {{"failures", I(failures)}, {"max_shift_over_bound", D(worst)}};
  r.verdict.pass = failures == 0;
  r.verdict.detail = std::to_string(failures) + " instances above diam * ||m - m'||_1 + 3 tol; "
                     "largest shift/bound = " + fmt(worst);
}

void mp_compact(ExperimentReport& r, Exec) {
  ExperimentSpec& s = r.spec;
  const auto schedule = eps_or(s, {1.0, 0.8, 0.7, 0.65});
  const double tol = tol_or(s, 1e-9);
  if (!s.spaces.empty()) throw InputError("mp_compact: the regions are fixed; --space is not used");
  const GeodesicSpace e2 = GeodesicSpace::euclidean(2);
  const GeodesicSpace h2 = GeodesicSpace::hyperbolic2();
  struct Region {
    std::string name;
    const GeodesicSpace* space;
    NetSampler sampler;
    Point center;
    double scale;  // schedule entries are multiples of this length
  };
  Point half(2);
  half[0] = half[1] = 0.5;
  const std::vector<Region> regions = {
      {"disk", &e2, ball_sampler(e2, Point(2), 1.0), Point(2), 1.0},
      {"square", &e2, box_sampler(e2, 0.0, 1.0), half, 0.75},
      {"hyperbolic_ball", &h2, ball_sampler(h2, origin_of(h2), 1.0), origin_of(h2), 1.0},
  };
  r.columns = {"region", "step", "eps", "net_size", "displacement", "error"};
  bool ok = true;
  std::string detail;
  for (const Region& reg : regions) {
    std::vector<double> eps;
    for (double e : schedule) eps.push_back(e * reg.scale);
    const CompactResult c = mean_point_compact(*reg.space, reg.sampler, eps, tol);
    for (std::size_t k = 0; k < c.iterates.size(); ++k)
      r.rows.push_back({S(reg.name), I(static_cast<long long>(k)), D(eps[k]),
                        I(static_cast<long long>(c.net_sizes[k])),
                        D(k == 0 ? 0.0 : c.displacements[k - 1]),
                        D(reg.space->distance(c.iterates[k], reg.center))});
    const double err = reg.space->distance(c.point, reg.center);
    const bool pass = err <= 2.0 * eps.back() && !c.warning;
    ok = ok && pass;
    r.summary.emplace_back(reg.name + "_error", D(err));
    detail += (detail.empty() ? "" : "; ") + reg.name + " error " + fmt(err) + " vs 2 eps " +
              fmt(2.0 * eps.back()) + (c.warning ? " (" + c.message + ")" : "");
  }
  r.verdict.pass = ok;
  r.verdict.detail = detail;
}

// -------------------------------------------------------------- chebyshev

/// Smallest enclosing ball by enumeration of circumscribed balls of at most
/// dim + 1 points.
std::pair<Point, double> brute_miniball(const Net& net) {
  const std::size_t n = net.size(), dim = net[0].size();
  Point best_c = net[0];
  double best_r = std::numeric_limits<double>::infinity();
  const std::size_t m = std::min(n, dim + 1);
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!idx.empty()) {
      const Point& p0 = net[idx[0]];
      const std::size_t k = idx.size() - 1;
      Point c = p0;
      bool ok = true;
      if (k > 0) {
        Eigen::MatrixXd G(k, k);
        Eigen::VectorXd rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
          const Point vi = net[idx[i + 1]] - p0;
          rhs(static_cast<Eigen::Index>(i)) = 0.5 * dot(vi, vi);
          for (std::size_t j = 0; j < k; ++j)
            G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                dot(vi, net[idx[j + 1]] - p0);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
        lu.setThreshold(1e-12);
        if (!lu.isInvertible()) {
          ok = false;
        } else {
          const Eigen::VectorXd lam = lu.solve(rhs);
          for (std::size_t i = 0; i < k; ++i)
            c = c + lam(static_cast<Eigen::Index>(i)) * (net[idx[i + 1]] - p0);
        }
      }
      if (ok) {
        const Point v = c - p0;
        const double rad = std::sqrt(dot(v, v));
        bool covers = rad < best_r;
        for (std::size_t i = 0; covers && i < n; ++i) {
          const Point w = net[i] - c;
          covers = std::sqrt(dot(w, w)) <= rad * (1.0 + 1e-12) + 1e-14;
        }
        if (covers) best_r = rad, best_c = c;
      }
    }
    if (idx.size() == m) return;
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return {best_c, best_r};
}

void cheb_oracle(ExperimentReport& r, Exec exec) {
  ExperimentSpec& s = r.spec;
  const auto spaces = spaces_or(s, {"euclidean:1", "euclidean:2", "euclidean:3"});
  for (const GeodesicSpace& g : spaces)
    if (g.kind() != SpaceKind::euclidean)
      throw InputError("cheb_oracle: the miniball oracle needs euclidean spaces");
  const auto ns = n_or(s, {1, 2, 3, 4, 5, 6, 7}, 1, 64);
  const int trials = trials_or(s, 1000);
  const double tol = tol_or(s, 1e-9);
  r.columns = {"trial", "dim", "n", "radius", "oracle_radius", "center_error",
               "support_size", "support_center_error", "support_radius_error"};
  struct Row {
    std::size_t dim = 0, n = 0, support = 0;
    double radius = 0, oracle_radius = 0, center_error = 0, s_center = 0, s_radius = 0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(trials));
  run_trials(rows.size(), exec, [&](std::size_t t) {
    Rng rng = stream(s.seed, 0, t);
    const GeodesicSpace& g = spaces[t % spaces.size()];
    Row& row = rows[t];
    row.dim = g.dim();
    row.n = ns[(t / spaces.size()) % ns.size()];
    const Net net = random_net(g, row.n, rng);
    const CenterResult c = cheb_center(g, net, tol);
    const auto [oc, orad] = brute_miniball(net);
    row.radius = c.radius;
    row.oracle_radius = orad;
    row.center_error = g.distance(c.center, oc);
    const SupportReport sup = support_reduction(g, net, c, tol);
    Net sub;
    for (std::size_t i : sup.subset) sub.push_back(net[i]);
    const CenterResult cs = cheb_center(g, sub, tol);
    row.support = sub.size();
    row.s_center = g.distance(cs.center, c.center);
    row.s_radius = std::abs(cs.radius - c.radius);
  });
  double ce = 0, re = 0, sce = 0, sre = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Row& row = rows[t];
    r.rows.push_back({I(static_cast<long long>(t)), I(static_cast<long long>(row.dim)),
                      I(static_cast<long long>(row.n)), D(row.radius), D(row.oracle_radius),
                      D(row.center_error), I(static_cast<long long>(row.support)),
                      D(row.s_center), D(row.s_radius)});
    ce = std::max(ce, row.center_error);
    re = std::max(re, std::abs(row.radius - row.oracle_radius));
    sce = std::max(sce, row.s_center);
    sre = std::max(sre, row.s_radius);
  }
  r.summary = {{"max_center_error", D(ce)}, {"max_radius_error", D(re)},
               {"max_support_center_error", D(sce)}, {"max_support_radius_error", D(sre)}};
  r.verdict.pass = ce <= 5 * tol && re <= 5 * tol && sce <= 10 * tol && sre <= tol;
  r.verdict.detail = "center error " + fmt(ce) + ", radius error " + fmt(re) + " (limit " +
                     fmt(5 * tol) + "); support center/radius error " + fmt(sce) + "/" + fmt(sre);
}

void cheb_support(ExperimentReport& r, Exec exec) {
  ExperimentSpec& s = r.spec;
  const auto spaces = spaces_or(s, {"euclidean:2", "euclidean:3", "hyperbolic2"});
  const auto ns = n_or(s, {8}, 1, 64);
  const int trials = trials_or(s, 200);
  const double tol = tol_or(s, 1e-9);
  r.columns = {"space", "trial", "n", "support_size", "claimed_bound", "bound_ok",
               "center_error", "radius_error"};
  long long bad = 0, over = 0;
  std::size_t largest = 0;
  for (std::size_t b = 0; b < spaces.size(); ++b) {
    const GeodesicSpace& g = spaces[b];
    struct Row {
      std::size_t n = 0;
      SupportReport sup;
      double ce = 0, re = 0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));
    run_trials(rows.size(), exec, [&](std::size_t t) {
      Rng rng = stream(s.seed, b, t);
      Row& row = rows[t];
      row.n = ns[t % ns.size()];
      const Net net = random_net(g, row.n, rng);
      const CenterResult c = cheb_center(g, net, tol);
      row.sup = support_reduction(g, net, c, tol);
      Net sub;
      for (std::size_t i : row.sup.subset) sub.push_back(net[i]);
      const CenterResult cs = cheb_center(g, sub, tol);
      row.ce = g.distance(cs.center, c.center);
      row.re = std::abs(cs.radius - c.radius);
    });
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const Row& row = rows[t];
      r.rows.push_back({S(space_arg(g)), I(static_cast<long long>(t)),
                        I(static_cast<long long>(row.n)),
                        I(static_cast<long long>(row.sup.subset.size())),
                        I(static_cast<long long>(row.sup.claimed_bound)),
                        I(row.sup.bound_ok ? 1 : 0), D(row.ce), D(row.re)});
      if (row.ce > 10 * tol || row.re > tol) ++bad;
      if (!row.sup.bound_ok) ++over;
      largest = std::max(largest, row.sup.subset.size());
    }
  }
  r.summary = {{"largest_support", I(static_cast<long long>(largest))},
               {"bound_exceeded", I(over)}, {"not_reproducing", I(bad)}};
  r.verdict.pass = bad == 0 && over == 0;
  r.verdict.detail = "largest support " + std::to_string(largest) + "; " + std::to_string(over) +
                     " above the dimension bound; " + std::to_string(bad) +
                     " supports failing to reproduce center and radius";
}

void holder_common(ExperimentReport& r, const GeodesicSpace& g, double lo, double hi) {
  ExperimentSpec& s = r.spec;
  const auto [x, y] = base_pair(g);
  const double scale = 0.5 * g.distance(x, y);
  const auto grid = eps_or(s, dyadic_grid(scale, 4, 14));
  const double tol = tol_or(s, 1e-11);
  const PairGenerator gen =
      s.theta ? fixed_theta_family(g, x, y, *s.theta) : coupled_triple_family(g, x, y);
  const RegularityReport rep = holder_exponent_estimate(g, gen, grid, tol);
  r.columns = {"eps", "hd", "displacement", "ratio", "diam", "excluded"};
  for (const RegularitySample& m : rep.samples)
    r.rows.push_back({D(m.eps), D(m.hd), D(m.displacement), D(m.ratio), D(m.diam),
                      I(m.excluded ? 1 : 0)});
  r.summary = {{"exponent", D(rep.fit.exponent)},
               {"r2", D(rep.fit.r2)},
               {"ci_low", D(rep.fit.ci_low)},
               {"ci_high", D(rep.fit.ci_high)},
               {"constant", D(rep.fit.constant)},
               {"holder_constant", D(rep.holder_constant)},
               {"span_octaves", D(rep.span_octaves)},
               {"fitted_samples", I(static_cast<long long>(rep.fit.count))},
               {"expected_low", D(lo)},
               {"expected_high", D(hi)}};
  r.verdict.pass = rep.valid && rep.fit.exponent >= lo && rep.fit.exponent <= hi && !rep.nonlinear;
  r.verdict.detail = g.name() + ": slope " + fmt(rep.fit.exponent) + " in [" + fmt(lo) + ", " +
                     fmt(hi) + "]?, r2 " + fmt(rep.fit.r2) + " (>= 0.98), span " +
                     fmt(rep.span_octaves) + " octaves";
}

const GeodesicSpace& single_space(const ExperimentSpec& s, const std::vector<GeodesicSpace>& v) {
  if (v.size() != 1) throw InputError(s.name + ": exactly one space is used");
  return v[0];
}

void holder_euclidean(ExperimentReport& r, Exec) {
  const auto spaces = spaces_or(r.spec, {"euclidean:2"});
  holder_common(r, single_space(r.spec, spaces), 0.40, 0.60);
}

void holder_hyperbolic(ExperimentReport& r, Exec) {
  const auto spaces = spaces_or(r.spec, {"hyperbolic2"});
  holder_common(r, single_space(r.spec, spaces), 0.40, 0.60);
}

void holder_lp(ExperimentReport& r, Exec) {
  ExperimentSpec& s = r.spec;
  if (s.spaces.empty()) s.spaces = {"lp:2:" + fmt(s.p.value_or(4.0))};
  const auto spaces = spaces_or(s, {});
  const GeodesicSpace& g = single_space(s, spaces);
  if (g.kind() != SpaceKind::lp) throw InputError("holder_lp: needs an lp space");
  s.p = g.p();
  double lo = 0.68 / g.p(), hi = 1.32 / g.p();
  if (g.p() == 4.0) lo = 0.17, hi = 0.33;
  if (g.p() == 6.0) lo = 0.10, hi = 0.24;
  holder_common(r, g, lo, hi);
}

// ---------------------------------------------------------------------- l1

std::vector<std::size_t> l1_dims(ExperimentSpec& s, std::vector<std::size_t> def, std::size_t hi) {
  if (!s.spaces.empty()) {
    std::vector<std::size_t> dims;
    for (const std::string& d : s.spaces) {
      const GeodesicSpace g = parse_space_arg(d);
      if (g.kind() != SpaceKind::l1) throw InputError(s.name + ": needs l1 spaces");
      dims.push_back(g.dim());
    }
    if (!s.n.empty() && s.n != dims) throw InputError(s.name + ": --n disagrees with --space");
    s.n = dims;
  }
  const auto ns = n_or(s, std::move(def), 1, hi);
  s.spaces.clear();
  for (std::size_t n : ns) s.spaces.push_back("l1:" + std::to_string(n));
  return ns;
}

void l1_lower(ExperimentReport& r, Exec) {
  ExperimentSpec& s = r.spec;
  const auto ns = l1_dims(s, {2, 3}, 4);
  const auto eps = eps_or(s, {0.01});
  r.columns = {"n", "eps", "reading", "displacement", "representative_displacement",
               "vertex_hausdorff", "hd", "bound", "pass"};
  bool ok = true;
  std::string detail;
  for (std::size_t n : ns)
    for (double e : eps)
      for (const L1Reading reading : {L1Reading::corrected, L1Reading::literal}) {
        const L1LowerResult res = l1_lower_bound_experiment(n, e, reading);
        const bool corrected = reading == L1Reading::corrected;
        r.rows.push_back({I(static_cast<long long>(n)), D(e), S(corrected ? "corrected" : "literal"),
                          D(res.displacement), D(res.representative_displacement),
                          D(res.vertex_hausdorff), D(res.hd), D(res.bound),
                          I(res.pass ? 1 : 0)});
        if (corrected) {
          ok = ok && res.pass;
          detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) +
                    " eps=" + fmt(e) + ": " + fmt(res.displacement) + " vs " + fmt(res.bound);
        }
      }
  r.verdict.pass = ok;
  r.verdict.detail = detail;
}

void l1_upper(ExperimentReport& r, Exec) {
  ExperimentSpec& s = r.spec;
  const auto ns = l1_dims(s, {2, 3}, 4);
  const auto eps = eps_or(s, {0.05});
  const int trials = trials_or(s, 1000, 100);
  r.columns = {"eps", "hd", "displacement", "ratio"};
  bool ok = true;
  std::string detail;
  std::uint64_t block = 0;
  for (std::size_t n : ns)
    for (double e : eps) {
      const L1UpperResult res = l1_upper_bound_check(n, trials, e, trial_seed(s.seed, block++));
      for (const L1UpperRow& row : res.rows)
        r.rows.push_back({D(row.eps), D(row.hd), D(row.displacement), D(row.ratio)});
      const std::string key = "n" + std::to_string(n) + "_eps" + fmt(e);
      r.summary.emplace_back(key + "_max_ratio", D(res.max_ratio));
      r.summary.emplace_back(key + "_bound", D(res.bound));
      r.summary.emplace_back(key + "_lp_mismatches", I(res.lp_mismatches));
      ok = ok && res.pass;
      detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " eps=" +
                fmt(e) + ": max ratio " + fmt(res.max_ratio) + " vs " + fmt(res.bound) + ", " +
                std::to_string(res.lp_mismatches) + " LP mismatches";
    }
  r.verdict.pass = ok;
  r.verdict.detail = detail;
}

// -------------------------------------------------------------- selection

SelectionConfig selection_cfg(ExperimentSpec& s) {
  SelectionConfig cfg;
  if (s.tol != 0.0) {
    cfg.mp_tol = cfg.hull_tol = s.tol;
    cfg.cheb_tol = 0.1 * s.tol;
  } else {
    s.tol = cfg.mp_tol;
  }
  return cfg;
}

void selection_constant(ExperimentReport& r, Exec exec, Selector selector) {
  ExperimentSpec& s = r.spec;
  const auto spaces = spaces_or(s, {"euclidean:2"});
  const GeodesicSpace& g = single_space(s, spaces);
  const auto ns = n_or(s, {2, 3, 4}, 1, 6);
  const int trials = trials_or(s, 1000, 100);
  SelectionConfig cfg = selection_cfg(s);
  const bool cheb = selector == Selector::select_cheb;
  const std::size_t top = *std::max_element(ns.begin(), ns.end());
  if (cheb)
    for (std::size_t m = 3; m <= top; ++m) {
      cfg.holder_constants[m] = estimate_holder_constant(g, m, 100, trial_seed(s.seed, 1000 + m),
                                                         cfg.cheb_tol);
      r.summary.emplace_back("H_" + std::to_string(m), D(cfg.holder_constants[m]));
    }
  // Recurrence bounds: L_1 = 1 (identity), L_2 = 1, then the construction's step.
  auto bound = [&](std::size_t n) {
    double l = 1.0;
    for (std::size_t m = 3; m <= n; ++m) l = cheb ? 1.0 + 2.5 * l : 2.0 + l;
    return l;
  };
  r.columns = {"n", "trial", "ratio"};
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const std::size_t n = ns[k];
    const LipschitzReport rep = empirical_lipschitz(g, selector, n, trials, 0.5,
                                                    trial_seed(s.seed, k), PerturbMode::unconstrained,
                                                    cfg, exec);
    for (std::size_t t = 0; t < rep.ratios.size(); ++t)
      r.rows.push_back({I(static_cast<long long>(n)), I(static_cast<long long>(t)),
                        D(rep.ratios[t])});
    const double b = bound(n);
    const std::string key = "n" + std::to_string(n);
    r.summary.emplace_back(key + "_max_ratio", D(rep.max_ratio));
    r.summary.emplace_back(key + "_p99", D(rep.p99));
    r.summary.emplace_back(key + "_bound", D(b));
    r.summary.emplace_back(key + "_worst_seed", I(static_cast<long long>(rep.worst_seed)));
    const bool pass = rep.counted > 0 && rep.max_ratio <= b + 0.2;
    ok = ok && pass;
    detail += (detail.empty() ? "" : "; ") + key + " max " + fmt(rep.max_ratio) + " vs " +
              fmt(b) + " + 0.2";
    if (!pass)
      detail += " VIOLATION trial " + std::to_string(rep.worst_trial) + " reproducer seed " +
                std::to_string(rep.worst_seed);
  }
  r.verdict.pass = ok;
  r.verdict.detail = detail;
}

void selection_mp_constant(ExperimentReport& r, Exec exec) {
  selection_constant(r, exec, Selector::select_mp);
}

void selection_cheb_constant(ExperimentReport& r, Exec exec) {
  selection_constant(r, exec, Selector::select_cheb);
}

// ---------------------------------------------------------------- modulus

void modulus_fit(ExperimentReport& r, Exec) {
  ExperimentSpec& s = r.spec;
  std::vector<std::string> def = {"euclidean:2", "lp:2:4", "lp:2:6", "hyperbolic2", "l1:2"};
  if (s.p && s.spaces.empty()) def = {"lp:2:" + fmt(*s.p)};
  const auto spaces = spaces_or(s, def);
  const auto grid = eps_or(s, default_modulus_grid());
  const int samples = trials_or(s, 400, 100);
  r.columns = {"space", "eps", "delta"};
  bool ok = true;
  std::string detail;
  for (const GeodesicSpace& g : spaces) {
    const ModulusFit fit = convexity_modulus_fit(g, origin_of(g), 1.0, grid, samples);
    for (std::size_t k = 0; k < fit.eps.size(); ++k)
      r.rows.push_back({S(space_arg(g)), D(fit.eps[k]), D(fit.delta[k])});
    bool pass = false;
    std::string what;
    if (g.kind() == SpaceKind::l1) {
      pass = fit.degenerate;
      what = "degenerate";
      r.summary.emplace_back(space_arg(g) + "_degenerate", I(fit.degenerate ? 1 : 0));
    } else {
      const double q = fit.fit.exponent;
      double lo = 1.9, hi = 2.1;
      if (g.kind() == SpaceKind::lp) {
        const double target = std::max(2.0, g.p());
        lo = 0.9 * target;
        hi = 1.1 * target;
      }
      pass = q >= lo && q <= hi;
      what = "q=" + fmt(q) + " in [" + fmt(lo) + ", " + fmt(hi) + "]";
      r.summary.emplace_back(space_arg(g) + "_exponent", D(q));
    }
    ok = ok && pass;
    detail += (detail.empty() ? "" : "; ") + space_arg(g) + " " + what + (pass ? "" : " FAIL");
  }
  r.verdict.pass = ok;
  r.verdict.detail = detail;
}

// ---------------------------------------------------------------- catalog

using Runner = void (*)(ExperimentReport&, Exec);

struct Entry {
  ExperimentInfo info;
  Runner run;
};

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = {
      {{"mp_contraction",
        "each mean-point round shrinks every pairwise distance by at least half",
        "Round ratios of the mean-point iteration on random nets; linear kinds also report "
        "the distance to the arithmetic mean.",
        {"space", "trial", "n", "rounds", "max_ratio", "centroid_error"}},
       mp_contraction},
      {{"mp_local_lipschitz",
        "the mean point is 1-Lipschitz for perturbations below half the minimum gap",
        "Empirical Lipschitz ratio of the mean point under small matched perturbations.",
        {"space", "n", "trial", "ratio"}},
       mp_local_lipschitz},
      {{"mp_lp_minimizer",
        "in lp the mean point minimises the sum of p-th powers of distances",
        "f(mp) against 100 probe points per net and a coordinatewise exact minimizer.",
        {"space", "net", "n", "f_mp", "f_best_probe", "f_min", "probe_failures"}},
       mp_lp_minimizer},
      {{"mp_perturbation",
        "adding k points moves the mean point by at most max distance times k/(n+k)",
        "Shift of the mean point when k extra points join an n-net.",
        {"space", "trial", "n", "k", "shift", "max_distance", "bound", "ratio", "pass"}},
       mp_perturbation},
      {{"mp_weighted_bound",
        "weighted mean points differ by at most diam times the l1 distance of the masses",
        "Rational mass vectors on fixed points expanded into equal-mass copies.",
        {"space", "trial", "n", "q", "shift", "bound", "pass"}},
       mp_weighted_bound},
      {{"mp_compact",
        "the mean point of a compact set is the limit over ever finer nets",
        "Mean points of nested eps-nets of a disk, a square and a hyperbolic ball.",
        {"region", "step", "eps", "net_size", "displacement", "error"}},
       mp_compact},
      {{"cheb_oracle",
        "the Chebyshev center minimises the largest distance to the set",
        "cheb_center against a brute-force smallest enclosing ball, plus support reproduction.",
        {"trial", "dim", "n", "radius", "oracle_radius", "center_error", "support_size",
         "support_center_error", "support_radius_error"}},
       cheb_oracle},
      {{"cheb_support",
        "the Chebyshev center is determined by a finite subset of at most 2n-1 points",
        "Greedy support subsets of random 8-nets and whether they reproduce the center.",
        {"space", "trial", "n", "support_size", "claimed_bound", "bound_ok", "center_error",
         "radius_error"}},
       cheb_support},
      {{"holder_euclidean",
        "the Chebyshev center is generalised Holder with power constant 1/2",
        "Degenerate-triple family in the Euclidean plane; slope of log displacement vs log Hd.",
        {"eps", "hd", "displacement", "ratio", "diam", "excluded"}},
       holder_euclidean},
      {{"holder_hyperbolic",
        "the Chebyshev center is generalised Holder with power constant 1/2",
        "Degenerate-triple family in the hyperbolic plane.",
        {"eps", "hd", "displacement", "ratio", "diam", "excluded"}},
       holder_hyperbolic},
      {{"holder_lp",
        "in lp the Chebyshev center has power coefficient equal to 1/p",
        "Degenerate-triple family in lp(2, p); p from --p (default 4).",
        {"eps", "hd", "displacement", "ratio", "diam", "excluded"}},
       holder_lp},
      {{"l1_lower",
        "in l1 some eps-close nets have Chebyshev centers at least (n-1) eps apart",
        "Cube-corner nets and their shifts; center sets from the LP oracle. Both readings of "
        "the point listing are reported, the verdict uses the corrected one.",
        {"n", "eps", "reading", "displacement", "representative_displacement",
         "vertex_hausdorff", "hd", "bound", "pass"}},
       l1_lower},
      {{"l1_upper",
        "in l1 the pair Chebyshev center set is Lipschitz with constant at most 4n",
        "Random pairs and perturbations; corner sets cross-checked by the LP oracle. Rows are "
        "grouped by n then eps, trials rows each.",
        {"eps", "hd", "displacement", "ratio"}},
       l1_upper},
      {{"selection_mp_constant",
        "the mean-point selection has Lipschitz constants L_n = 2 + L_{n-1}",
        "Empirical Lipschitz ratios of select_mp for each n.",
        {"n", "trial", "ratio"}},
       selection_mp_constant},
      {{"selection_cheb_constant",
        "the Chebyshev selection has Lipschitz constants 1 + L_{n-1} + 3/2 L_{n-1}",
        "Empirical Lipschitz ratios of select_cheb with estimated H_n.",
        {"n", "trial", "ratio"}},
       selection_cheb_constant},
      {{"modulus_fit",
        "the convexity modulus is quadratic in Hadamard spaces and of order eps^p in lp",
        "Fitted exponent of delta(eps) about the origin at radius 1.",
        {"space", "eps", "delta"}},
       modulus_fit},
  };
  return entries;
}

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

Json json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);  // "nan", "inf"
  }
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void ExperimentSpec::validate() const {
  if (name.empty()) throw InputError("experiment: missing name");
  find_experiment(name);
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (!(eps[i] < eps[i - 1])) throw InputError("experiment: eps grid must be strictly decreasing");
  for (double e : eps)
    if (!(e > 0.0) || !std::isfinite(e)) throw InputError("experiment: eps values must be positive");
  if (trials < 0) throw InputError("experiment: trials must be positive");
  if (!(tol >= 0.0)) throw InputError("experiment: tol must be positive");
  if (theta && !(*theta > 0.0 && *theta < std::numbers::pi))
    throw InputError("experiment: theta must lie in (0, pi)");
  if (p && !(*p > 1.0)) throw InputError("experiment: p must exceed 1");
  if (format != "csv" && format != "json") throw InputError("experiment: format must be csv or json");
}

ExperimentSpec experiment_spec_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("experiment config must be a JSON object");
  static const std::vector<std::string> known = {"name", "space", "n",   "eps", "theta", "trials",
                                                 "seed", "tol",   "p",   "out", "format"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw InputError("experiment config: unknown key \"" + k + "\"");
  ExperimentSpec s;
  auto num = [](const Json& v, const char* what) {
    if (!v.is_number()) throw InputError(std::string("experiment config: ") + what + " must be a number");
    return v.get<double>();
  };
  auto integer = [](const Json& v, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw InputError(std::string("experiment config: ") + what + " must be a nonnegative integer");
    return v.get<std::uint64_t>();
  };
  auto str = [](const Json& v, const char* what) {
    if (!v.is_string()) throw InputError(std::string("experiment config: ") + what + " must be a string");
    return v.get<std::string>();
  };
  if (j.contains("name")) s.name = str(j["name"], "name");
  if (j.contains("space")) {
    const Json& v = j["space"];
    auto one = [&](const Json& e) {
      if (e.is_object()) return space_arg(space_from_json(e));
      return space_arg(parse_space_arg(str(e, "space")));
    };
    if (v.is_array())
      for (const Json& e : v) s.spaces.push_back(one(e));
    else
      s.spaces.push_back(one(v));
  }
  if (j.contains("n")) {
    const Json& v = j["n"];
    if (v.is_array())
      for (const Json& e : v) s.n.push_back(integer(e, "n"));
    else
      s.n.push_back(integer(v, "n"));
  }
  if (j.contains("eps")) {
    const Json& v = j["eps"];
    if (v.is_array())
      for (const Json& e : v) s.eps.push_back(num(e, "eps"));
    else
      s.eps.push_back(num(v, "eps"));
  }
  if (j.contains("theta")) s.theta = num(j["theta"], "theta");
  if (j.contains("trials")) s.trials = static_cast<int>(integer(j["trials"], "trials"));
  if (j.contains("seed")) s.seed = integer(j["seed"], "seed");
  if (j.contains("tol")) s.tol = num(j["tol"], "tol");
  if (j.contains("p")) s.p = num(j["p"], "p");
  if (j.contains("out")) s.out = str(j["out"], "out");
  if (j.contains("format")) s.format = str(j["format"], "format");
  return s;
}

Json experiment_spec_to_json(const ExperimentSpec& s) {
  Json j;
  j["name"] = s.name;
  j["space"] = s.spaces;
  j["n"] = s.n;
  Json eps = Json::array();
  for (double e : s.eps) eps.push_back(e);
  j["eps"] = eps;
  j["theta"] = s.theta ? Json(*s.theta) : Json(nullptr);
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["tol"] = s.tol;
  j["p"] = s.p ? Json(*s.p) : Json(nullptr);
  j["format"] = s.format;
  return j;
}

const std::vector<ExperimentInfo>& builtin_experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> v;
    for (const Entry& e : catalog()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const ExperimentInfo& find_experiment(const std::string& name) {
  for (const ExperimentInfo& e : builtin_experiments())
    if (e.name == name) return e;
  throw InputError("unknown experiment '" + name + "' (see the list subcommand)");
}

ExperimentReport run_experiment(const ExperimentSpec& spec, Exec exec) {
  spec.validate();
  ExperimentReport r;
  r.spec = spec;
  for (const Entry& e : catalog())
    if (e.info.name == spec.name) {
      r.verdict.claim = e.info.claim;
      e.run(r, exec);
      r.columns = e.info.columns;
      return r;
    }
  throw InputError("unknown experiment '" + spec.name + "'");
}

std::string to_csv(const ExperimentReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i)
    out += (i ? "," : "") + report.columns[i];
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += '\n';
  }
  return out;
}

Json to_json(const ExperimentReport& report) {
  Json j;
  j["experiment"] = report.spec.name;
  j["claim"] = report.verdict.claim;
  j["spec"] = experiment_spec_to_json(report.spec);
  j["columns"] = report.columns;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[report.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  Json summary = Json::object();
  for (const auto& [k, v] : report.summary) summary[k] = json_cell(v);
  j["summary"] = std::move(summary);
  j["verdict"] = {{"claim", report.verdict.claim},
                  {"pass", report.verdict.pass},
                  {"detail", report.verdict.detail}};
  return j;
}

// ------------------------------------------------------------- validation

namespace {

struct Checker {
  std::vector<CheckResult>& out;
  void add(std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  }
};

int scaled(int base, double scale) { return std::max(1, static_cast<int>(std::lround(base * scale))); }

}  // namespace

std::vector<CheckResult> run_validation(std::uint64_t seed, double scale) {
  if (!(scale > 0.0)) throw InputError("validate: scale must be positive");
  std::vector<CheckResult> results;
  Checker ck{results};
  const std::vector<GeodesicSpace> all = {GeodesicSpace::euclidean(2), GeodesicSpace::euclidean(3),
                                          GeodesicSpace::lp(2, 4),     GeodesicSpace::lp(3, 3),
                                          GeodesicSpace::l1(2),        GeodesicSpace::hyperbolic2()};
  std::uint64_t block = 0;

  const int triples = scaled(10000, scale);
  for (const GeodesicSpace& g : all) {
    Rng rng(trial_seed(seed, block++));
    double worst_sym = 0, worst_tri = 0, worst_id = 0;
    for (int t = 0; t < triples; ++t) {
      const Point a = random_point(g, rng), b = random_point(g, rng), c = random_point(g, rng);
      worst_sym = std::max(worst_sym, std::abs(g.distance(a, b) - g.distance(b, a)));
      worst_tri = std::max(worst_tri, g.distance(a, c) - g.distance(a, b) - g.distance(b, c));
      worst_id = std::max(worst_id, g.distance(a, a));
    }
    ck.add("metric_axioms " + space_arg(g), worst_sym <= 1e-9 && worst_tri <= 1e-9 && worst_id <= 1e-9,
           "asymmetry " + fmt(worst_sym) + ", triangle excess " + fmt(worst_tri) + ", d(a,a) " +
               fmt(worst_id));
  }

  for (const GeodesicSpace& g : all) {
    if (!g.uniquely_geodesic()) continue;
    Rng rng(trial_seed(seed, block++));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_param = 0, worst_busemann = -1, worst_end = 0;
    for (int t = 0; t < triples; ++t) {
      const Point a = random_point(g, rng), b = random_point(g, rng), z = random_point(g, rng);
      const double s = u(rng), tt = u(rng), d = g.distance(a, b);
      worst_param = std::max(worst_param, std::abs(g.distance(g.geodesic_point(a, b, s),
                                                              g.geodesic_point(a, b, tt)) -
                                                   std::abs(s - tt) * d));
      worst_end = std::max({worst_end, g.distance(g.geodesic_point(a, b, 0.0), a),
                            g.distance(g.geodesic_point(a, b, 1.0), b)});
      worst_busemann = std::max(worst_busemann,
                                g.distance(g.midpoint(a, z), g.midpoint(b, z)) - 0.5 * d);
    }
    ck.add("geodesic_parameterization " + space_arg(g), worst_param <= 1e-9 && worst_end == 0.0,
           "max |d(g(s),g(t)) - |s-t| d| = " + fmt(worst_param));
    ck.add("midpoint_convexity " + space_arg(g), worst_busemann <= 1e-9,
           "max d(m(x,z),m(y,z)) - d(x,y)/2 = " + fmt(worst_busemann));
  }

  {
    const GeodesicSpace g = GeodesicSpace::euclidean(2);
    Rng rng(trial_seed(seed, block++));
    double worst = 0;
    const int sets = scaled(500, scale);
    for (int t = 0; t < sets; ++t) {
      std::uniform_int_distribution<int> sz(1, 5);
      const Net a = random_net(g, sz(rng), rng), b = random_net(g, sz(rng), rng),
                c = random_net(g, sz(rng), rng);
      worst = std::max({worst, std::abs(hausdorff(g, a, b) - hausdorff(g, b, a)),
                        hausdorff(g, a, c) - hausdorff(g, a, b) - hausdorff(g, b, c),
                        hausdorff(g, a, a)});
    }
    ck.add("hausdorff_metric", worst <= 1e-12, "worst axiom defect " + fmt(worst));
  }

  for (const GeodesicSpace& g : {GeodesicSpace::euclidean(2), GeodesicSpace::lp(2, 4),
                                 GeodesicSpace::hyperbolic2()}) {
    Rng rng(trial_seed(seed, block++));
    double worst = -1, single = 0;
    const int cases = scaled(200, scale);
    for (int t = 0; t < cases; ++t) {
      const Net sset = random_net(g, 1 + t % 4, rng);
      const Point x = random_point(g, rng);
      double dmin = std::numeric_limits<double>::infinity();
      for (const Point& s : sset) dmin = std::min(dmin, g.distance(x, s));
      const double h = dist_to_hull(g, x, sset, 1e-9);
      worst = std::max(worst, h - dmin);
      if (sset.size() == 1) single = std::max(single, std::abs(h - dmin));
    }
    ck.add("hull_distance_bound " + space_arg(g), worst <= 1e-9 && single <= 1e-9,
           "max dist_to_hull - min distance " + fmt(worst) + ", singleton defect " + fmt(single));
  }

  for (const GeodesicSpace& g : {GeodesicSpace::euclidean(2), GeodesicSpace::lp(2, 4),
                                 GeodesicSpace::hyperbolic2()}) {
    Rng rng(trial_seed(seed, block++));
    bool exact = true;
    double centroid = 0;
    const int cases = scaled(60, scale);
    for (int t = 0; t < cases; ++t) {
      const std::size_t n = 3 + static_cast<std::size_t>(t % 3);
      Net net = random_net(g, n, rng);
      const Point a = mean_point(g, net, 1e-8);
      std::shuffle(net.begin(), net.end(), rng);
      exact = exact && mean_point(g, net, 1e-8) == a;
      if (g.is_linear()) {
        Point c(g.dim());
        for (const Point& p : net) c = c + (1.0 / static_cast<double>(n)) * p;
        centroid = std::max(centroid, g.distance(a, c));
      }
    }
    ck.add("mp_permutation_invariance " + space_arg(g), exact, exact ? "bitwise equal" : "differs");
    if (g.is_linear())
      ck.add("mp_linear_centroid " + space_arg(g), centroid <= 1e-8,
             "max distance to the arithmetic mean " + fmt(centroid));
  }

  for (const GeodesicSpace& g : {GeodesicSpace::euclidean(2), GeodesicSpace::hyperbolic2()}) {
    Rng rng(trial_seed(seed, block++));
    double worst = -std::numeric_limits<double>::infinity();
    double excess = -std::numeric_limits<double>::infinity();
    const int cases = scaled(40, scale);
    const double tol = 1e-9;
    for (int t = 0; t < cases; ++t) {
      const Net net = random_net(g, 3 + static_cast<std::size_t>(t % 2), rng);
      const Point mp = mean_point(g, net, tol);
      const Point b = weighted_barycenter(g, net, std::vector<double>(net.size(), 1.0), 1e-13);
      worst = std::max(worst, g.distance(mp, b) / diam(g, net));
      double fm = 0.0, fb = 0.0;
      for (const Point& x : net) {
        fm += g.distance(mp, x) * g.distance(mp, x);
        fb += g.distance(b, x) * g.distance(b, x);
      }
      excess = std::max(excess, fm - fb);
    }
    ck.add("mp_squared_sum_vs_barycenter " + space_arg(g), excess <= 10 * tol,
           "max sum d^2(mp, x) - sum d^2(b, x) = " + fmt(excess) + " against 10 tol");
    // The two agree in flat space; with curvature the mean point is only a
    // nearby surrogate for the barycenter.
    const double limit = g.is_linear() ? 1e-8 : 1e-2;
    ck.add("mp_barycenter_proxy " + space_arg(g), worst <= limit,
           "max d(mp, barycenter) / diam = " + fmt(worst) + " against " + fmt(limit));
  }

  {
    const GeodesicSpace g = GeodesicSpace::euclidean(2);
    const Point a{0, 0}, b{1, 0};
    const WeightedMpResult w = mean_point_weighted(g, {{a, b}, {2.0 / 3.0, 1.0 / 3.0}}, 1e-10);
    const WeightedMpResult one = mean_point_weighted(g, {{a, b}, {0.0, 1.0}}, 1e-10);
    const double e1 = g.distance(w.point, Point{1.0 / 3.0, 0.0});
    ck.add("mp_weighted_examples", e1 <= 1e-9 && one.point == b,
           "(2/3, 1/3) error " + fmt(e1) + ", unit mass returns its point");
  }

  for (const GeodesicSpace& g : {GeodesicSpace::euclidean(2), GeodesicSpace::lp(2, 4),
                                 GeodesicSpace::hyperbolic2()}) {
    Rng rng(trial_seed(seed, block++));
    double worst = -1, lip = -1;
    const int cases = scaled(100, scale);
    const double tol = 1e-10;
    for (int t = 0; t < cases; ++t) {
      const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
      const Net net = random_net(g, n, rng);
      const CenterResult c = cheb_center(g, net, tol);
      for (int k = 0; k < 100; ++k) {
        const Point z = k % 2 ? random_point(g, rng)
                              : random_displacement(g, c.center, std::pow(10.0, -(k % 7)), rng);
        double fz = 0;
        for (const Point& p : net) fz = std::max(fz, g.distance(z, p));
        worst = std::max(worst, c.radius - fz);
      }
      Net moved;
      for (const Point& p : net) moved.push_back(random_displacement(g, p, 0.05, rng));
      if (min_gap(g, moved) > 0.0) {
        const CenterResult cm = cheb_center(g, moved, tol);
        lip = std::max(lip, std::abs(cm.radius - c.radius) - hausdorff(g, net, moved));
      }
    }
    ck.add("cheb_optimality " + space_arg(g), worst <= 2 * tol,
           "max radius - f(probe) = " + fmt(worst));
    ck.add("cheb_radius_lipschitz " + space_arg(g), lip <= 2 * tol,
           "max |r - r'| - Hd = " + fmt(lip));
  }

  {
    const GeodesicSpace g = GeodesicSpace::euclidean(2);
    std::vector<double> slopes;
    for (double lam : {1.0, 0.1, 10.0}) {
      const Point x{-lam, 0.0}, y{lam, 0.0};
      const RegularityReport rep =
          holder_exponent_estimate(g, coupled_triple_family(g, x, y), dyadic_grid(lam, 4, 10),
                                   1e-11 * lam);
      slopes.push_back(rep.fit.exponent);
    }
    const double spread = *std::max_element(slopes.begin(), slopes.end()) -
                          *std::min_element(slopes.begin(), slopes.end());
    ck.add("holder_scale_consistency", spread <= 1e-3,
           "slopes at scale 1, 0.1, 10 spread by " + fmt(spread));
  }

  {
    Rng rng(trial_seed(seed, block++));
    double worst = 0;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int cases = scaled(400, scale);
    for (int t = 0; t < cases; ++t) {
      const std::size_t d = 1 + static_cast<std::size_t>(t % 4);
      Point x(d), y(d);
      for (std::size_t j = 0; j < d; ++j) x[j] = u(rng), y[j] = u(rng);
      const CenterResult c = cheb_l1_pair(x, y);
      const GeodesicSpace g = GeodesicSpace::l1(d);
      for (const Point& q : c.corner_points)
        worst = std::max({worst, std::abs(g.distance(q, x) - c.radius),
                          std::abs(g.distance(q, y) - c.radius)});
    }
    ck.add("l1_corner_equidistance", worst <= 1e-9, "max |d(t, x) - r| = " + fmt(worst));
  }

  {
    const GeodesicSpace g = GeodesicSpace::euclidean(2);
    SelectionConfig cfg;
    cfg.holder_constants = {{3, 1.0}, {4, 1.0}};
    Rng rng(trial_seed(seed, block++));
    double member = 0, equi = 0;
    bool perm = true;
    const int cases = scaled(40, scale);
    for (int t = 0; t < cases; ++t) {
      const std::size_t n = 3 + static_cast<std::size_t>(t % 2);
      Net net = random_net(g, n, rng);
      for (const Selector sel : {Selector::select_mp, Selector::select_cheb}) {
        const Point a = apply_selector(g, sel, net, cfg);
        member = std::max(member, dist_to_hull(g, a, net, cfg.hull_tol));
        Net shuffled = net;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        perm = perm && apply_selector(g, sel, shuffled, cfg) == a;
        Net moved;
        const Point shift{0.3, -0.7};
        for (const Point& p : net) moved.push_back(Point{p[1], p[0]} + shift);
        const Point b = apply_selector(g, sel, moved, cfg);
        equi = std::max(equi, g.distance(b, Point{a[1], a[0]} + shift));
      }
    }
    ck.add("selection_membership", member <= cfg.hull_tol,
           "max distance of a selected point to the hull " + fmt(member));
    ck.add("selection_permutation_invariance", perm, perm ? "bitwise equal" : "differs");
    ck.add("selection_equivariance", equi <= 1e-8,
           "max defect under a coordinate swap plus translation " + fmt(equi));
  }

  {
    const GeodesicSpace g = GeodesicSpace::euclidean(2);
    SelectionConfig cfg;
    double worst = 0;
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const Net net = {Point{-1, 0}, Point{1, 0}, Point{0, 1 - delta}};
      const double disp = g.distance(select_mp(g, net, cfg).point, mean_point(g, net, cfg.mp_tol));
      // diam/2 - min g equals delta for this family.
      worst = std::max(worst, disp / delta);
    }
    ck.add("select_mp_branch_continuity", worst <= 10.0,
           "max displacement from b(sigma) over (diam/2 - min g) = " + fmt(worst));
    const ConsistencyReport pair =
        subnet_consistency_check(g, {Point{0, 0}, Point{1, 0}}, 0, 0.01, cfg);
    ck.add("pair_consistency", std::abs(pair.max_displacement - 0.005) <= 1e-12,
           "pair displacement " + fmt(pair.max_displacement) + " for eps 0.01");
  }

  {
    const ModulusEstimate m =
        convexity_modulus_estimate(GeodesicSpace::euclidean(2), Point{0, 0}, 1.0, 1.0, 200);
    const double err = std::abs(m.delta - (1.0 - std::sqrt(3.0) / 2.0));
    ck.add("modulus_closed_form", err <= 1e-9, "delta(1) error " + fmt(err));
  }
  return results;
}

}  // namespace sellab
