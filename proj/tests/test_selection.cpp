#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "sellab/chebyshev.hpp"
#include "sellab/mean_point.hpp"
#include "sellab/random.hpp"
#include "sellab/selection.hpp"

using namespace sellab;

namespace {

double euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

SelectionConfig config() {
  SelectionConfig c;
  c.mp_tol = 1e-9;
  c.hull_tol = 1e-9;
  c.cheb_tol = 1e-10;
  c.holder_constants = {{3, 1.0}, {4, 1.0}, {5, 1.0}};
  return c;
}

}  // namespace

TEST_CASE("select_mp base cases") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  const SelectionConfig cfg = config();
  const SelectionResult one = select_mp(e, {Point{1, 2}}, cfg);
  CHECK(one.point == Point{1, 2});
  CHECK(one.branch == "point");
  const SelectionResult two = select_mp(e, {Point{0, 0}, Point{2, 2}}, cfg);
  CHECK(two.point == Point{1, 1});
  CHECK(two.branch == "midpoint");

  const double h = std::sqrt(3.0) / 2.0;
  const Net tri = {Point{0, 0}, Point{1, 0}, Point{0.5, h}};
  const SelectionResult r = select_mp(e, tri, cfg);
  CHECK(r.branch == "mean_point");
  CHECK(euclid(r.point, oracle::centroid(tri)) <= 1e-8);
}

TEST_CASE("select_cheb base cases") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  const SelectionConfig cfg = config();
  CHECK(select_cheb(e, {Point{0, 0}, Point{2, 2}}, cfg).point == Point{1, 1});

  // The middle point lies on the hull of the others, so lambda = 0 and the
  // result is the mean point of the sub-selections.
  const Net line = {Point{0, 0}, Point{1, 0}, Point{3, 0}};
  const SelectionResult r = select_cheb(e, line, cfg);
  CHECK(r.rho_or_lambda == doctest::Approx(0.0).epsilon(1e-12));
  const Point m = oracle::centroid({Point{0.5, 0}, Point{1.5, 0}, Point{2, 0}});
  CHECK(euclid(r.point, m) <= 1e-8);

  SelectionConfig missing = cfg;
  missing.holder_constants.erase(3);
  CHECK_THROWS_AS(select_cheb(e, line, missing), InputError);
}

TEST_CASE("select_cheb lambda follows the hull gaps") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  SelectionConfig cfg = config();
  const Net tri = {Point{0, 0}, Point{2, 0}, Point{1, 0.5}};
  // g = 0.5 for the apex, the base points are farther from the opposite sides.
  const SelectionResult r = select_cheb(e, tri, cfg);
  CHECK(std::abs(r.rho_or_lambda - std::sqrt(0.5 / 2.0)) <= 1e-9);
  cfg.holder_constants[3] = 4.0;
  CHECK(std::abs(select_cheb(e, tri, cfg).rho_or_lambda - std::sqrt(0.25) / 4.0) <= 1e-9);
}

TEST_CASE("selected points lie in the hull") {
  const SelectionConfig cfg = config();
  for (const GeodesicSpace& g : {GeodesicSpace::euclidean(2), GeodesicSpace::hyperbolic2()}) {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
      const Net net = random_net(g, 3 + t % 2, rng);
      for (const SelectionResult& r : {select_mp(g, net, cfg), select_cheb(g, net, cfg)})
        CHECK(dist_to_hull(g, r.point, net, cfg.hull_tol) <= cfg.hull_tol);
    }
  }
}

TEST_CASE("selections are permutation invariant") {
  const SelectionConfig cfg = config();
  const GeodesicSpace h = GeodesicSpace::hyperbolic2();
  Rng rng(4);
  for (int t = 0; t < 6; ++t) {
    Net net = random_net(h, 4, rng);
    const Point a = select_mp(h, net, cfg).point, b = select_cheb(h, net, cfg).point;
    std::reverse(net.begin(), net.end());
    CHECK(select_mp(h, net, cfg).point == a);
    CHECK(select_cheb(h, net, cfg).point == b);
  }
}

TEST_CASE("selections commute with coordinate swaps and translations") {
  const SelectionConfig cfg = config();
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  Rng rng(5);
  const Point shift{0.3, -1.7};
  auto map = [&](const Point& p) { return Point{p[1], p[0]} + shift; };
  for (int t = 0; t < 10; ++t) {
    const Net net = random_net(e, 3 + t % 2, rng);
    Net moved;
    for (const Point& p : net) moved.push_back(map(p));
    CHECK(euclid(map(select_mp(e, net, cfg).point), select_mp(e, moved, cfg).point) <= 1e-8);
    CHECK(euclid(map(select_cheb(e, net, cfg).point), select_cheb(e, moved, cfg).point) <= 1e-8);
  }
}

TEST_CASE("select_mp is continuous across its branch") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  const SelectionConfig cfg = config();
  for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const Net tri = {Point{-1, 0}, Point{1, 0}, Point{0, 1 - delta}};
    const SelectionResult r = select_mp(e, tri, cfg);
    CHECK(r.branch == "interpolated");
    CHECK(euclid(r.point, mean_point(e, tri, cfg.mp_tol)) <= 10 * delta);
  }
  const Net at = {Point{-1, 0}, Point{1, 0}, Point{0, 1}};
  CHECK(select_mp(e, at, cfg).branch == "mean_point");
}

TEST_CASE("empirical Lipschitz constants stay within the recurrence bounds") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  SelectionConfig cfg = config();
  cfg.mp_tol = cfg.hull_tol = 1e-7;
  cfg.cheb_tol = 1e-8;
  double mp_bound = 1.0, cheb_bound = 1.0;
  double prev = 0.0;
  for (std::size_t n = 2; n <= 4; ++n) {
    CAPTURE(n);
    const LipschitzReport mp =
        empirical_lipschitz(e, Selector::select_mp, n, 200, 0.5, 11, PerturbMode::unconstrained, cfg);
    const LipschitzReport ch = empirical_lipschitz(e, Selector::select_cheb, n, 200, 0.5, 11,
                                                   PerturbMode::unconstrained, cfg);
    CHECK(mp.max_ratio <= mp_bound + 0.2);
    CHECK(ch.max_ratio <= cheb_bound + 0.2);
    CHECK(mp.max_ratio <= 2.0 * n - 3.0 + 0.2);
    CHECK(mp.counted + mp.excluded == 200);
    CHECK(mp.p99 <= mp.max_ratio);
    MESSAGE("select_mp n=" << n << " measured " << mp.max_ratio << " (previous " << prev << ")");
    prev = mp.max_ratio;
    mp_bound = 2.0 + mp_bound;
    cheb_bound = 1.0 + 2.5 * cheb_bound;
  }
}

TEST_CASE("mean point selector is 1-Lipschitz below half the gap") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  SelectionConfig cfg = config();
  cfg.mp_tol = 1e-10;
  const LipschitzReport r = empirical_lipschitz(e, Selector::mean_point, 3, 200, 0.25, 12,
                                                PerturbMode::within_half_gap, cfg);
  CHECK(r.max_ratio <= 1.0 + 1e-3);
}

TEST_CASE("Chebyshev center ratio grows without bound on degenerate triples") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  const PairGenerator fam = coupled_triple_family(e, Point{-1, 0}, Point{1, 0});
  double prev = 0.0;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const NetPair p = fam(eps);
    const double disp = euclid(oracle::welzl(p.sigma).center, oracle::welzl(p.sigma_prime).center);
    const double ratio = disp / hausdorff(e, p.sigma, p.sigma_prime);
    CHECK(ratio > 2.0 * prev);
    prev = ratio;
  }
  CHECK(prev > 100.0);
}

TEST_CASE("estimator is deterministic and schedule independent") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  const SelectionConfig cfg = config();
  const LipschitzReport a = empirical_lipschitz(e, Selector::select_mp, 3, 100, 0.5, 99,
                                                PerturbMode::unconstrained, cfg, Exec::serial);
  const LipschitzReport b = empirical_lipschitz(e, Selector::select_mp, 3, 100, 0.5, 99,
                                                PerturbMode::unconstrained, cfg, Exec::parallel);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.worst_seed == b.worst_seed);
  REQUIRE(a.ratios.size() == b.ratios.size());
  for (std::size_t i = 0; i < a.ratios.size(); ++i)
    CHECK((a.ratios[i] == b.ratios[i] || (std::isnan(a.ratios[i]) && std::isnan(b.ratios[i]))));
  CHECK_THROWS_AS(empirical_lipschitz(e, Selector::select_mp, 3, 99, 0.5, 1,
                                      PerturbMode::unconstrained, cfg),
                  InputError);
  CHECK_THROWS_AS(empirical_lipschitz(e, Selector::select_mp, 3, 100, 0.0, 1,
                                      PerturbMode::unconstrained, cfg),
                  InputError);
}

TEST_CASE("subnet consistency") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  const SelectionConfig cfg = config();
  const Net pair = {Point{0, 0}, Point{1, 0.5}};
  for (double eps : {0.1, 0.01}) {
    const ConsistencyReport r = subnet_consistency_check(e, pair, 1, eps, cfg);
    CHECK(std::abs(r.max_displacement - eps / 2) <= 1e-15);
    CHECK(r.pass);
  }
  CHECK(subnet_consistency_check(e, pair, 0, 0.0, cfg).max_displacement == 0.0);
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const ConsistencyReport r = subnet_consistency_check(e, random_net(e, 3, rng), 0, 1e-3, cfg);
    CHECK(std::isfinite(r.constant));
    MESSAGE("n=3 consistency constant " << r.constant);
  }
  CHECK_THROWS_AS(subnet_consistency_check(e, {Point{0, 0}}, 0, 0.1, cfg), InputError);
  CHECK_THROWS_AS(subnet_consistency_check(e, pair, 2, 0.1, cfg), InputError);
}

TEST_CASE("nearly coincident points collapse") {
  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  const SelectionConfig cfg = config();
  const Net near = {Point{0, 0}, Point{1, 0}, Point{1 + 1e-12, 0}};
  CHECK(collapse_net(e, near, 1e-9).size() == 2);
  const SelectionResult r = select_mp(e, near, cfg);
  CHECK(r.branch == "midpoint");
  CHECK(euclid(r.point, Point{0.5, 0}) <= 1e-12);
}

TEST_CASE("selector names and configuration checks") {
  for (Selector s : {Selector::select_mp, Selector::select_cheb, Selector::mean_point, Selector::cheb})
    CHECK(parse_selector(selector_name(s)) == s);
  CHECK_THROWS_AS(parse_selector("median"), InputError);

  const GeodesicSpace e = GeodesicSpace::euclidean(2);
  SelectionConfig bad = config();
  bad.hull_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = config();
  bad.max_n = 9;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = config();
  bad.holder_constants[3] = -1.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = config();
  bad.max_n = 3;
  CHECK_THROWS_AS(select_mp(e, {Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}}, bad),
                  InputError);
  CHECK_THROWS_AS(select_mp(e, {}, config()), InputError);
  CHECK_THROWS_AS(select_mp(GeodesicSpace::l1(2), {Point{0, 0}, Point{1, 0}}, config()),
                  UnsupportedOperation);
}
