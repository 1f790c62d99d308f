#include "sellab/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace sellab {

namespace {

constexpr double kPivotEps = 1e-11;

struct Tableau {
  std::size_t rows = 0, cols = 0;  // cols excludes the right-hand side
  std::vector<std::vector<double>> a;
  std::vector<std::size_t> basis;

  double& rhs(std::size_t i) { return a[i][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = a[r][c];
    for (double& v : a[r]) v /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = a[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    basis[r] = c;
  }
};

enum class RunStatus { optimal, unbounded, cap };

RunStatus run_simplex(Tableau& t, const std::vector<double>& cost,
                      const std::vector<bool>& allowed) {
  for (int iter = 0; iter < 50000; ++iter) {
    std::size_t enter = t.cols;
    for (std::size_t j = 0; j < t.cols && enter == t.cols; ++j) {
      if (!allowed[j]) continue;
      double rc = cost[j];
      for (std::size_t i = 0; i < t.rows; ++i) rc -= cost[t.basis[i]] * t.a[i][j];
      if (rc < -1e-12) enter = j;
    }
    if (enter == t.cols) return RunStatus::optimal;
    std::size_t leave = t.rows;
    double best = 0.0;
    for (std::size_t i = 0; i < t.rows; ++i) {
      if (t.a[i][enter] <= kPivotEps) continue;
      const double ratio = t.rhs(i) / t.a[i][enter];
      if (leave == t.rows || ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && t.basis[i] < t.basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == t.rows) return RunStatus::unbounded;
    t.pivot(leave, enter);
  }
  return RunStatus::cap;
}

}  // namespace

LpResult solve_lp(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b) {
  const std::size_t m = A.size(), d = c.size();
  if (b.size() != m) throw InputError("solve_lp: A and b differ in row count");
  for (const auto& row : A)
    if (row.size() != d) throw InputError("solve_lp: row length does not match c");
  // Columns: x+ (d), x- (d), slacks (m), artificials (m).
  Tableau t;
  t.rows = m;
  t.cols = 2 * d + 2 * m;
  t.a.assign(m, std::vector<double>(t.cols + 1, 0.0));
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      t.a[i][j] = sign * A[i][j];
      t.a[i][d + j] = -sign * A[i][j];
    }
    t.a[i][2 * d + i] = sign;
    t.a[i][2 * d + m + i] = 1.0;
    t.a[i][t.cols] = sign * b[i];
    t.basis[i] = 2 * d + m + i;
  }
  const std::size_t art0 = 2 * d + m;
  std::vector<double> cost1(t.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) cost1[art0 + i] = 1.0;
  std::vector<bool> all(t.cols, true);
  LpResult res;
  if (run_simplex(t, cost1, all) == RunStatus::cap) return res;
  double infeas = 0.0, bscale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] >= art0) infeas += t.rhs(i);
    bscale = std::max(bscale, std::abs(b[i]));
  }
  if (infeas > 1e-9 * bscale) return res;
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < art0) continue;
    for (std::size_t j = 0; j < art0; ++j)
      if (std::abs(t.a[i][j]) > 1e-9) {
        t.pivot(i, j);
        break;
      }
  }
  std::vector<double> cost2(t.cols, 0.0);
  for (std::size_t j = 0; j < d; ++j) cost2[j] = c[j], cost2[d + j] = -c[j];
  std::vector<bool> allowed(t.cols, true);
  for (std::size_t i = 0; i < m; ++i) allowed[art0 + i] = false;
  const RunStatus st = run_simplex(t, cost2, allowed);
  if (st == RunStatus::unbounded) {
    res.status = LpStatus::unbounded;
    return res;
  }
  if (st == RunStatus::cap) return res;
  std::vector<double> y(t.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) y[t.basis[i]] = t.rhs(i);
  res.x.assign(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) res.x[j] = y[j] - y[d + j];
  res.value = 0.0;
  for (std::size_t j = 0; j < d; ++j) res.value += c[j] * res.x[j];
  res.status = LpStatus::optimal;
  return res;
}

std::vector<Point> enumerate_vertices(const std::vector<std::vector<double>>& A,
                                      const std::vector<double>& b, double tol) {
  if (A.empty()) return {};
  const std::size_t d = A[0].size();
  if (d == 0 || d > 4) throw InputError("enumerate_vertices: dimension must be in [1, 4]");
  for (std::size_t j = 0; j < 2 * d; ++j) {
    std::vector<double> c(d);
    c[j / 2] = j % 2 ? 1.0 : -1.0;
    const LpResult r = solve_lp(c, A, b);
    if (r.status == LpStatus::infeasible) return {};
    if (r.status == LpStatus::unbounded)
      throw InputError("enumerate_vertices: polyhedron is unbounded");
  }
  std::vector<std::size_t> tight;
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::vector<double> neg(d);
    for (std::size_t j = 0; j < d; ++j) neg[j] = -A[i][j];
    const LpResult r = solve_lp(neg, A, b);
    if (r.status == LpStatus::infeasible) return {};
    if (r.status == LpStatus::unbounded)
      throw InputError("enumerate_vertices: polyhedron is unbounded");
    if (-r.value >= b[i] - tol * (1.0 + std::abs(b[i]))) tight.push_back(i);
  }
  std::vector<Point> out;
  if (tight.size() < d) return out;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t m = tight.size();
  for (;;) {
    Eigen::MatrixXd M(d, d);
    Eigen::VectorXd r(d);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t j = 0; j < d; ++j) M(k, j) = A[tight[idx[k]]][j];
      r[k] = b[tight[idx[k]]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-10);
    if (lu.rank() == static_cast<Eigen::Index>(d)) {
      const Eigen::VectorXd x = lu.solve(r);
      bool feasible = true;
      for (std::size_t i = 0; i < A.size() && feasible; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += A[i][j] * x[j];
        feasible = s <= b[i] + tol * (1.0 + std::abs(b[i]));
      }
      if (feasible) {
        Point p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = x[j];
        bool dup = false;
        for (const Point& q : out) {
          double e = 0.0;
          for (std::size_t j = 0; j < d; ++j) e = std::max(e, std::abs(p[j] - q[j]));
          if (e <= 1e-8) {
            dup = true;
            break;
          }
        }
        if (!dup) out.push_back(p);
      }
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == m - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sellab
