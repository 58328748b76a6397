#include "modlab/approx.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "modlab/errors.hpp"
#include "modlab/quadrature.hpp"
#include "modlab/simplex.hpp"

namespace modlab {

namespace {

constexpr int kNodesPerPanel = 8;
constexpr int kMaxExchangeIterations = 100;
constexpr int kMaxIrlsIterations = 50;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Discretization of [-1, 1]: points x, function values, Jacobi weight values
/// and quadrature weights.
struct Grid {
  std::vector<double> x;
  Eigen::VectorXd f;
  Eigen::VectorXd w;
  Eigen::VectorXd qw;
  Eigen::MatrixXd V;  // V(l, j) = T_j(x_l)
};

Grid make_grid(const FunctionDescriptor& f, int n, const JacobiWeight& w,
               bool sup_norm, int grid_size, const QuadratureConfig& quad) {
  QuadratureConfig gq = quad;
  gq.nodes_per_panel = kNodesPerPanel;
  gq.panels_per_side = std::max(1, (grid_size + 2 * kNodesPerPanel - 1) /
                                       (2 * kNodesPerPanel));
  std::vector<double> breaks = f.breakpoints;
  if (f.support) {
    if (f.support->lo > -1.0) breaks.push_back(f.support->lo);
    if (f.support->hi < 1.0) breaks.push_back(f.support->hi);
  }
  const EndpointExponents e = product_exponents(f, w);
  // Chebyshev-spaced panels resolve the residual oscillations, which crowd
  // toward +-1 like phi(x)/n.
  std::vector<double> panels = breaks;
  const int cheb = std::max(2, grid_size / kNodesPerPanel);
  for (int j = 1; j < cheb; ++j) panels.push_back(-std::cos(std::numbers::pi * j / cheb));
  std::vector<QuadraturePoint> pts = quadrature_points({-1.0, 1.0}, e, panels, gq);
  if (sup_norm) {
    const std::vector<double> mesh = graded_mesh({-1.0, 1.0}, e, gq);
    for (double b : mesh) pts.push_back({b, 0.0});
    for (int j = 0; j <= grid_size; ++j) {
      pts.push_back({-std::cos(std::numbers::pi * j / grid_size), 0.0});
    }
    for (double b : breaks) {
      if (b <= -1.0 || b >= 1.0) continue;
      pts.push_back({std::nextafter(b, -kInf), 0.0});
      pts.push_back({b, 0.0});
      pts.push_back({std::nextafter(b, kInf), 0.0});
    }
    std::sort(pts.begin(), pts.end(),
              [](const QuadraturePoint& a, const QuadraturePoint& b) { return a.x < b.x; });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const QuadraturePoint& a, const QuadraturePoint& b) {
                            return a.x == b.x;
                          }),
              pts.end());
  }
  Grid g;
  const int m = static_cast<int>(pts.size());
  g.x.resize(m);
  g.f.resize(m);
  g.w.resize(m);
  g.qw.resize(m);
  g.V.resize(m, n + 1);
  std::vector<double> t(n + 1);
  for (int l = 0; l < m; ++l) {
    const double x = pts[l].x;
    g.x[l] = x;
    g.f(l) = f(x);
    g.w(l) = w(x);
    g.qw(l) = pts[l].weight;
    if (!std::isfinite(g.f(l)) || !std::isfinite(g.w(l))) {
      throw SingularityError("non-finite weighted sample at x = " + std::to_string(x));
    }
    chebyshev_values(x, n, t.data());
    for (int j = 0; j <= n; ++j) g.V(l, j) = t[j];
  }
  return g;
}

ChebyshevPoly make_poly(const Eigen::VectorXd& c, int n) {
  std::vector<double> coeffs(c.data(), c.data() + c.size());
  return ChebyshevPoly(std::move(coeffs), n);
}

Eigen::VectorXd weighted_lsq(const Grid& g, const Eigen::VectorXd& weights) {
  const Eigen::VectorXd s = weights.cwiseSqrt();
  const Eigen::MatrixXd A = s.asDiagonal() * g.V;
  const Eigen::VectorXd b = s.cwiseProduct(g.f);
  return A.colPivHouseholderQr().solve(b);
}

double lq_objective(const Grid& g, const Eigen::VectorXd& mu, const Eigen::VectorXd& c,
                    double q) {
  const Eigen::VectorXd r = g.f - g.V * c;
  double s = 0.0;
  for (int l = 0; l < r.size(); ++l) s += mu(l) * std::pow(std::abs(r(l)), q);
  return s;
}

int alternation_count(const Eigen::VectorXd& r) {
  const double peak = r.cwiseAbs().maxCoeff();
  if (peak <= 0.0) return 0;
  int count = 0;
  int last_sign = 0;
  for (int l = 0; l < r.size(); ++l) {
    if (std::abs(r(l)) < 0.99 * peak) continue;
    const int s = r(l) > 0.0 ? 1 : -1;
    if (s != last_sign) {
      ++count;
      last_sign = s;
    }
  }
  return count;
}

struct SupSolution {
  Eigen::VectorXd c;
  double levelled = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Discrete weighted minimax by multi-point exchange.
SupSolution exchange(const Grid& g, int n) {
  const int m = static_cast<int>(g.x.size());
  const int refs = n + 2;
  SupSolution out;
  out.c = Eigen::VectorXd::Zero(n + 1);
  if (m < refs) return out;
  std::vector<int> ref(refs);
  for (int i = 0; i < refs; ++i) {
    const double target = -std::cos(std::numbers::pi * (i + 0.5) / refs);
    ref[i] = static_cast<int>(std::lower_bound(g.x.begin(), g.x.end(), target) - g.x.begin());
    ref[i] = std::clamp(ref[i], 0, m - 1);
  }
  for (int i = 1; i < refs; ++i) ref[i] = std::max(ref[i], ref[i - 1] + 1);
  for (int i = refs - 1; i >= 0; --i) {
    ref[i] = std::min(ref[i], (i == refs - 1) ? m - 1 : ref[i + 1] - 1);
  }
  const double scale = g.w.cwiseProduct(g.f).cwiseAbs().maxCoeff();
  double previous_levelled = -1.0;
  std::vector<int> previous_ref;
  for (int it = 1; it <= kMaxExchangeIterations; ++it) {
    out.iterations = it;
    Eigen::MatrixXd M(refs, refs);
    Eigen::VectorXd rhs(refs);
    for (int i = 0; i < refs; ++i) {
      const int l = ref[i];
      M.row(i).head(n + 1) = g.w(l) * g.V.row(l);
      M(i, n + 1) = (i % 2 == 0) ? 1.0 : -1.0;
      rhs(i) = g.w(l) * g.f(l);
    }
    const Eigen::VectorXd sol = M.partialPivLu().solve(rhs);
    if (!sol.allFinite()) return out;
    out.c = sol.head(n + 1);
    const double levelled = std::abs(sol(n + 1));
    out.levelled = levelled;
    const Eigen::VectorXd r = g.w.cwiseProduct(g.f - g.V * out.c);
    const double peak = r.cwiseAbs().maxCoeff();
    // Relative test plus a floor for rounding in evaluating w f.
    if (peak - levelled <= 1e-11 * peak + 1e-13 * scale) {
      out.converged = true;
      return out;
    }
    // Stall: the levelled error must increase strictly.
    if (levelled < previous_levelled * (1.0 - 1e-12)) return out;
    previous_levelled = levelled;
    // Extremum of each run of constant sign.
    std::vector<int> ext;
    int l = 0;
    while (l < m) {
      if (std::abs(r(l)) < 1e-300) {
        ++l;
        continue;
      }
      const bool pos = r(l) > 0.0;
      int best = l;
      while (l < m && (std::abs(r(l)) < 1e-300 || (r(l) > 0.0) == pos)) {
        if (std::abs(r(l)) > std::abs(r(best))) best = l;
        ++l;
      }
      ext.push_back(best);
    }
    // Drop runs whose extremum is below the levelled error, merging
    // neighbours of equal sign.
    std::vector<int> kept;
    const double keep_level = levelled * (1.0 - 1e-9) - 1e-13 * scale;
    for (int e : ext) {
      if (std::abs(r(e)) < keep_level) continue;
      if (!kept.empty() && (r(kept.back()) > 0.0) == (r(e) > 0.0)) {
        if (std::abs(r(e)) > std::abs(r(kept.back()))) kept.back() = e;
      } else {
        kept.push_back(e);
      }
    }
    while (static_cast<int>(kept.size()) > refs) {
      const int size = static_cast<int>(kept.size());
      if (size - refs == 1) {
        if (std::abs(r(kept.front())) < std::abs(r(kept.back()))) {
          kept.erase(kept.begin());
        } else {
          kept.pop_back();
        }
        continue;
      }
      int smallest = 0;
      for (int i = 1; i < size; ++i) {
        if (std::abs(r(kept[i])) < std::abs(r(kept[smallest]))) smallest = i;
      }
      if (smallest == 0 || smallest == size - 1) {
        kept.erase(kept.begin() + smallest);
        continue;
      }
      const int neighbour =
          std::abs(r(kept[smallest - 1])) < std::abs(r(kept[smallest + 1])) ? smallest - 1
                                                                           : smallest + 1;
      const int first = std::min(smallest, neighbour);
      kept.erase(kept.begin() + first, kept.begin() + first + 2);
    }
    if (static_cast<int>(kept.size()) < refs) return out;
    if (kept == previous_ref || kept == ref) return out;
    previous_ref = ref;
    ref = kept;
  }
  return out;
}

struct LpFit {
  Eigen::VectorXd c;
  double dual_objective = 0.0;
  int iterations = 0;
};

LpFit sup_lp(const Grid& g, int n) {
  const int m = static_cast<int>(g.x.size());
  LinearProgram lp;
  lp.A.resize(n + 2, 2 * m);
  lp.b = Eigen::VectorXd::Zero(n + 2);
  lp.b(n + 1) = 1.0;
  lp.c.resize(2 * m);
  lp.upper = Eigen::VectorXd::Constant(2 * m, kInf);
  for (int l = 0; l < m; ++l) {
    const Eigen::VectorXd col = g.w(l) * g.V.row(l).transpose();
    lp.A.col(l).head(n + 1) = col;
    lp.A.col(m + l).head(n + 1) = -col;
    lp.A(n + 1, l) = 1.0;
    lp.A(n + 1, m + l) = 1.0;
    lp.c(l) = g.w(l) * g.f(l);
    lp.c(m + l) = -g.w(l) * g.f(l);
  }
  const LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::optimal) {
    throw SolverStallError("minimax linear program did not reach optimality");
  }
  return {s.duals.head(n + 1), s.objective, s.iterations};
}

LpFit l1_lp(const Grid& g, int n) {
  const int m = static_cast<int>(g.x.size());
  const Eigen::VectorXd mu = g.qw.cwiseProduct(g.w);
  LinearProgram lp;
  lp.A.resize(n + 1, m);
  lp.c.resize(m);
  // Variables s_l in [0, mu_l], with v_l = 2 s_l / mu_l - 1 the dual
  // multipliers of the L1 problem.
  lp.b = Eigen::VectorXd::Zero(n + 1);
  for (int l = 0; l < m; ++l) {
    lp.A.col(l) = g.V.row(l).transpose();
    lp.c(l) = g.f(l);
    lp.b += 0.5 * mu(l) * lp.A.col(l);
  }
  lp.upper = mu;
  const LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::optimal) {
    throw SolverStallError("L1 linear program did not reach optimality");
  }
  // Objective in terms of v = 2s - 1 in [-1, 1].
  return {s.duals, 2.0 * s.objective - mu.dot(lp.c), s.iterations};
}

double relative_gap(double primal, double dual) {
  return std::abs(primal - dual) / std::max(std::abs(primal), 1e-300);
}

ApproxResult finish(const FunctionDescriptor& f, ApproxResult r, const JacobiWeight& w,
                    NormOrder q, const QuadratureConfig& quad) {
  r.poly = r.poly.trimmed();
  r.error = residual_norm(f, r.poly, w, q, quad);
  const double zero = weighted_norm(f, w, q, {-1.0, 1.0}, quad);
  if (zero <= r.error) {
    r.poly = ChebyshevPoly(std::vector<double>{0.0}, r.poly.degree_bound);
    r.error = zero;
  }
  return r;
}

void check_request(int n, int grid_size) {
  if (n < 0) throw InvalidArgumentError("degree n must be >= 0");
  if (grid_size < 8 * (n + 1)) {
    throw InvalidArgumentError("grid size must be >= 8(n+1)");
  }
}

}  // namespace

std::string to_string(ApproxSolver solver) {
  switch (solver) {
    case ApproxSolver::least_squares: return "least_squares";
    case ApproxSolver::linear_program: return "linear_program";
    case ApproxSolver::exchange: return "exchange";
    case ApproxSolver::irls: return "irls";
  }
  return "unknown";
}

int default_grid_size(int n) { return std::max(20 * (n + 1), 512); }

double residual_norm(const FunctionDescriptor& f, const ChebyshevPoly& p,
                     const JacobiWeight& w, NormOrder q, const QuadratureConfig& quad) {
  FunctionDescriptor r;
  r.eval = [&f, &p](double x) { return f(x) - p(x); };
  r.endpoint_exponents = {std::min(f.endpoint_exponents.minus, 0.0),
                          std::min(f.endpoint_exponents.plus, 0.0)};
  r.breakpoints = f.breakpoints;
  if (f.support) {
    if (f.support->lo > -1.0) r.breakpoints.push_back(f.support->lo);
    if (f.support->hi < 1.0) r.breakpoints.push_back(f.support->hi);
  }
  return weighted_norm(r, w, q, {-1.0, 1.0}, quad);
}

ApproxResult best_approx(const FunctionDescriptor& f, int n, const JacobiWeight& w,
                         NormOrder q, int grid_size, const QuadratureConfig& quad) {
  if (grid_size == 0) grid_size = default_grid_size(n);
  check_request(n, grid_size);
  if (!q.is_infinite() && q.value() != 1.0 && q.value() != 2.0) {
    return irls_approx(f, n, w, q, grid_size, quad);
  }
  const Grid g = make_grid(f, n, w, q.is_infinite(), grid_size, quad);
  ApproxResult r;
  r.grid_size = static_cast<int>(g.x.size());
  r.residual_stats.duality_gap = kNaN;

  if (q.value() == 2.0) {
    const Eigen::VectorXd mu = g.qw.cwiseProduct(g.w.cwiseAbs2());
    const Eigen::VectorXd c = weighted_lsq(g, mu);
    r.poly = make_poly(c, n);
    r.solver = ApproxSolver::least_squares;
    r.iterations = 1;
    r.residual_stats.discrete_objective = std::sqrt(lq_objective(g, mu, c, 2.0));
    return finish(f, r, w, q, quad);
  }

  if (q.value() == 1.0) {
    const LpFit fit = l1_lp(g, n);
    const Eigen::VectorXd mu = g.qw.cwiseProduct(g.w);
    r.poly = make_poly(fit.c, n);
    r.solver = ApproxSolver::linear_program;
    r.iterations = fit.iterations;
    r.residual_stats.discrete_objective = lq_objective(g, mu, fit.c, 1.0);
    r.residual_stats.duality_gap =
        relative_gap(r.residual_stats.discrete_objective, fit.dual_objective);
    return finish(f, r, w, q, quad);
  }

  // q = inf.
  const SupSolution ex = exchange(g, n);
  Eigen::VectorXd c = ex.c;
  r.solver = ApproxSolver::exchange;
  r.iterations = ex.iterations;
  r.residual_stats.levelled_error = ex.levelled;
  auto sup_objective = [&](const Eigen::VectorXd& coeffs) {
    return g.w.cwiseProduct(g.f - g.V * coeffs).cwiseAbs().maxCoeff();
  };
  if (!ex.converged || !w.is_unweighted()) {
    const LpFit fit = sup_lp(g, n);
    const double ex_obj = ex.converged ? sup_objective(c) : kInf;
    const double lp_obj = sup_objective(fit.c);
    if (!ex.converged || lp_obj < ex_obj) {
      c = fit.c;
      r.solver = ApproxSolver::linear_program;
    }
    r.iterations += fit.iterations;
    r.residual_stats.duality_gap = relative_gap(sup_objective(c), fit.dual_objective);
  }
  const Eigen::VectorXd res = g.w.cwiseProduct(g.f - g.V * c);
  r.poly = make_poly(c, n);
  r.residual_stats.discrete_objective = res.cwiseAbs().maxCoeff();
  r.residual_stats.alternation_count = alternation_count(res);
  return finish(f, r, w, q, quad);
}

ApproxResult irls_approx(const FunctionDescriptor& f, int n, const JacobiWeight& w,
                         NormOrder q, int grid_size, const QuadratureConfig& quad) {
  if (grid_size == 0) grid_size = default_grid_size(n);
  check_request(n, grid_size);
  if (q.is_infinite() || q.value() <= 1.0) {
    throw InvalidArgumentError("IRLS needs a finite q > 1");
  }
  const double qv = q.value();
  const Grid g = make_grid(f, n, w, false, grid_size, quad);
  const Eigen::VectorXd mu =
      g.qw.cwiseProduct(g.w.cwiseAbs().array().pow(qv).matrix());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  double objective = lq_objective(g, mu, c, qv);
  ApproxResult r;
  r.grid_size = static_cast<int>(g.x.size());
  r.solver = ApproxSolver::irls;
  r.residual_stats.duality_gap = kNaN;
  for (int it = 1; it <= kMaxIrlsIterations; ++it) {
    r.iterations = it;
    const Eigen::VectorXd res = g.f - g.V * c;
    const double floor = std::max(1e-12 * res.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::VectorXd omega(res.size());
    for (int l = 0; l < res.size(); ++l) {
      omega(l) = mu(l) * std::pow(std::max(std::abs(res(l)), floor), qv - 2.0);
    }
    const Eigen::VectorXd target = weighted_lsq(g, omega);
    // Newton step on sum mu |r|^q, safeguarded by backtracking.
    const Eigen::VectorXd step = (target - c) / (qv - 1.0);
    double alpha = 1.0;
    Eigen::VectorXd next = c + step;
    double next_obj = lq_objective(g, mu, next, qv);
    for (int ls = 0; ls < 40 && next_obj > objective; ++ls) {
      alpha *= 0.5;
      next = c + alpha * step;
      next_obj = lq_objective(g, mu, next, qv);
    }
    const double change = (next - c).norm();
    const double size = std::max(next.norm(), 1e-300);
    if (next_obj <= objective) {
      c = next;
      objective = next_obj;
    }
    if (change <= 1e-9 * size) {
      r.poly = make_poly(c, n);
      r.residual_stats.discrete_objective = std::pow(objective, 1.0 / qv);
      return finish(f, r, w, q, quad);
    }
  }
  throw SolverStallError("IRLS did not converge within 50 iterations for q = " +
                         q.to_string());
}

RemezRatio remez_ratio(const ChebyshevPoly& p, const std::optional<Interval>& excluded,
                       const JacobiWeight& w, NormOrder q, const QuadratureConfig& quad) {
  FunctionDescriptor d = p.descriptor();
  RemezRatio out;
  if (!excluded || !(excluded->lo < excluded->hi)) {
    if (weighted_norm(d, w, q, {-1.0, 1.0}, quad) == 0.0) {
      throw DivisionError("polynomial norm vanishes");
    }
    return out;
  }
  const double a = std::max(excluded->lo, -1.0);
  const double b = std::min(excluded->hi, 1.0);
  out.capacity = std::asin(b) - std::asin(a);
  d.breakpoints = {a, b};
  const double whole = weighted_norm(d, w, q, {-1.0, 1.0}, quad);
  const double left = a > -1.0 ? weighted_norm(d, w, q, {-1.0, a}, quad) : 0.0;
  const double right = b < 1.0 ? weighted_norm(d, w, q, {b, 1.0}, quad) : 0.0;
  double complement = 0.0;
  if (q.is_infinite()) {
    complement = std::max(left, right);
  } else {
    complement = std::pow(std::pow(left, q.value()) + std::pow(right, q.value()),
                          1.0 / q.value());
  }
  if (!(complement > 1e-300) || !std::isfinite(complement)) {
    throw DivisionError("norm off the excluded set underflows");
  }
  out.ratio = whole / complement;
  return out;
}

int sign_changes(const RealFunction& f, std::span<const double> grid) {
  int changes = 0;
  int last = 0;
  for (double x : grid) {
    const double v = f(x);
    if (std::abs(v) < 1e-12) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace modlab
