#include "modlab/simplex.hpp"

#include <cmath>
#include <limits>

#include "modlab/errors.hpp"

namespace modlab {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr int kReinvertEvery = 100;

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : rows_(static_cast<int>(lp.A.rows())),
        structural_(static_cast<int>(lp.A.cols())),
        cols_(structural_ + rows_),
        options_(options),
        t_(rows_, cols_),
        full_(rows_, cols_),
        b_(rows_),
        norms_(cols_),
        rhs_(rows_),
        upper_(cols_),
        at_upper_(cols_, false),
        basis_(rows_),
        row_of_(cols_, -1) {
    const double scale = std::max(1.0, lp.A.cwiseAbs().maxCoeff());
    tol_ = options.tolerance * scale;
    t_.setZero();
    for (int i = 0; i < rows_; ++i) {
      const double sign = lp.b(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(structural_) = sign * lp.A.row(i);
      t_(i, structural_ + i) = 1.0;
      rhs_(i) = sign * lp.b(i);
      basis_[i] = structural_ + i;
      row_of_[structural_ + i] = i;
    }
    for (int j = 0; j < structural_; ++j) upper_(j) = lp.upper(j);
    for (int j = structural_; j < cols_; ++j) upper_(j) = kInfinity;
    full_ = t_;
    b_ = rhs_;
    for (int j = 0; j < cols_; ++j) norms_(j) = std::max(full_.col(j).norm(), 1e-300);
  }

  /// Recomputes B^{-1} A and the basic values from the original data.
  void reinvert() {
    Eigen::MatrixXd B(rows_, rows_);
    for (int i = 0; i < rows_; ++i) B.col(i) = full_.col(basis_[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Eigen::VectorXd r = b_;
    for (int j = 0; j < cols_; ++j) {
      if (row_of_[j] < 0 && at_upper_[j]) r -= upper_(j) * full_.col(j);
    }
    t_ = lu.solve(full_);
    rhs_ = lu.solve(r);
    for (int i = 0; i < rows_; ++i) {
      const int j = basis_[i];
      if (rhs_(i) < 0.0 && rhs_(i) > -1e-12) rhs_(i) = 0.0;
      if (std::isfinite(upper_(j)) && rhs_(i) > upper_(j) && rhs_(i) < upper_(j) + 1e-12) {
        rhs_(i) = upper_(j);
      }
    }
  }

  /// Runs the simplex on objective `cost` (length cols_); columns flagged in
  /// `barred` never enter.
  LpStatus optimize(const Eigen::VectorXd& cost, const std::vector<bool>& barred,
                    int& iterations) {
    Eigen::VectorXd d(cols_);
    auto price = [&]() {
      Eigen::VectorXd cb(rows_);
      for (int i = 0; i < rows_; ++i) cb(i) = cost(basis_[i]);
      d = cost - t_.transpose() * cb;
    };
    price();
    int degenerate_run = 0;
    int since_reinvert = 0;
    bool fresh = false;
    while (iterations < options_.max_iterations) {
      if (since_reinvert >= kReinvertEvery) {
        reinvert();
        price();
        since_reinvert = 0;
        fresh = true;
      }
      const bool bland = degenerate_run >= options_.degenerate_switch;
      int enter = -1;
      double best = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (row_of_[j] >= 0 || barred[j]) continue;
        const double dj = d(j);
        const double tol = tol_ * std::max(1.0, norms_(j));
        const bool improving = at_upper_[j] ? dj < -tol : dj > tol;
        if (!improving) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (std::abs(dj) / norms_(j) > best) {
          best = std::abs(dj) / norms_(j);
          enter = j;
        }
      }
      if (enter < 0) {
        if (fresh) return LpStatus::optimal;
        // Confirm optimality on freshly factored data.
        reinvert();
        price();
        since_reinvert = 0;
        fresh = true;
        continue;
      }
      ++iterations;
      ++since_reinvert;
      fresh = false;
      const double dir = at_upper_[enter] ? -1.0 : 1.0;
      // Ratio test: basic x_B(i) changes by -dir * theta * t(i, enter).
      double theta = upper_(enter);
      int leave_row = -1;
      bool leave_to_upper = false;
      for (int i = 0; i < rows_; ++i) {
        const double a = dir * t_(i, enter);
        if (std::abs(a) <= 1e-11) continue;
        const int bvar = basis_[i];
        double limit = kInfinity;
        bool to_upper = false;
        if (a > 0.0) {
          limit = std::max(rhs_(i), 0.0) / a;
        } else if (std::isfinite(upper_(bvar))) {
          limit = std::max(upper_(bvar) - rhs_(i), 0.0) / (-a);
          to_upper = true;
        }
        if (limit < theta - 1e-15 ||
            (leave_row >= 0 && limit <= theta + 1e-15 &&
             (bland ? bvar < basis_[leave_row]
                    : std::abs(t_(i, enter)) > std::abs(t_(leave_row, enter))))) {
          theta = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) return LpStatus::unbounded;
      degenerate_run = theta <= 1e-14 ? degenerate_run + 1 : 0;
      rhs_ -= dir * theta * t_.col(enter);
      if (leave_row < 0) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }
      const int leaving = basis_[leave_row];
      const double entering_value = at_upper_[enter] ? upper_(enter) - theta : theta;
      pivot(leave_row, enter);
      rhs_(leave_row) = entering_value;
      row_of_[leaving] = -1;
      at_upper_[leaving] = leave_to_upper;
      at_upper_[enter] = false;
      // Objective row update.
      d -= d(enter) * t_.row(leave_row).transpose();
    }
    return LpStatus::iteration_limit;
  }

  /// Pivots zero-level artificial variables out of the basis where possible.
  void drive_out_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) continue;
      int best = -1;
      double mag = 1e-9;
      for (int j = 0; j < structural_; ++j) {
        if (row_of_[j] >= 0) continue;
        if (std::abs(t_(i, j)) > mag) {
          mag = std::abs(t_(i, j));
          best = j;
        }
      }
      if (best < 0) continue;
      const int leaving = basis_[i];
      const double value = at_upper_[best] ? upper_(best) : 0.0;
      pivot(i, best);
      rhs_(i) = value;
      row_of_[leaving] = -1;
      at_upper_[best] = false;
    }
  }

  [[nodiscard]] Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(cols_);
    for (int j = 0; j < cols_; ++j) {
      if (row_of_[j] < 0 && at_upper_[j]) x(j) = upper_(j);
    }
    for (int i = 0; i < rows_; ++i) x(basis_[i]) = rhs_(i);
    return x;
  }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int structural() const { return structural_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] const std::vector<int>& basis() const { return basis_; }

 private:
  void pivot(int r, int enter) {
    const double p = t_(r, enter);
    t_.row(r) /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, enter);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = enter;
    row_of_[enter] = r;
  }

  int rows_;
  int structural_;
  int cols_;
  SimplexOptions options_;
  Eigen::MatrixXd t_;
  Eigen::MatrixXd full_;
  Eigen::VectorXd b_;
  Eigen::VectorXd norms_;
  Eigen::VectorXd rhs_;
  Eigen::VectorXd upper_;
  std::vector<bool> at_upper_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
  double tol_ = 1e-10;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  const int m = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  if (lp.b.size() != m || lp.c.size() != n || lp.upper.size() != n) {
    throw InvalidArgumentError("linear program dimensions do not match");
  }
  Tableau tab(lp, options);
  LpSolution out;

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(tab.cols());
  for (int j = n; j < tab.cols(); ++j) phase1(j) = -1.0;
  std::vector<bool> barred(tab.cols(), false);
  LpStatus st = tab.optimize(phase1, barred, out.iterations);
  if (st != LpStatus::optimal) {
    out.status = st;
    return out;
  }
  Eigen::VectorXd x = tab.solution();
  const double infeasibility = x.tail(m).sum();
  if (infeasibility > 1e-8 * std::max(1.0, lp.b.cwiseAbs().maxCoeff())) {
    out.status = LpStatus::infeasible;
    return out;
  }
  tab.drive_out_artificials();
  for (int j = n; j < tab.cols(); ++j) barred[j] = true;
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(tab.cols());
  cost.head(n) = lp.c;
  st = tab.optimize(cost, barred, out.iterations);
  out.status = st;
  x = tab.solution();
  out.x = x.head(n);
  out.objective = lp.c.dot(out.x);

  std::vector<int> structural_basis;
  for (int j : tab.basis()) {
    if (j < n) structural_basis.push_back(j);
  }
  out.basis = structural_basis;
  const int nb = static_cast<int>(structural_basis.size());
  Eigen::MatrixXd bt(nb, m);
  Eigen::VectorXd cb(nb);
  for (int i = 0; i < nb; ++i) {
    bt.row(i) = lp.A.col(structural_basis[i]).transpose();
    cb(i) = lp.c(structural_basis[i]);
  }
  out.duals = nb > 0 ? Eigen::VectorXd(bt.colPivHouseholderQr().solve(cb))
                     : Eigen::VectorXd::Zero(m);
  return out;
}

}  // namespace modlab
