#pragma once

#include <functional>

#include <Eigen/Dense>

namespace gcim {

// Value at x; writes the gradient into g (already sized).
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& g)>;

struct BfgsOptions {
  int max_rounds = 200;
  double gradient_tol = 1e-8;  // on ‖g‖∞
  double c1 = 1e-4;
  double c2 = 0.9;
};

enum class BfgsStatus { Converged, BudgetExhausted, LineSearchStalled };

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  Eigen::VectorXd gradient;
  int rounds = 0;       // accepted quasi-Newton steps
  int evaluations = 0;
  BfgsStatus status = BfgsStatus::Converged;

  bool converged() const { return status == BfgsStatus::Converged; }
};

// Dense BFGS on the inverse Hessian with a strong-Wolfe line search. The returned
// value never exceeds the value at x0.
BfgsResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0, const BfgsOptions& opts = {});

const char* to_string(BfgsStatus s);

}  // namespace gcim
