#pragma once
#include <Eigen/Dense>
#include <functional>
#include <string>

namespace ddlab {

struct LmOptions {
  int max_iter = 200;
  double ftol = 1e-14;    // relative cost decrease
  double xtol = 1e-12;    // relative step size
  double lambda0 = 1e-3;  // initial damping
};

struct LmResult {
  Eigen::VectorXd params;
  Eigen::MatrixXd covariance;  // (J^T J)^-1 at the solution; caller scales
  double cost = 0.0;           // sum of squared residuals
  int n_iter = 0;
  bool converged = false;
  std::string message;
};

// fn fills r(p) and, when J is non-null, the Jacobian dr/dp. Residuals carry
// any weighting. Box bounds are enforced by clamping trial steps.
using ResidualFn =
    std::function<void(const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd* J)>;

LmResult lm_fit(const ResidualFn& fn, Eigen::VectorXd p0, const Eigen::VectorXd& lower,
                const Eigen::VectorXd& upper, const LmOptions& opt = {});

}  // namespace ddlab
