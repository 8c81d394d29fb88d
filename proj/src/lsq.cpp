#include "ddlab/lsq.hpp"

#include <cmath>
#include <stdexcept>

namespace ddlab {

namespace {

Eigen::VectorXd clamp(const Eigen::VectorXd& p, const Eigen::VectorXd& lo,
                      const Eigen::VectorXd& hi) {
  return p.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

LmResult lm_fit(const ResidualFn& fn, Eigen::VectorXd p0, const Eigen::VectorXd& lower,
                const Eigen::VectorXd& upper, const LmOptions& opt) {
  const int np = static_cast<int>(p0.size());
  if (lower.size() != np || upper.size() != np)
    throw std::invalid_argument("bound size mismatch");
  for (int i = 0; i < np; ++i)
    if (!(lower[i] <= upper[i])) throw std::invalid_argument("lower > upper bound");

  LmResult res;
  Eigen::VectorXd p = clamp(p0, lower, upper);
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  fn(p, r, &J);
  if (J.rows() != r.size() || J.cols() != np)
    throw std::invalid_argument("jacobian shape mismatch");
  double cost = r.squaredNorm();
  double lambda = opt.lambda0;

  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-30);
      Eigen::VectorXd step = A.ldlt().solve(-g);
      Eigen::VectorXd trial = clamp(p + step, lower, upper);
      Eigen::VectorXd rt;
      fn(trial, rt, nullptr);
      double ct = rt.squaredNorm();
      if (ct < cost) {
        double dp = (trial - p).cwiseAbs().maxCoeff();
        double dc = cost - ct;
        p = trial;
        cost = ct;
        lambda = std::max(lambda / 3.0, 1e-14);
        fn(p, r, &J);
        improved = true;
        if (dc <= opt.ftol * std::max(cost, 1e-300) ||
            dp <= opt.xtol * (1.0 + p.cwiseAbs().maxCoeff())) {
          res.converged = true;
        }
        break;
      }
      lambda *= 3.0;
      if (lambda > 1e14) break;
    }
    if (!improved) {
      res.converged = true;  // stationary within damping budget
      res.message = "no further decrease";
      break;
    }
    if (res.converged) break;
  }
  if (iter == opt.max_iter) res.message = "iteration budget exhausted";

  res.params = p;
  res.cost = cost;
  res.n_iter = iter;
  Eigen::MatrixXd JtJ = J.transpose() * J;
  // pseudo-inverse so blind parameters report huge, not NaN, uncertainty
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(JtJ, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd inv = svd.singularValues();
  for (int i = 0; i < inv.size(); ++i)
    inv[i] = inv[i] > 1e-300 ? 1.0 / inv[i] : 1e300;
  res.covariance = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return res;
}

}  // namespace ddlab
