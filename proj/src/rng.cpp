#include "crossflow/rng.hpp"

namespace crossflow {

Eigen::MatrixXd random_orthogonal(Rng& rng, int n) {
  Eigen::MatrixXd g(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      g(r, c) = rng.gaussian();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) {
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  }
  return q;
}

}  // namespace crossflow
