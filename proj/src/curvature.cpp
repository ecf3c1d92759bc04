#include "crossflow/curvature.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace crossflow {

namespace {

// Kn(A,D) = R(A, nu, nu, D) contracted from the flat component array.
Eigen::MatrixXd normal_jacobi_matrix(const CurvatureTensor& t, const Eigen::VectorXd& nu) {
  const int d = t.dim();
  const double* c = t.components().data();
  Eigen::MatrixXd kn = Eigen::MatrixXd::Zero(d, d);
  // Contract slot C with nu first, then slot B.
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double nb = nu[b];
      if (nb == 0.0) continue;
      const double* row = c + size_t((a * d + b) * d) * size_t(d);
      for (int cc = 0; cc < d; ++cc) {
        const double w = nb * nu[cc];
        if (w == 0.0) continue;
        const double* rr = row + size_t(cc) * size_t(d);
        for (int dd = 0; dd < d; ++dd) kn(a, dd) += w * rr[dd];
      }
    }
  }
  return kn;
}

// sum over all slots of R(K,I,J,P) hhat_{IJ} hhat_{KP}.
double interlaced_contraction(const CurvatureTensor& t, const Eigen::MatrixXd& hhat) {
  const int d = t.dim();
  const double* c = t.components().data();
  const double* h = hhat.data();  // column-major, symmetric
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    const double* hk = h + size_t(k) * size_t(d);  // hhat(., k) == hhat(k, .)
    for (int i = 0; i < d; ++i) {
      const double* blk = c + size_t((k * d + i) * d) * size_t(d);
      const double* hi = h + size_t(i) * size_t(d);
      double w = 0.0;
      for (int j = 0; j < d; ++j) {
        const double* rr = blk + size_t(j) * size_t(d);
        double acc = 0.0;
        for (int p = 0; p < d; ++p) acc += rr[p] * hk[p];
        w += hi[j] * acc;  // hhat(i,j) * sum_p R(k,i,j,p) hhat(k,p)
      }
      s += w;
    }
  }
  return s;
}

}  // namespace

CurvatureTensor::CurvatureTensor(int dim, std::vector<double> components, double einstein)
    : dim_(dim), c_(std::move(components)), einstein_(einstein) {
  ricci_ = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int a = 0; a < dim_; ++a) {
    for (int dd = 0; dd < dim_; ++dd) {
      double s = 0.0;
      for (int b = 0; b < dim_; ++b) s += at(a, b, b, dd);
      ricci_(a, dd) = s;
    }
  }
}

CurvatureTensor curvature_tensor(const AmbientSpace& space) {
  const int d = space.dim();
  const auto structures = structure_matrices(space);
  std::vector<double> comp(size_t(d) * d * d * d, 0.0);

  auto delta = [](int x, int y) { return x == y ? 1.0 : 0.0; };
  size_t idx = 0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        for (int dd = 0; dd < d; ++dd, ++idx) {
          double v = delta(b, c) * delta(a, dd) - delta(a, c) * delta(b, dd);
          for (const auto& J : structures) {
            // <J e_x, e_y> = J(y, x)
            v += J(c, b) * J(dd, a) - J(c, a) * J(dd, b) - 2.0 * J(b, a) * J(dd, c);
          }
          comp[idx] = v;
        }
      }
    }
  }
  return CurvatureTensor(d, std::move(comp), space.einstein);
}

double sectional_curvature(const CurvatureTensor& tensor,
                           const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const int d = tensor.dim();
  if (X.size() != d || Y.size() != d) {
    throw std::invalid_argument("sectional_curvature: vector/tensor dimension mismatch");
  }
  const double xx = X.squaredNorm();
  const double yy = Y.squaredNorm();
  const double xy = X.dot(Y);
  const double gram = xx * yy - xy * xy;
  if (gram <= 1e-12 * xx * yy || xx == 0.0 || yy == 0.0) {
    throw std::invalid_argument("sectional_curvature: X, Y linearly dependent");
  }
  // R(X, Y, Y, X): contract slots (B,C) with Y, then (A,D) with X.
  const double* c = tensor.components().data();
  double num = 0.0;
  for (int a = 0; a < d; ++a) {
    const double xa = X[a];
    if (xa == 0.0) continue;
    for (int b = 0; b < d; ++b) {
      const double yb = Y[b];
      if (yb == 0.0) continue;
      const double* blk = c + size_t((a * d + b) * d) * size_t(d);
      for (int cc = 0; cc < d; ++cc) {
        const double w = xa * yb * Y[cc];
        if (w == 0.0) continue;
        const double* rr = blk + size_t(cc) * size_t(d);
        double acc = 0.0;
        for (int dd = 0; dd < d; ++dd) acc += rr[dd] * X[dd];
        num += w * acc;
      }
    }
  }
  return num / gram;
}

void fill_hopf_angles(const AmbientSpace& space, FrameConfig& frame) {
  const auto structures = structure_matrices(space);
  const int m = frame.m();
  frame.hopf_angles.resize(int(structures.size()), m);
  for (size_t s = 0; s < structures.size(); ++s) {
    const Eigen::VectorXd jn = structures[s] * frame.normal;
    for (int i = 0; i < m; ++i) {
      frame.hopf_angles(int(s), i) = std::abs(jn.dot(frame.tangent.row(i)));
    }
  }
}

Coupling curvature_coupling(const CurvatureTensor& tensor, const FrameConfig& frame) {
  const int d = tensor.dim();
  if (frame.dim() != d) {
    throw std::invalid_argument("curvature_coupling: frame/tensor dimension mismatch");
  }
  const int m = frame.m();
  if (frame.h.rows() != m || frame.h.cols() != m) {
    throw std::invalid_argument("curvature_coupling: h must be m x m");
  }

  // Push h to the ambient basis; all contractions then reduce to the stored
  // components. hhat annihilates the normal, so tangent-range traces are
  // plain traces against hhat.
  const Eigen::MatrixXd hhat = frame.tangent.transpose() * frame.h * frame.tangent;
  const Eigen::MatrixXd hhat2 = hhat * hhat;

  const Eigen::MatrixXd kn = normal_jacobi_matrix(tensor, frame.normal);
  const Eigen::MatrixXd& ric = tensor.ricci();

  const double H = hhat.trace();
  const double A2 = hhat2.trace();

  // sum_{l in tangent} R(p,l,l,i) = Ric(p,i) - Kn(p,i).
  const double s1 = (hhat2.array() * (ric - kn).array()).sum();
  const double s2 = interlaced_contraction(tensor, hhat);

  const double tr_kn_tangent = kn.trace();  // nu^T Kn nu = 0
  Coupling out;
  out.tangential = s1 - s2;
  out.normal = H * (hhat.array() * kn.array()).sum() - A2 * tr_kn_tangent;
  return out;
}

double simons_gradient_term(const CurvatureTensor& tensor, const FrameConfig& frame) {
  const Coupling c = curvature_coupling(tensor, frame);
  const Eigen::MatrixXd h2 = frame.h * frame.h;
  const double H = frame.h.trace();
  const double A2 = h2.trace();
  const double A3 = (h2 * frame.h).trace();
  const double Z = H * A3 - A2 * A2;
  return -(Z + c.normal + 2.0 * c.tangential);
}

HSampler gaussian_h_sampler(double sigma) {
  return [sigma](Rng& rng, int m) {
    Eigen::MatrixXd g(m, m);
    for (int c = 0; c < m; ++c) {
      for (int r = 0; r < m; ++r) g(r, c) = rng.gaussian();
    }
    return Eigen::MatrixXd(0.5 * sigma * (g + g.transpose()));
  };
}

HSampler prescribed_spectrum_sampler(Eigen::VectorXd lambdas) {
  return [lam = std::move(lambdas)](Rng& rng, int m) {
    if (int(lam.size()) != m) {
      throw std::invalid_argument("prescribed_spectrum_sampler: spectrum length != m");
    }
    const Eigen::MatrixXd q = random_orthogonal(rng, m);
    return Eigen::MatrixXd(q * lam.asDiagonal() * q.transpose());
  };
}

FrameConfig random_adapted_frame(const AmbientSpace& space, std::uint64_t seed,
                                 const HSampler& h_sampler) {
  Rng rng(seed);
  const int d = space.dim();
  const int m = space.m;
  const Eigen::MatrixXd q = random_orthogonal(rng, d);

  FrameConfig frame;
  frame.normal = q.col(0);
  frame.tangent.resize(m, d);
  for (int i = 0; i < m; ++i) frame.tangent.row(i) = q.col(i + 1).transpose();
  frame.h = h_sampler(rng, m);
  frame.h = 0.5 * (frame.h + frame.h.transpose());  // keep h = h^T exactly
  fill_hopf_angles(space, frame);
  return frame;
}

}  // namespace crossflow
