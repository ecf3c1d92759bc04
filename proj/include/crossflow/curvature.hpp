#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "crossflow/ambient.hpp"
#include "crossflow/rng.hpp"

namespace crossflow {

/// Rank-4 curvature components of the model space in the orthonormal model
/// basis. Sign convention: R(X, Y, Y, X) is the (nonnegative) sectional
/// curvature of the plane spanned by an orthonormal pair X, Y, so that
///
///   R(A,B,C,D) = <B,C><A,D> - <A,C><B,D>
///              + sum_s [ <J_s B,C><J_s A,D> - <J_s A,C><J_s B,D>
///                        - 2 <J_s A,B><J_s C,D> ].
///
/// This is the unique symmetric-space tensor whose sectional curvatures are
/// 1 + 3 |pr_{YK} X|^2 on orthonormal pairs; the index conventions here are
/// pinned by the validation suite (sectional range, Einstein contraction,
/// and the flow residual tests).
class CurvatureTensor {
 public:
  CurvatureTensor(int dim, std::vector<double> components, double einstein);

  int dim() const { return dim_; }
  double einstein() const { return einstein_; }

  double at(int a, int b, int c, int d) const {
    return c_[size_t(((a * dim_ + b) * dim_ + c) * dim_ + d)];
  }

  const std::vector<double>& components() const { return c_; }

  /// Ricci contraction Ric(A,D) = sum_B R(A,B,B,D), cached at build time.
  const Eigen::MatrixXd& ricci() const { return ricci_; }

 private:
  int dim_;
  std::vector<double> c_;
  double einstein_;
  Eigen::MatrixXd ricci_;
};

CurvatureTensor curvature_tensor(const AmbientSpace& space);

/// R(X,Y,Y,X) / (|X|^2 |Y|^2 - <X,Y>^2). Throws for linearly dependent X, Y.
double sectional_curvature(const CurvatureTensor& tensor,
                           const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

/// A unit normal, an orthonormal tangent frame (rows of `tangent`) and the
/// second fundamental form components in that frame.
struct FrameConfig {
  Eigen::VectorXd normal;       // dim
  Eigen::MatrixXd tangent;      // m x dim, rows orthonormal and
                                // orthogonal to normal
  Eigen::MatrixXd h;            // m x m symmetric
  Eigen::MatrixXd hopf_angles;  // (a-1) x m, |<J_s normal, e_i>|

  int m() const { return int(tangent.rows()); }
  int dim() const { return int(tangent.cols()); }
};

/// Fills hopf_angles from the space's structure endomorphisms.
void fill_hopf_angles(const AmbientSpace& space, FrameConfig& frame);

struct Coupling {
  double tangential;  // h^{ij} h_j^p Rbar_{pli}^l - h^{ij} h^{lp} Rbar_{pilj}
  double normal;      // H h^{ij} Rbar_{0i0j} - |A|^2 Rbar_{0l0}^l
};

/// Both curvature contractions of the evolution/Simons equations, evaluated
/// from the stored tensor (index 0 = normal, Latin contractions over the
/// tangent frame). Throws on a frame/tensor dimension mismatch.
Coupling curvature_coupling(const CurvatureTensor& tensor, const FrameConfig& frame);

/// |nabla A|^2 as forced by Simons' identity on a homogeneous configuration:
/// -(Z + normal + 2 tangential), with Z computed from the traces of h.
/// Vanishes identically when the ambient is a space form.
double simons_gradient_term(const CurvatureTensor& tensor, const FrameConfig& frame);

using HSampler = std::function<Eigen::MatrixXd(Rng&, int)>;

HSampler gaussian_h_sampler(double sigma = 1.0);

/// h = Q diag(lambdas) Q^T with Q a random rotation.
HSampler prescribed_spectrum_sampler(Eigen::VectorXd lambdas);

/// Uniformly random unit normal + orthonormal completion, h drawn from the
/// sampler. Same seed, same output, bit for bit.
FrameConfig random_adapted_frame(const AmbientSpace& space, std::uint64_t seed,
                                 const HSampler& h_sampler);

}  // namespace crossflow
