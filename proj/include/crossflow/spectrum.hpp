#pragma once

#include <vector>

#include <Eigen/Dense>

#include "crossflow/ambient.hpp"
#include "crossflow/rng.hpp"

namespace crossflow {

/// Principal-curvature multiset lambda_1 <= ... <= lambda_m with the derived
/// scalars every pointwise estimate is built from.
struct ShapeSpectrum {
  Eigen::VectorXd lambdas;  // sorted ascending
  double H = 0.0;           // sum lambda_i
  double normA2 = 0.0;      // sum lambda_i^2
  double traceA3 = 0.0;     // sum lambda_i^3
  double normAo2 = 0.0;     // normA2 - H^2/m  (>= 0)
  double Z = 0.0;           // H * traceA3 - normA2^2

  int m() const { return int(lambdas.size()); }

  static ShapeSpectrum from_values(Eigen::VectorXd values);
  static ShapeSpectrum from_values(const std::vector<double>& values);
};

struct AlphaWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool nonempty = false;
};

/// (2/(m(m-2)) - eta, 3/(m+2) - 1/(m-1) - eta); both ends shift equally in
/// eta, so nonemptiness is eta-independent.
AlphaWindow alpha_window(int m, double eta);

struct PinchingParams {
  double epsilon = 0.0;
  double eta = 0.0;
  double sigma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;   // = b_eps
  double a_eps = 0.0;  // 1/(m-2+eps)
  double b_eps = 0.0;  // 4(1-eps)
  int m = 0;
};

/// alpha policy: midpoint of (max(lo, 0), hi) of the alpha window, so alpha
/// stays strictly inside the window and nonnegative (W = alpha H^2 + beta
/// then stays positive). Throws if the window gives no admissible alpha.
PinchingParams make_params(int m, double epsilon, double eta, double sigma);

/// Strict pinching: H > 0 and |A|^2 < H^2/(m-2) + 4.
bool pinched(const ShapeSpectrum& s);

/// Q = |A|^2 - a_eps H^2 - b_eps.
double pinched_eps(const ShapeSpectrum& s, const PinchingParams& p);

struct WandF {
  double W = 0.0;
  double f0 = 0.0;
  double f_sigma_eta = 0.0;
};

/// W = alpha H^2 + beta and f_{sigma,eta} = (|A|^2 - (1/(m-1)+eta) H^2) / W^{1-sigma}.
WandF W_and_f(const ShapeSpectrum& s, const PinchingParams& p);

struct TwoConvexity {
  double margin = 0.0;       // lambda1 + lambda2 - eps H / (4(m-2+eps))
  bool threshold_met = false;  // H^2 >= 8(m-2)(m-2+eps)/eps
  bool bound_holds = false;
};

/// Requires a spectrum that is pinched in the Q <= 0 sense for this epsilon
/// (the hypothesis of the implication); throws otherwise.
TwoConvexity two_convexity_check(const ShapeSpectrum& s, double epsilon);

/// |LHS - RHS| of
///   |A|^2 - H^2/(m-1) = (1/(m-1)) ( sum_{1<i<j} (l_i - l_j)^2 + l_1 (m l_1 - 2H) ).
double lambda1_split_identity_residual(const ShapeSpectrum& s);

struct CylindricalGap {
  bool hypothesis = false;  // |lambda1| <= eta H
  double gap = 0.0;         // max_{i,j >= 2} (lambda_i - lambda_j)^2
};

/// The gap ranges over the eigenvalues above the bottom one; repeated copies
/// of the smallest eigenvalue count as lambda_1 (exact ties), so equivariant
/// closed-form spectra with a multiple bottom class report the spread of the
/// remaining classes.
CylindricalGap cylindrical_gap(const ShapeSpectrum& s, double eta);

struct DimensionGate {
  bool ineq1 = false;  // 2 b_eps - 4m < -4/a_eps
  bool ineq2 = false;  // 2 rbar   < 4/a_eps
  bool pass = false;
};

/// The two inequalities behind the pinching-preservation argument; pass is
/// equivalent to n >= 4 for every eps in (0,1).
DimensionGate dimension_gate(const AmbientSpace& space, double epsilon);

enum class PinchedStratum { Gaussian, NearUmbilic, NearBoundary };

/// Random spectrum with H > 0 and Q_eps < 0: a gaussian trace-free shape
/// blended toward the umbilic point until it lands inside the pinching set
/// (the set is star-shaped around umbilics, so the repair always succeeds).
/// target_H <= 0 keeps the sampled trace.
ShapeSpectrum sample_pinched(Rng& rng, int m, double epsilon,
                             PinchedStratum stratum = PinchedStratum::Gaussian,
                             double target_H = -1.0);

}  // namespace crossflow
