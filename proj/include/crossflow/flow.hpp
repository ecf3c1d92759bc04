#pragma once

#include <vector>

#include "crossflow/curvature.hpp"
#include "crossflow/profiles.hpp"
#include "crossflow/spectrum.hpp"

namespace crossflow {

struct StopRule {
  double curvature_cap = 1e6;   // stop once H >= cap
  double radius_floor = 1e-6;   // stop once r <= floor
  double time_cap = 10.0;
};

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Step/sampling cap on the change of log H per step. The stored samples
  /// feed second-order finite differences, so the residual checks scale like
  /// the square of this value.
  double max_dlog_h = 1e-4;
};

enum class Termination { CurvatureCap, RadiusFloor, TimeCap };

struct FlowSample {
  double t = 0.0;
  double dt = 0.0;  // exact step from the previous sample (the flow is
                    // autonomous, so this is the true spacing; differencing
                    // the rounded t values loses precision near blow-up)
  double r = 0.0;
  double H = 0.0;
  double normA2 = 0.0;
  double normAo2 = 0.0;
  double Z = 0.0;
  double Q = 0.0;
  double f_sigma_eta = 0.0;
  double log_volume = 0.0;
  Eigen::VectorXd lambdas;  // sorted
};

struct FlowTrajectory {
  EquivariantFamily family;
  PinchingParams params;
  std::vector<FlowSample> samples;
  double t_singular_estimate = 0.0;
  Termination termination = Termination::TimeCap;
};

/// Evolves the family by dr/dt = -H(r) with log-volume alongside
/// (d log mu / dt = -H^2), storing one sample per accepted step. Requires
/// H(r0) > 0. The singular-time estimate extrapolates the point-collapse
/// model T - t ~ r^2 over the last decade of radii.
FlowTrajectory evolve(const EquivariantFamily& family, double r0,
                      const PinchingParams& params, const StopRule& stop,
                      const IntegratorOptions& opts = {});

/// Exact solution of h' = h^3/m with h(0) = H0, the lower barrier for H along
/// the flow. Throws at or beyond the barrier blow-up time m/(2 H0^2).
double comparison_lower_bound(double H0, int m, double t);

struct EvolutionResiduals {
  double resH = 0.0;
  double resA2 = 0.0;
  double resVol = 0.0;
};

/// Finite-difference checks of the evolution equations on the stored samples
/// (central differences, so independent of the integrator path):
///   dH/dt      = H (|A|^2 + rbar)
///   d|A|^2/dt  = 2|A|^2(|A|^2 + rbar) - 2|nabla A|^2 - 4 * tangential
///   d log mu/dt = -H^2
/// with the couplings contracted from the tensor in the family's adapted
/// frame and |nabla A|^2 supplied by Simons' identity (it does not vanish on
/// homogeneous hypersurfaces of these ambients). Each residual is normalized
/// by 1 + |time derivative|.
EvolutionResiduals evolution_residuals(const FlowTrajectory& traj,
                                       const CurvatureTensor& tensor);

struct MonitorSummary {
  double max_Q = 0.0;
  double c_prime = 0.0;  // smallest C' with |A|^2 - H^2/(m-1) <= eta H^2 + C'
  double eta = 0.0;
  double high_H_threshold = 1e3;
  bool reached_high_H = false;
  double max_gap_ratio_high_H = 0.0;        // max gap/H^2 over samples with H >= threshold
  double max_abs_l1_over_H_high_H = 0.0;    // max |lambda1|/H over the same samples
  double min_two_convexity_margin = 0.0;    // over samples meeting the H^2 threshold
  bool any_two_convexity_threshold = false;
  double final_A2_over_H2 = 0.0;
  double final_H = 0.0;
};

MonitorSummary monitor_report(const FlowTrajectory& traj, const PinchingParams& params);

}  // namespace crossflow
