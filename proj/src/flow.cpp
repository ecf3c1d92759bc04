#include "crossflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crossflow/ode.hpp"

namespace crossflow {

namespace {

FlowSample make_sample(const EquivariantFamily& family, const PinchingParams& params,
                       double t, double dt, double r, double log_volume) {
  FlowSample s;
  s.t = t;
  s.dt = dt;
  s.r = r;
  s.log_volume = log_volume;
  ShapeSpectrum spec = spectrum_at(family, r);
  s.H = spec.H;
  s.normA2 = spec.normA2;
  s.normAo2 = spec.normAo2;
  s.Z = spec.Z;
  s.Q = pinched_eps(spec, params);
  s.f_sigma_eta = W_and_f(spec, params).f_sigma_eta;
  s.lambdas = std::move(spec.lambdas);
  return s;
}

double estimate_singular_time(const std::vector<FlowSample>& samples) {
  if (samples.size() < 4) return samples.back().t;
  // Fit t = T - C r^2 on the last decade of radii.
  const double r_end = samples.back().r;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    if (it->r > 10.0 * r_end && n >= 8) break;
    const double x = it->r * it->r;
    sx += x;
    sy += it->t;
    sxx += x * x;
    sxy += x * it->t;
    ++n;
  }
  const double det = n * sxx - sx * sx;
  if (n < 2 || det == 0.0) return samples.back().t;
  return (sy * sxx - sx * sxy) / det;  // intercept at r^2 = 0
}

}  // namespace

FlowTrajectory evolve(const EquivariantFamily& family, double r0,
                      const PinchingParams& params, const StopRule& stop,
                      const IntegratorOptions& opts) {
  if (!(r0 > family.r_min && r0 < family.r_max)) {
    throw std::invalid_argument("evolve: r0 outside the family domain");
  }
  if (!(mean_curvature_profile(family, r0) > 0.0)) {
    throw std::invalid_argument("evolve: H(r0) must be positive");
  }

  FlowTrajectory traj;
  traj.family = family;
  traj.params = params;
  traj.termination = Termination::TimeCap;

  auto rhs = [&](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    const double H = mean_curvature_profile(family, y[0]);
    dy[0] = -H;
    dy[1] = -H * H;
  };

  std::array<double, 2> y{r0, 0.0};  // (r, log mu relative to start)
  double t = 0.0;
  traj.samples.push_back(make_sample(family, params, t, 0.0, r0, 0.0));

  double h = 1e-8;
  std::array<double, 2> y_new;
  while (true) {
    const double r = y[0];
    const double H = mean_curvature_profile(family, r);
    if (H >= stop.curvature_cap) {
      traj.termination = Termination::CurvatureCap;
      break;
    }
    if (r <= std::max(stop.radius_floor, 2.0 * family.r_min)) {
      traj.termination = Termination::RadiusFloor;
      break;
    }
    if (t >= stop.time_cap) {
      traj.termination = Termination::TimeCap;
      break;
    }

    // Step caps: bounded change of log H per step (drives the sampling
    // resolution of the finite-difference residuals) and the near-singularity
    // cap 0.01 r / H. Along the flow d(log H)/dt = |dH/dr|.
    const double cap1 = opts.max_dlog_h / std::max(1e-30, std::abs(dH_dr(family, r)));
    const double cap2 = 0.01 * r / H;
    double h_try = std::min(h, std::min(cap1, cap2));

    const double err = dopri5_step<2>(rhs, t, y, h_try, y_new, opts.rtol, opts.atol);
    if (err <= 1.0) {
      t += h_try;
      y = y_new;
      traj.samples.push_back(make_sample(family, params, t, h_try, y[0], y[1]));
      const double grow = (err == 0.0) ? 5.0 : 0.9 * std::pow(err, -0.2);
      h = h_try * std::min(5.0, std::max(0.2, grow));
    } else {
      h = h_try * std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (h < 1e-18) {
      throw std::runtime_error("evolve: integration failure (step size underflow)");
    }
  }

  traj.t_singular_estimate = estimate_singular_time(traj.samples);
  return traj;
}

double comparison_lower_bound(double H0, int m, double t) {
  if (!(H0 > 0.0)) throw std::invalid_argument("comparison_lower_bound: H0 must be positive");
  const double t_max = double(m) / (2.0 * H0 * H0);
  if (!(t < t_max)) {
    throw std::invalid_argument("comparison_lower_bound: t at or beyond blow-up");
  }
  return H0 / std::sqrt(1.0 - 2.0 * H0 * H0 * t / double(m));
}

EvolutionResiduals evolution_residuals(const FlowTrajectory& traj,
                                       const CurvatureTensor& tensor) {
  const auto& samples = traj.samples;
  if (samples.size() < 3) {
    throw std::invalid_argument("evolution_residuals: need at least 3 samples");
  }
  if (tensor.dim() != traj.family.space.dim()) {
    throw std::invalid_argument("evolution_residuals: tensor/space dimension mismatch");
  }
  const double rbar = traj.family.space.einstein;
  const int m = traj.family.space.m;

  // The adapted frame uses permuted model basis vectors, so the needed
  // contractions are direct component lookups, computed once.
  FrameConfig frame = adapted_frame(traj.family, samples.front().r);
  std::vector<int> axis(m);
  for (int i = 0; i < m; ++i) {
    int a = 0;
    for (int d = 0; d < frame.dim(); ++d) {
      if (frame.tangent(i, d) != 0.0) {
        a = d;
        break;
      }
    }
    axis[i] = a;
  }
  Eigen::MatrixXd kn(m, m);      // R(e_i, nu, nu, e_j), nu = model axis 0
  Eigen::MatrixXd smat(m, m);    // R(e_l, e_i, e_i, e_l)
  Eigen::VectorXd m1_diag(m);    // sum_l R(e_i, e_l, e_l, e_i)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      kn(i, j) = tensor.at(axis[i], 0, 0, axis[j]);
      smat(i, j) = tensor.at(axis[j], axis[i], axis[i], axis[j]);
    }
  }
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int l = 0; l < m; ++l) s += tensor.at(axis[i], axis[l], axis[l], axis[i]);
    m1_diag[i] = s;
  }
  const double tr_kn = kn.trace();

  auto profile_at = [&](double r) { return profile_values(traj.family, r); };

  EvolutionResiduals out;
  for (size_t i = 1; i + 1 < samples.size(); ++i) {
    const FlowSample& a = samples[i - 1];
    const FlowSample& b = samples[i];
    const FlowSample& c = samples[i + 1];
    const double hm = b.dt;
    const double hp = c.dt;
    const double denom = hm * hp * (hm + hp);
    auto central = [&](double fa, double fb, double fc) {
      return (fc * hm * hm - fa * hp * hp + fb * (hp * hp - hm * hm)) / denom;
    };

    const double dH = central(a.H, b.H, c.H);
    const double dA2 = central(a.normA2, b.normA2, c.normA2);
    const double dVol = central(a.log_volume, b.log_volume, c.log_volume);

    // Class-ordered diagonal h at the middle sample.
    const Eigen::VectorXd lam = profile_at(b.r);
    double s1 = 0.0, s2 = 0.0, tr_h_kn = 0.0;
    for (int p = 0; p < m; ++p) {
      s1 += lam[p] * lam[p] * m1_diag[p];
      tr_h_kn += lam[p] * kn(p, p);
      for (int l = 0; l < m; ++l) s2 += lam[p] * lam[l] * smat(p, l);
    }
    const double tangential = s1 - s2;
    const double normal = b.H * tr_h_kn - b.normA2 * tr_kn;
    const double grad_a2 = -(b.Z + normal + 2.0 * tangential);  // |nabla A|^2 via Simons

    const double rhsH = b.H * (b.normA2 + rbar);
    const double rhsA2 = 2.0 * b.normA2 * (b.normA2 + rbar) - 2.0 * grad_a2 - 4.0 * tangential;
    const double rhsVol = -b.H * b.H;

    out.resH = std::max(out.resH, std::abs(dH - rhsH) / (1.0 + std::abs(dH)));
    out.resA2 = std::max(out.resA2, std::abs(dA2 - rhsA2) / (1.0 + std::abs(dA2)));
    out.resVol = std::max(out.resVol, std::abs(dVol - rhsVol) / (1.0 + b.H * b.H));
  }
  return out;
}

MonitorSummary monitor_report(const FlowTrajectory& traj, const PinchingParams& params) {
  const auto& samples = traj.samples;
  if (samples.empty()) throw std::invalid_argument("monitor_report: empty trajectory");
  const int m = traj.family.space.m;
  const double eps = params.epsilon;
  const double h2_threshold = 8.0 * double(m - 2) * (double(m - 2) + eps) / eps;

  MonitorSummary out;
  out.eta = params.eta;
  out.max_Q = -std::numeric_limits<double>::infinity();
  out.c_prime = -std::numeric_limits<double>::infinity();
  out.min_two_convexity_margin = std::numeric_limits<double>::infinity();

  for (const auto& s : samples) {
    out.max_Q = std::max(out.max_Q, s.Q);
    out.c_prime = std::max(out.c_prime,
                           s.normA2 - s.H * s.H / double(m - 1) - params.eta * s.H * s.H);
    if (s.H >= out.high_H_threshold) {
      out.reached_high_H = true;
      const ShapeSpectrum spec = ShapeSpectrum::from_values(s.lambdas);
      const CylindricalGap g = cylindrical_gap(spec, params.eta);
      out.max_gap_ratio_high_H = std::max(out.max_gap_ratio_high_H, g.gap / (s.H * s.H));
      out.max_abs_l1_over_H_high_H =
          std::max(out.max_abs_l1_over_H_high_H, std::abs(s.lambdas[0]) / s.H);
    }
    if (s.H * s.H >= h2_threshold) {
      out.any_two_convexity_threshold = true;
      const double margin = s.lambdas[0] + s.lambdas[1] -
                            eps * s.H / (4.0 * (double(m - 2) + eps));
      out.min_two_convexity_margin = std::min(out.min_two_convexity_margin, margin);
    }
  }
  const FlowSample& last = samples.back();
  out.final_H = last.H;
  out.final_A2_over_H2 = last.normA2 / (last.H * last.H);
  return out;
}

}  // namespace crossflow
