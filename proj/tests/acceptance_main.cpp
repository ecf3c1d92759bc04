// Acceptance suite: one criterion per entry, each printing a PASS/FAIL line
// with the measured quantities. Run all criteria (no args) or one criterion
// with --only N. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "crossflow/ambient.hpp"
#include "crossflow/curvature.hpp"
#include "crossflow/flow.hpp"
#include "crossflow/lab.hpp"
#include "crossflow/profiles.hpp"
#include "crossflow/rng.hpp"
#include "crossflow/spectrum.hpp"

using namespace crossflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool c01_einstein_constants(std::ostream& msg) {
  bool ok = true;
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    const AmbientSpace sp = make_space(f, 4);
    const CurvatureTensor t = curvature_tensor(sp);
    const int d = sp.dim();
    const double err =
        (t.ricci() - sp.einstein * Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    msg << space_name(sp) << ": rbar=" << sp.einstein << " contraction err=" << err << "  ";
    ok = ok && err <= 1e-12 && sp.einstein == (f == Field::Complex ? 10.0 : 24.0);
  }
  return ok;
}

bool c02_sectional_range(std::ostream& msg) {
  bool ok = true;
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    const AmbientSpace sp = make_space(f, 4);
    const CurvatureTensor t = curvature_tensor(sp);
    const auto js = structure_matrices(sp);
    const int d = sp.dim();
    Rng rng(derive_seed(2024, space_name(sp)));
    double kmin = 1e300, kmax = -1e300;
    for (int i = 0; i < 10000; ++i) {
      Eigen::VectorXd x(d), y(d);
      for (int q = 0; q < d; ++q) x[q] = rng.gaussian();
      for (int q = 0; q < d; ++q) y[q] = rng.gaussian();
      x.normalize();
      y -= y.dot(x) * x;
      y.normalize();
      const double k = sectional_curvature(t, x, y);
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
    }
    // Extremes attained at J-orthogonal and J-aligned pairs.
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(d), eb = Eigen::VectorXd::Zero(d);
    e0[0] = 1.0;
    eb[sp.a] = 1.0;  // first vector of the next block: orthogonal to e0 K
    const double k_orth = sectional_curvature(t, e0, eb);
    const double k_aligned = sectional_curvature(t, e0, Eigen::VectorXd(js[0] * e0));
    msg << space_name(sp) << ": range [" << kmin << ", " << kmax << "] K(J-orth)=" << k_orth
        << " K(J-aligned)=" << k_aligned << "  ";
    ok = ok && kmin >= 1.0 - 1e-10 && kmax <= 4.0 + 1e-10 &&
         std::abs(k_orth - 1.0) <= 1e-10 && std::abs(k_aligned - 4.0) <= 1e-10;
  }
  return ok;
}

bool c03_coupling_bound(std::ostream& msg) {
  bool ok = true;
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    const AmbientSpace sp = make_space(f, 4);
    const TrialReport rep = certify_coupling_bound(sp, 100000, derive_seed(7, space_name(sp)));
    msg << space_name(sp) << ": violations=" << rep.violations
        << " min_slack=" << rep.min_slack << "  ";
    ok = ok && rep.violations == 0;

    // Umbilic equality case.
    const CurvatureTensor t = curvature_tensor(sp);
    FrameConfig frame = random_adapted_frame(sp, 3, gaussian_h_sampler());
    frame.h = 2.3 * Eigen::MatrixXd::Identity(sp.m, sp.m);
    const double umb = std::abs(curvature_coupling(t, frame).tangential);
    msg << "umbilic |coupling|=" << umb << "  ";
    ok = ok && umb <= 1e-10;
  }
  return ok;
}

bool c04_dimension_gate(std::ostream& msg) {
  bool ok = true;
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    for (int n : {3, 4, 5, 6}) {
      for (double eps : {1e-3, 1e-2, 1e-1}) {
        const DimensionGate g = dimension_gate(make_space(f, n), eps);
        if (g.pass != (n >= 4)) {
          msg << "mismatch at " << (f == Field::Complex ? "cp" : "hp") << n
              << " eps=" << eps << "  ";
          ok = false;
        }
      }
    }
  }
  if (ok) msg << "gate == (n >= 4) across both fields and the eps grid  ";
  return ok;
}

bool c05_alpha_window(std::ostream& msg) {
  bool ok = true;
  for (int m = 4; m <= 50; ++m) {
    const AlphaWindow w = alpha_window(m, 0.0);
    if (!w.nonempty) {
      msg << "EMPTY at m=" << m << " (lo=" << w.lo << " > hi=" << w.hi << ")  ";
      ok = false;
    }
  }
  const AlphaWindow w7 = alpha_window(7, 0.0);
  const double lo_err = std::abs(w7.lo - 2.0 / 35.0);
  const double hi_err = std::abs(w7.hi - 1.0 / 6.0);
  msg << "m=7: lo=" << w7.lo << " hi=" << w7.hi << " errs=(" << lo_err << "," << hi_err
      << ")";
  ok = ok && lo_err <= 1e-15 && hi_err <= 1e-15;
  return ok;
}

bool c06_identities(std::ostream& msg) {
  double worst = 0.0;
  for (int m : {7, 15}) {
    Rng rng(derive_seed(6, std::to_string(m)));
    for (int trial = 0; trial < 100000; ++trial) {
      Eigen::VectorXd lam(m);
      for (int i = 0; i < m; ++i) lam[i] = 3.0 * rng.gaussian();
      const ShapeSpectrum s = ShapeSpectrum::from_values(lam);
      const double scale = std::max(1.0, s.normA2);
      worst = std::max(worst, lambda1_split_identity_residual(s) / scale);
      double pair_sum = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          const double d = s.lambdas[i] - s.lambdas[j];
          pair_sum += d * d;
        }
      worst = std::max(worst, std::abs(s.normAo2 - pair_sum / m) / scale);
    }
  }
  msg << "max scaled residual over 2x100000 spectra = " << worst;
  return worst <= 1e-10;
}

bool c07_two_convexity(std::ostream& msg) {
  const int m = 7;
  long checked = 0;
  double min_margin = 1e300;
  for (double eps : {1e-3, 1e-2, 1e-1}) {
    Rng rng(derive_seed(7, std::to_string(eps)));
    const double h_floor = std::sqrt(8.0 * (m - 2) * ((m - 2) + eps) / eps);
    for (long trial = 0; trial < 333334; ++trial) {
      const double H = h_floor * (1.0 + 2.0 * rng.uniform());
      const ShapeSpectrum s = sample_pinched(rng, m, eps, PinchedStratum(trial % 3), H);
      const TwoConvexity tc = two_convexity_check(s, eps);
      if (!tc.threshold_met) continue;
      ++checked;
      min_margin = std::min(min_margin, tc.margin);
      if (tc.margin < -1e-10) {
        msg << "violation: margin=" << tc.margin << " eps=" << eps << "  ";
        return false;
      }
    }
  }
  msg << checked << " threshold-met samples, min margin = " << min_margin;
  return checked >= 1000000 - 3 && min_margin >= -1e-10;
}

bool c08_f_le_W_sigma(std::ostream& msg) {
  const int m = 7;
  long checked = 0;
  double min_slack = 1e300;
  for (double eps : {1e-3, 1e-2, 1e-1}) {
    for (double eta : {1e-3, 1e-2, 1e-1}) {
      for (double sigma : {0.0, 0.01, 0.1}) {
        const PinchingParams p = make_params(m, eps, eta, sigma);
        Rng rng(derive_seed(8, std::to_string(eps) + std::to_string(eta) +
                                   std::to_string(sigma)));
        for (long trial = 0; trial < 3704; ++trial) {
          const ShapeSpectrum s = sample_pinched(rng, m, eps, PinchedStratum(trial % 3));
          if (pinched_eps(s, p) > 0.0) continue;
          ++checked;
          const WandF wf = W_and_f(s, p);
          const double slack = std::pow(wf.W, p.sigma) + 1e-10 - wf.f_sigma_eta;
          min_slack = std::min(min_slack, slack);
          if (slack < 0.0) {
            msg << "violation at eps=" << eps << " eta=" << eta << " sigma=" << sigma
                << "  ";
            return false;
          }
        }
      }
    }
  }
  msg << checked << " samples with Q <= 0, min slack = " << min_slack;
  return checked >= 100000 && min_slack >= 0.0;
}

bool c09_Z_witness(std::ostream& msg) {
  // Hand-checkable witness validates the checker.
  const ShapeSpectrum hand =
      ShapeSpectrum::from_values(std::vector<double>{-1, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2});
  const bool hand_ok = pinched(hand) && std::abs(hand.Z + 1.728) <= 1e-12 &&
                       std::abs(hand.H - 0.2) <= 1e-15 &&
                       std::abs(hand.normA2 - 1.24) <= 1e-15;
  msg << "hand witness: H=" << hand.H << " |A|^2=" << hand.normA2 << " Z=" << hand.Z
      << "  ";
  bool ok = hand_ok;
  for (int m : {7, 15}) {
    const auto w = witness_negative_Z(m, 0.01, 10000, 9);
    if (!w) {
      msg << "no witness for m=" << m << "  ";
      ok = false;
      continue;
    }
    msg << "m=" << m << ": Z=" << w->Z << " H=" << w->H << "  ";
    ok = ok && w->Z < 0.0 && pinched(*w);
  }
  return ok;
}

bool c10_profile_consistency(std::ostream& msg) {
  bool ok = true;
  double worst = 0.0;
  std::vector<EquivariantFamily> families;
  for (Field f : {Field::Complex, Field::Quaternionic}) {
    const AmbientSpace sp = make_space(f, 4);
    families.push_back(geodesic_sphere_family(sp));
    for (int k = 1; k < sp.n; ++k) families.push_back(tube_family(sp, k));
  }
  for (const auto& fam : families) {
    for (int i = 1; i <= 1000; ++i) {
      const double r = fam.r_min + (fam.r_max - fam.r_min) * i / 1001.0;
      const ShapeSpectrum s = spectrum_at(fam, r);
      const double lhs = -dH_dr(fam, r);
      const double rhs = s.normA2 + fam.space.einstein;
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
  }
  msg << families.size() << " families x 1000 radii: max rel err = " << worst << "  ";
  ok = ok && worst <= 1e-10;

  // Every class value of every family is one of three (curvature, start)
  // profiles; check each against the oracle on a 1000-point radius grid.
  double worst_oracle = 0.0;
  const double r_lo = 2e-3, r_hi = kPi / 2.0 - 2e-3;
  for (int i = 0; i < 1000; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / 999.0;
    const struct {
      ProfileKind kind;
      double curv;
      RiccatiStart start;
    } probes[] = {
        {ProfileKind::Cot, 1.0, RiccatiStart::SphereCap},
        {ProfileKind::MinusTan, 1.0, RiccatiStart::FocalCore},
        {ProfileKind::TwoCotTwo, 4.0, RiccatiStart::SphereCap},
    };
    for (const auto& p : probes) {
      const double closed = class_value(p.kind, r);
      const double oracle = radial_riccati_oracle(p.curv, r, p.start);
      worst_oracle = std::max(
          worst_oracle, std::abs(closed - oracle) / std::max(1.0, std::abs(closed)));
    }
  }
  msg << "oracle vs closed forms (3 profiles x 1000 radii): max err = " << worst_oracle;
  return ok && worst_oracle <= 1e-8;
}

bool c11_sphere_flow(std::ostream& msg) {
  const AmbientSpace cp4 = make_space(Field::Complex, 4);
  const EquivariantFamily fam = geodesic_sphere_family(cp4);
  const PinchingParams params = make_params(cp4.m, 0.01, 0.01, 0.01);
  const FlowTrajectory traj = evolve(fam, kPi / 4.0, params, StopRule{});

  const double H0 = traj.samples.front().H;
  double min_comparison_slack = 1e300, max_Q = -1e300;
  for (const auto& s : traj.samples) {
    min_comparison_slack =
        std::min(min_comparison_slack, s.H - comparison_lower_bound(H0, cp4.m, s.t));
    max_Q = std::max(max_Q, s.Q);
  }
  const EvolutionResiduals res = evolution_residuals(traj, curvature_tensor(cp4));

  msg << "comparison slack >= " << min_comparison_slack
      << ", t_sing = " << traj.t_singular_estimate << " (bound " << 7.0 / 72.0 << ")"
      << ", max Q = " << max_Q << ", residuals = (" << res.resH << ", " << res.resA2
      << ", " << res.resVol << ")";
  return min_comparison_slack >= -1e-8 && traj.t_singular_estimate <= 7.0 / 72.0 &&
         traj.samples.front().Q < 0.0 && max_Q <= 1e-10 && res.resH <= 1e-6 &&
         res.resA2 <= 1e-6 && res.resVol <= 1e-6;
}

bool c12_tube_cylindrical(std::ostream& msg) {
  const AmbientSpace cp4 = make_space(Field::Complex, 4);
  const EquivariantFamily tube = tube_family(cp4, 1);
  const PinchingParams params = make_params(cp4.m, 0.01, 0.01, 0.01);
  StopRule stop;
  stop.curvature_cap = 5e3;
  const FlowTrajectory traj = evolve(tube, 0.5, params, stop);
  const MonitorSummary mon = monitor_report(traj, params);
  msg << "final H = " << mon.final_H << ", max |lambda1|/H (H>=1e3) = "
      << mon.max_abs_l1_over_H_high_H << ", max gap ratio (H>=1e3) = "
      << mon.max_gap_ratio_high_H;
  return mon.reached_high_H && mon.max_abs_l1_over_H_high_H <= 1e-3 &&
         mon.max_gap_ratio_high_H <= 1e-4;
}

struct Criterion {
  int id;
  const char* label;
  std::function<bool(std::ostream&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  const std::vector<Criterion> criteria{
      {1, "einstein constants from tensor contraction", c01_einstein_constants},
      {2, "sectional curvature range and extremes", c02_sectional_range},
      {3, "coupling lower bound, 1e5 random (frame, h) trials per space", c03_coupling_bound},
      {4, "dimension gate reproduces n >= 4", c04_dimension_gate},
      {5, "alpha window nonempty for m = 4..50, exact m = 7 endpoints", c05_alpha_window},
      {6, "spectrum identities over 1e5 random spectra", c06_identities},
      {7, "2-convexity margin on 1e6 high-curvature pinched spectra", c07_two_convexity},
      {8, "f_{sigma,eta} <= W^sigma on 1e5 samples with Q <= 0", c08_f_le_W_sigma},
      {9, "pinched witness with Z < 0 for m = 7 and m = 15", c09_Z_witness},
      {10, "profile/Einstein identity and riccati oracle agreement", c10_profile_consistency},
      {11, "geodesic-sphere flow: comparison, singular time, pinching, residuals",
       c11_sphere_flow},
      {12, "tube flow reaches the cylindrical regime", c12_tube_cylindrical},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::ostringstream detail;
    bool pass = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
      pass = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] C%02d (%6.2fs) %s — %s\n", pass ? "PASS" : "FAIL", c.id, secs,
                c.label, detail.str().c_str());
    if (!pass) ++failures;
  }
  return failures;
}
