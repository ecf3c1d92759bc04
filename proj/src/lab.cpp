#include "crossflow/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crossflow {

namespace {

PinchedStratum stratum_for(long trial) {
  // 50% gaussian, 25% near-umbilic, 25% near the pinching boundary.
  switch (trial % 4) {
    case 0:
    case 1:
      return PinchedStratum::Gaussian;
    case 2:
      return PinchedStratum::NearUmbilic;
    default:
      return PinchedStratum::NearBoundary;
  }
}

Eigen::VectorXd h_eigenvalues(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

TrialReport certify_coupling_bound(const AmbientSpace& space, long trials, std::uint64_t seed) {
  const CurvatureTensor tensor = curvature_tensor(space);
  const int m = space.m;
  TrialReport rep;
  rep.claim_id = "coupling_bound_" + space_name(space);
  rep.trials = trials;
  rep.seed = seed;
  rep.min_slack = std::numeric_limits<double>::infinity();

  Rng seeder(seed);
  const HSampler gaussian = gaussian_h_sampler(1.0);
  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t frame_seed = seeder.next_u64();
    FrameConfig frame;
    if (trial % 2 == 0) {
      frame = random_adapted_frame(space, frame_seed, gaussian);
    } else {
      Rng spec_rng(splitmix64(frame_seed));
      const ShapeSpectrum s = sample_pinched(spec_rng, m, 0.01, stratum_for(trial));
      frame = random_adapted_frame(space, frame_seed, prescribed_spectrum_sampler(s.lambdas));
    }
    const Coupling c = curvature_coupling(tensor, frame);
    const double H = frame.h.trace();
    const double A2 = (frame.h * frame.h).trace();
    const double ao2 = std::max(0.0, A2 - H * H / double(m));
    const double slack = c.tangential - double(m) * ao2;
    if (slack < rep.min_slack) rep.min_slack = slack;
    if (slack < -1e-9) {
      ++rep.violations;
      if (!rep.witness) rep.witness = h_eigenvalues(frame.h);
    }
  }
  return rep;
}

std::optional<ShapeSpectrum> witness_negative_Z(int m, double eps, long budget,
                                                std::uint64_t seed) {
  Rng rng(seed);
  for (long trial = 0; trial < budget; ++trial) {
    const ShapeSpectrum s = sample_pinched(rng, m, eps, stratum_for(trial));
    if (s.Z < 0.0) return s;
  }
  return std::nullopt;
}

std::vector<BoundZRow> explore_bound_Z(int m, double eps, double eta,
                                       const std::vector<double>& gamma_grid,
                                       long trials, std::uint64_t seed) {
  std::vector<BoundZRow> rows;
  rows.reserve(gamma_grid.size());
  for (double gamma : gamma_grid) {
    Rng rng(derive_seed(seed, "bound_Z"));
    BoundZRow row;
    row.gamma = gamma;
    row.trials = trials;
    row.K_emp = -std::numeric_limits<double>::infinity();
    for (long trial = 0; trial < trials; ++trial) {
      const ShapeSpectrum s = sample_pinched(rng, m, eps, stratum_for(trial));
      const double lhs = gamma * s.H * s.H *
                         (s.normA2 - s.H * s.H / double(m - 1) - eta * s.H * s.H);
      const double K = (lhs - s.Z) / (s.H * s.H * s.H + 1.0);
      row.K_emp = std::max(row.K_emp, K);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TrialReport> run_suite(const AmbientSpace& space, const SuiteConfig& config) {
  std::vector<TrialReport> reports;
  const int m = space.m;

  // Coupling lower bound on random frames, plus its umbilic equality case.
  reports.push_back(
      certify_coupling_bound(space, config.trials, derive_seed(config.seed, "coupling_bound")));
  {
    TrialReport rep;
    rep.claim_id = "coupling_bound_umbilic_equality";
    rep.seed = derive_seed(config.seed, "coupling_bound_umbilic");
    rep.trials = std::min<long>(config.trials, 200);
    rep.min_slack = std::numeric_limits<double>::infinity();
    const CurvatureTensor tensor = curvature_tensor(space);
    Rng rng(rep.seed);
    for (long trial = 0; trial < rep.trials; ++trial) {
      const double t = rng.gaussian();
      const std::uint64_t fseed = rng.next_u64();
      FrameConfig frame = random_adapted_frame(
          space, fseed, [t](Rng&, int mm) {
            return Eigen::MatrixXd(t * Eigen::MatrixXd::Identity(mm, mm));
          });
      const Coupling c = curvature_coupling(tensor, frame);
      const double slack = 1e-10 - std::abs(c.tangential);
      rep.min_slack = std::min(rep.min_slack, slack);
      if (slack < 0.0) ++rep.violations;
    }
    reports.push_back(std::move(rep));
  }

  // Pure spectrum algebra: the lambda1-split identity and the double |Aring|^2 formula.
  {
    TrialReport id_rep, ao_rep, z_rep, scale_rep;
    id_rep.claim_id = "lambda1_split_identity";
    ao_rep.claim_id = "normAo2_double_formula";
    z_rep.claim_id = "umbilic_Z_zero";
    scale_rep.claim_id = "scaling_exponents";
    for (TrialReport* r : {&id_rep, &ao_rep, &z_rep, &scale_rep}) {
      r->trials = config.trials;
      r->seed = derive_seed(config.seed, r->claim_id);
      r->min_slack = std::numeric_limits<double>::infinity();
    }
    Rng rng(derive_seed(config.seed, "spectrum_algebra"));
    for (long trial = 0; trial < config.trials; ++trial) {
      Eigen::VectorXd lam(m);
      for (int i = 0; i < m; ++i) lam[i] = 3.0 * rng.gaussian();
      const ShapeSpectrum s = ShapeSpectrum::from_values(lam);

      const double scale = std::max(1.0, s.normA2);
      const double id_slack = 1e-12 * scale - lambda1_split_identity_residual(s);
      id_rep.min_slack = std::min(id_rep.min_slack, id_slack);
      if (id_slack < 0.0) {
        ++id_rep.violations;
        if (!id_rep.witness) id_rep.witness = s.lambdas;
      }

      double pair_sum = 0.0;
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          const double d = s.lambdas[i] - s.lambdas[j];
          pair_sum += d * d;
        }
      }
      const double ao_slack =
          1e-10 * scale - std::abs(s.normAo2 - pair_sum / double(m));
      ao_rep.min_slack = std::min(ao_rep.min_slack, ao_slack);
      if (ao_slack < 0.0) {
        ++ao_rep.violations;
        if (!ao_rep.witness) ao_rep.witness = s.lambdas;
      }

      // Umbilic Z and exact scaling exponents.
      const double t = s.H / double(m);
      const ShapeSpectrum umb =
          ShapeSpectrum::from_values(Eigen::VectorXd::Constant(m, t));
      const double z_scale = std::max(1.0, umb.normA2 * umb.normA2);
      const double z_slack = 1e-12 * z_scale - std::abs(umb.Z);
      z_rep.min_slack = std::min(z_rep.min_slack, z_slack);
      if (z_slack < 0.0) ++z_rep.violations;

      const double sfac = 0.25 + 3.0 * rng.uniform();
      Eigen::VectorXd scaled = sfac * s.lambdas;
      const ShapeSpectrum ss = ShapeSpectrum::from_values(std::move(scaled));
      const double s2f = sfac * sfac;
      const double s4 = s2f * s2f;
      // Z subtracts two like-sized quartics, so normalize by the sizes of the
      // terms entering each quantity, not by the (possibly tiny) results.
      const double z_cond =
          1.0 + s4 * (s.normA2 * s.normA2 + std::abs(s.H * s.traceA3));
      const double rel = std::max(
          {std::abs(ss.H - sfac * s.H) /
               (1.0 + sfac * s.lambdas.cwiseAbs().sum()),
           std::abs(ss.normAo2 - s2f * s.normAo2) / (1.0 + s2f * s.normA2),
           std::abs(ss.Z - s4 * s.Z) / z_cond});
      const double sc_slack = 1e-12 - rel;
      scale_rep.min_slack = std::min(scale_rep.min_slack, sc_slack);
      if (sc_slack < 0.0) ++scale_rep.violations;
    }
    reports.push_back(std::move(id_rep));
    reports.push_back(std::move(ao_rep));
    reports.push_back(std::move(z_rep));
    reports.push_back(std::move(scale_rep));
  }

  // f_{sigma,eta} <= W^sigma whenever Q <= 0, over the parameter grid.
  {
    TrialReport rep;
    rep.claim_id = "f_le_W_sigma";
    rep.seed = derive_seed(config.seed, rep.claim_id);
    rep.min_slack = std::numeric_limits<double>::infinity();
    Rng rng(rep.seed);
    long trial = 0;
    for (double eps : config.eps_grid) {
      for (double eta : config.eta_grid) {
        for (double sigma : config.sigma_grid) {
          const PinchingParams p = make_params(m, eps, eta, sigma);
          const long per = std::max<long>(1, config.trials / long(config.eps_grid.size() *
                                                                 config.eta_grid.size() *
                                                                 config.sigma_grid.size()));
          for (long i = 0; i < per; ++i, ++trial) {
            const ShapeSpectrum s = sample_pinched(rng, m, eps, stratum_for(trial));
            if (pinched_eps(s, p) > 0.0) continue;  // hypothesis is Q <= 0
            const WandF wf = W_and_f(s, p);
            const double slack = std::pow(wf.W, p.sigma) + 1e-10 - wf.f_sigma_eta;
            rep.min_slack = std::min(rep.min_slack, slack);
            if (slack < 0.0) {
              ++rep.violations;
              if (!rep.witness) rep.witness = s.lambdas;
            }
          }
        }
      }
    }
    rep.trials = trial;
    reports.push_back(std::move(rep));
  }

  // 2-convexity implication at high curvature.
  {
    TrialReport rep;
    rep.claim_id = "two_convexity";
    rep.seed = derive_seed(config.seed, rep.claim_id);
    rep.min_slack = std::numeric_limits<double>::infinity();
    Rng rng(rep.seed);
    long trial = 0;
    for (double eps : config.eps_grid) {
      const double h_floor =
          std::sqrt(8.0 * double(m - 2) * (double(m - 2) + eps) / eps);
      const long per = std::max<long>(1, config.trials / long(config.eps_grid.size()));
      for (long i = 0; i < per; ++i, ++trial) {
        const double target_H = h_floor * (1.0 + 2.0 * rng.uniform());
        const ShapeSpectrum s = sample_pinched(rng, m, eps, stratum_for(trial), target_H);
        const TwoConvexity tc = two_convexity_check(s, eps);
        if (!tc.threshold_met) continue;
        const double slack = tc.margin + 1e-10;
        rep.min_slack = std::min(rep.min_slack, slack);
        if (slack < 0.0) {
          ++rep.violations;
          if (!rep.witness) rep.witness = s.lambdas;
        }
      }
    }
    rep.trials = trial;
    reports.push_back(std::move(rep));
  }

  // Dimension gate reproduces n >= 4, for both fields and every eps.
  {
    TrialReport rep;
    rep.claim_id = "dimension_gate_matches_n_ge_4";
    rep.seed = config.seed;
    rep.min_slack = 0.0;
    for (Field field : {Field::Complex, Field::Quaternionic}) {
      for (int n = 2; n <= 8; ++n) {
        const AmbientSpace sp = make_space(field, n);
        for (double eps : config.eps_grid) {
          ++rep.trials;
          const DimensionGate g = dimension_gate(sp, eps);
          if (g.pass != (n >= 4)) ++rep.violations;
        }
      }
    }
    reports.push_back(std::move(rep));
  }

  // Alpha window nonempty for every admissible space dimension (n >= 4).
  {
    TrialReport rep;
    rep.claim_id = "alpha_window_admissible_spaces";
    rep.seed = config.seed;
    rep.min_slack = std::numeric_limits<double>::infinity();
    for (Field field : {Field::Complex, Field::Quaternionic}) {
      for (int n = 4; n <= 16; ++n) {
        const AmbientSpace sp = make_space(field, n);
        const AlphaWindow w = alpha_window(sp.m, 0.0);
        ++rep.trials;
        rep.min_slack = std::min(rep.min_slack, w.hi - w.lo);
        if (!w.nonempty) ++rep.violations;
      }
    }
    reports.push_back(std::move(rep));
  }

  // Z changes sign inside the pinching set: a witness must exist.
  {
    TrialReport rep;
    rep.claim_id = "Z_sign_witness";
    rep.seed = derive_seed(config.seed, rep.claim_id);
    rep.trials = std::min<long>(config.trials, 10000);
    rep.min_slack = 0.0;
    const auto w = witness_negative_Z(m, 0.01, rep.trials, rep.seed);
    if (w) {
      rep.witness = w->lambdas;
      rep.min_slack = w->Z;
    } else {
      ++rep.violations;
    }
    reports.push_back(std::move(rep));
  }

  return reports;
}

}  // namespace crossflow
