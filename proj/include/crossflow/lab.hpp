#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossflow/ambient.hpp"
#include "crossflow/curvature.hpp"
#include "crossflow/spectrum.hpp"

namespace crossflow {

/// One randomized certification run. `certified` claims correspond to proved
/// statements: a single violation fails the suite (it can only mean an
/// implementation or convention bug). Exploratory reports never gate.
struct TrialReport {
  std::string claim_id;
  long trials = 0;
  long violations = 0;
  double min_slack = 0.0;
  std::optional<Eigen::VectorXd> witness;  // spectrum of the worst offender
  std::uint64_t seed = 0;
  bool certified = true;
};

/// Randomized certification of
///   tangential coupling >= m |Aring|^2
/// over random frames and symmetric h (gaussian and prescribed-spectrum
/// samplers alternating). Slack tolerance -1e-9.
TrialReport certify_coupling_bound(const AmbientSpace& space, long trials, std::uint64_t seed);

/// Searches pinched spectra (Q_eps < 0, H > 0) for Z < 0 within the budget.
std::optional<ShapeSpectrum> witness_negative_Z(int m, double eps, long budget,
                                                std::uint64_t seed);

struct BoundZRow {
  double gamma = 0.0;
  double K_emp = 0.0;  // max over samples of (gamma H^2 (|A|^2 - H^2/(m-1) - eta H^2) - Z)/(H^3+1)
  long trials = 0;
};

/// Exploratory: empirical minimal K for each candidate gamma in the lower
/// bound Z >= gamma H^2 (|A|^2 - H^2/(m-1) - eta H^2) - K (H^3 + 1) over
/// pinched spectra. No pass/fail.
std::vector<BoundZRow> explore_bound_Z(int m, double eps, double eta,
                                       const std::vector<double>& gamma_grid,
                                       long trials, std::uint64_t seed);

struct SuiteConfig {
  std::vector<double> eps_grid{1e-3, 1e-2, 1e-1};
  std::vector<double> eta_grid{1e-3, 1e-2, 1e-1};
  std::vector<double> sigma_grid{0.0, 0.01, 0.1};
  long trials = 10000;
  std::uint64_t seed = 0;
};

/// Runs every certifiable static claim for one space at every parameter
/// point and returns one report per claim. Deterministic for a fixed seed.
std::vector<TrialReport> run_suite(const AmbientSpace& space, const SuiteConfig& config);

inline bool all_certified_pass(const std::vector<TrialReport>& reports) {
  for (const auto& r : reports) {
    if (r.certified && r.violations != 0) return false;
  }
  return true;
}

}  // namespace crossflow
