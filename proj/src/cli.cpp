#include "crossflow/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crossflow/ambient.hpp"
#include "crossflow/curvature.hpp"
#include "crossflow/flow.hpp"
#include "crossflow/lab.hpp"
#include "crossflow/profiles.hpp"
#include "crossflow/spectrum.hpp"

namespace crossflow::cli {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Expands "cp3..cp6" into cp3 cp4 cp5 cp6; plain names pass through.
std::vector<AmbientSpace> expand_space_list(const std::vector<std::string>& tokens) {
  std::vector<AmbientSpace> spaces;
  for (const auto& tok : tokens) {
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      spaces.push_back(parse_space(tok));
      continue;
    }
    const AmbientSpace lo = parse_space(tok.substr(0, dots));
    const AmbientSpace hi = parse_space(tok.substr(dots + 2));
    if (lo.field != hi.field || hi.n < lo.n) {
      throw std::invalid_argument("bad space range '" + tok + "'");
    }
    for (int n = lo.n; n <= hi.n; ++n) spaces.push_back(make_space(lo.field, n));
  }
  return spaces;
}

json report_to_json(const TrialReport& r) {
  json j{{"claim_id", r.claim_id},
         {"trials", r.trials},
         {"violations", r.violations},
         {"min_slack", r.min_slack},
         {"seed", r.seed},
         {"certified", r.certified}};
  if (r.witness) {
    j["witness"] = std::vector<double>(r.witness->data(), r.witness->data() + r.witness->size());
  }
  return j;
}

struct VerifyArgs {
  std::string space = "cp4";
  long trials = 10000;
  std::uint64_t seed = 7;
  std::string out_path;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const AmbientSpace space = parse_space(args.space);
  const CurvatureTensor tensor = curvature_tensor(space);
  const int d = space.dim();

  json ambient;
  {
    // Tensor symmetries + first Bianchi, componentwise.
    double sym = 0.0, bianchi = 0.0;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int c = 0; c < d; ++c) {
          for (int e = 0; e < d; ++e) {
            const double v = tensor.at(a, b, c, e);
            sym = std::max({sym, std::abs(v + tensor.at(b, a, c, e)),
                            std::abs(v + tensor.at(a, b, e, c)),
                            std::abs(v - tensor.at(c, e, a, b))});
            bianchi = std::max(bianchi, std::abs(v + tensor.at(b, c, a, e) +
                                                 tensor.at(c, a, b, e)));
          }
        }
      }
    }
    const double ric_err =
        (tensor.ricci() - space.einstein * Eigen::MatrixXd::Identity(d, d))
            .cwiseAbs()
            .maxCoeff();

    Rng rng(derive_seed(args.seed, "ambient"));
    double kmin = 1e300, kmax = -1e300, formula_err = 0.0;
    const auto structures = structure_matrices(space);
    for (int i = 0; i < 2000; ++i) {
      Eigen::VectorXd x(d), y(d);
      for (int q = 0; q < d; ++q) x[q] = rng.gaussian();
      for (int q = 0; q < d; ++q) y[q] = rng.gaussian();
      x.normalize();
      y -= y.dot(x) * x;
      y.normalize();
      const double k = sectional_curvature(tensor, x, y);
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
      double proj = 0.0;
      for (const auto& J : structures) {
        const double c = (J * y).dot(x);
        proj += c * c;
      }
      formula_err = std::max(formula_err, std::abs(k - (1.0 + 3.0 * proj)));
    }
    ambient = json{{"symmetry_residual", sym},
                   {"bianchi_residual", bianchi},
                   {"einstein_residual", ric_err},
                   {"sectional_min", kmin},
                   {"sectional_max", kmax},
                   {"sectional_formula_residual", formula_err}};
  }

  SuiteConfig config;
  config.trials = args.trials;
  config.seed = args.seed;
  const auto reports = run_suite(space, config);
  const bool pass = all_certified_pass(reports) &&
                    ambient["symmetry_residual"].get<double>() <= 1e-12 &&
                    ambient["bianchi_residual"].get<double>() <= 1e-12 &&
                    ambient["einstein_residual"].get<double>() <= 1e-12 &&
                    ambient["sectional_min"].get<double>() >= 1.0 - 1e-10 &&
                    ambient["sectional_max"].get<double>() <= 4.0 + 1e-10;

  json facts;
  for (double eps : config.eps_grid) {
    const DimensionGate g = dimension_gate(space, eps);
    facts["dimension_gate"].push_back(
        json{{"eps", eps}, {"ineq1", g.ineq1}, {"ineq2", g.ineq2}, {"pass", g.pass}});
  }
  const AlphaWindow w = alpha_window(space.m, 0.0);
  facts["alpha_window"] = json{{"lo", w.lo}, {"hi", w.hi}, {"nonempty", w.nonempty}};

  json root{{"space", space_name(space)},
            {"m", space.m},
            {"einstein", space.einstein},
            {"seed", args.seed},
            {"trials", args.trials},
            {"ambient_checks", ambient},
            {"facts", facts},
            {"all_certified_pass", pass}};
  for (const auto& r : reports) root["claims"].push_back(report_to_json(r));

  if (!args.out_path.empty()) {
    std::ofstream f(args.out_path);
    if (!f) throw std::invalid_argument("cannot open output file " + args.out_path);
    f << root.dump(2) << "\n";
  }
  out << root.dump(2) << "\n";
  return pass ? 0 : 1;
}

struct FlowArgs {
  std::string space = "cp4";
  std::string family = "sphere";
  int k = 1;
  double r0 = 0.7853981633974483;  // pi/4
  double eps = 0.01;
  double eta = 0.01;
  double sigma = 0.01;
  std::uint64_t seed = 7;
  double curvature_cap = 1e6;
  double radius_floor = 1e-6;
  double time_cap = 10.0;
  double max_dlog_h = 1e-4;
  std::string out_path = "flow.csv";
};

int cmd_flow(const FlowArgs& args, std::ostream& out) {
  const AmbientSpace space = parse_space(args.space);
  EquivariantFamily family;
  if (args.family == "sphere") {
    family = geodesic_sphere_family(space);
  } else if (args.family == "tube") {
    family = tube_family(space, args.k);
  } else {
    throw std::invalid_argument("unknown family '" + args.family + "' (sphere|tube)");
  }
  const PinchingParams params = make_params(space.m, args.eps, args.eta, args.sigma);
  StopRule stop;
  stop.curvature_cap = args.curvature_cap;
  stop.radius_floor = args.radius_floor;
  stop.time_cap = args.time_cap;
  IntegratorOptions opts;
  opts.max_dlog_h = args.max_dlog_h;

  if (!(args.r0 > family.r_min && args.r0 < family.r_max)) {
    throw std::invalid_argument("r0 outside the family domain");
  }

  FlowTrajectory traj;
  try {
    traj = evolve(family, args.r0, params, stop, opts);
  } catch (const std::invalid_argument&) {
    throw;  // config-level error: bad r0 / H(r0) <= 0
  } catch (const std::runtime_error& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return 1;
  }

  const EvolutionResiduals res = evolution_residuals(traj, curvature_tensor(space));
  const MonitorSummary mon = monitor_report(traj, params);

  // CSV, downsampled to at most 10^4 rows.
  std::ofstream csv(args.out_path);
  if (!csv) throw std::invalid_argument("cannot open output file " + args.out_path);
  csv << "t,r,H,normA2,normAo2,Z,Q,f_sigma_eta,lambda1,lambda1_plus_lambda2,gap_ratio,"
         "log_volume\n";
  const size_t n = traj.samples.size();
  const size_t stride = (n > 10000) ? (n + 9999) / 10000 : 1;
  for (size_t i = 0; i < n; i += stride) {
    const size_t idx = (i + stride >= n) ? n - 1 : i;  // always include the last sample
    const FlowSample& s = traj.samples[idx];
    const ShapeSpectrum spec = ShapeSpectrum::from_values(s.lambdas);
    const CylindricalGap gap = cylindrical_gap(spec, params.eta);
    csv << fmt17(s.t) << ',' << fmt17(s.r) << ',' << fmt17(s.H) << ',' << fmt17(s.normA2)
        << ',' << fmt17(s.normAo2) << ',' << fmt17(s.Z) << ',' << fmt17(s.Q) << ','
        << fmt17(s.f_sigma_eta) << ',' << fmt17(s.lambdas[0]) << ','
        << fmt17(s.lambdas[0] + s.lambdas[1]) << ',' << fmt17(gap.gap / (s.H * s.H)) << ','
        << fmt17(s.log_volume) << '\n';
    if (idx == n - 1) break;
  }
  csv.close();

  json footer{{"space", space_name(space)},
              {"family", family_name(family)},
              {"r0", args.r0},
              {"t_singular_estimate", traj.t_singular_estimate},
              {"termination", traj.termination == Termination::CurvatureCap ? "CurvatureCap"
                              : traj.termination == Termination::RadiusFloor ? "RadiusFloor"
                                                                             : "TimeCap"},
              {"samples", n},
              {"residuals",
               json{{"resH", res.resH}, {"resA2", res.resA2}, {"resVol", res.resVol}}},
              {"monitor",
               json{{"max_Q", mon.max_Q},
                    {"c_prime", mon.c_prime},
                    {"eta", mon.eta},
                    {"reached_high_H", mon.reached_high_H},
                    {"max_gap_ratio_high_H", mon.max_gap_ratio_high_H},
                    {"max_abs_l1_over_H_high_H", mon.max_abs_l1_over_H_high_H},
                    {"final_A2_over_H2", mon.final_A2_over_H2},
                    {"final_H", mon.final_H}}}};
  const std::string footer_path = args.out_path + ".json";
  std::ofstream jf(footer_path);
  if (!jf) throw std::invalid_argument("cannot open output file " + footer_path);
  jf << footer.dump(2) << "\n";

  out << "flow written: " << args.out_path << " (" << n << " samples, footer "
      << footer_path << ")\n";
  return 0;
}

int cmd_window(const std::vector<std::string>& tokens, std::ostream& out) {
  const auto spaces = expand_space_list(tokens);
  out << "space  field  n   m   einstein  alpha_lo      alpha_hi      gate_pass\n";
  for (const auto& sp : spaces) {
    const AlphaWindow w = alpha_window(sp.m, 0.0);
    const DimensionGate g = dimension_gate(sp, 0.01);
    std::ostringstream line;
    line << std::left << std::setw(7) << space_name(sp) << std::setw(7)
         << (sp.field == Field::Complex ? "C" : "H") << std::setw(4) << sp.n << std::setw(4)
         << sp.m << std::setw(10) << sp.einstein << std::setw(14) << std::setprecision(6)
         << w.lo << std::setw(14) << w.hi << (g.pass ? "true" : "false");
    out << line.str() << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"crossflow: verification lab for mean curvature flow in CP^n and HP^n"};
  app.require_subcommand(1);
  app.set_config("--config");

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "run the certification suite");
  verify->add_option("--space", vargs.space, "ambient space, e.g. cp4 or hp4");
  verify->add_option("--trials", vargs.trials, "trials per claim");
  verify->add_option("--seed", vargs.seed, "random seed")->envname("CROSSFLOW_SEED");
  verify->add_option("--out", vargs.out_path, "JSON report path");

  FlowArgs fargs;
  auto* flow = app.add_subcommand("flow", "integrate an equivariant flow");
  flow->add_option("--space", fargs.space, "ambient space");
  flow->add_option("--family", fargs.family, "sphere or tube");
  flow->add_option("--k", fargs.k, "tube core dimension");
  flow->add_option("--r0", fargs.r0, "initial radius");
  flow->add_option("--eps", fargs.eps, "pinching epsilon");
  flow->add_option("--eta", fargs.eta, "eta");
  flow->add_option("--sigma", fargs.sigma, "sigma");
  flow->add_option("--seed", fargs.seed, "random seed")->envname("CROSSFLOW_SEED");
  flow->add_option("--hcap", fargs.curvature_cap, "curvature cap");
  flow->add_option("--rfloor", fargs.radius_floor, "radius floor");
  flow->add_option("--tcap", fargs.time_cap, "time cap");
  flow->add_option("--max-dlogh", fargs.max_dlog_h, "per-step log H increment cap");
  flow->add_option("--out", fargs.out_path, "CSV output path");

  std::vector<std::string> window_tokens;
  auto* window = app.add_subcommand("window", "alpha-window and dimension-gate table");
  window->add_option("spaces", window_tokens, "spaces, e.g. cp3..cp6 hp4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(vargs, out);
    if (flow->parsed()) return cmd_flow(fargs, out);
    if (window->parsed()) return cmd_window(window_tokens, out);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace crossflow::cli
