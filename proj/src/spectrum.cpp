#include "crossflow/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crossflow {

ShapeSpectrum ShapeSpectrum::from_values(Eigen::VectorXd values) {
  if (values.size() < 1) {
    throw std::invalid_argument("ShapeSpectrum: empty spectrum");
  }
  std::sort(values.data(), values.data() + values.size());
  ShapeSpectrum s;
  s.lambdas = std::move(values);
  const int m = s.m();
  for (int i = 0; i < m; ++i) {
    const double l = s.lambdas[i];
    s.H += l;
    s.normA2 += l * l;
    s.traceA3 += l * l * l;
  }
  s.normAo2 = std::max(0.0, s.normA2 - s.H * s.H / double(m));
  s.Z = s.H * s.traceA3 - s.normA2 * s.normA2;
  return s;
}

ShapeSpectrum ShapeSpectrum::from_values(const std::vector<double>& values) {
  Eigen::VectorXd v(Eigen::Index(values.size()));
  for (size_t i = 0; i < values.size(); ++i) v[Eigen::Index(i)] = values[i];
  return from_values(std::move(v));
}

AlphaWindow alpha_window(int m, double eta) {
  if (m < 3) throw std::invalid_argument("alpha_window: m must be >= 3");
  AlphaWindow w;
  w.lo = 2.0 / (double(m) * double(m - 2)) - eta;
  w.hi = 3.0 / double(m + 2) - 1.0 / double(m - 1) - eta;
  w.nonempty = w.lo < w.hi;
  return w;
}

PinchingParams make_params(int m, double epsilon, double eta, double sigma) {
  if (m < 3) throw std::invalid_argument("make_params: m must be >= 3");
  if (!(epsilon > 0.0) || !(eta > 0.0) || sigma < 0.0 || sigma >= 1.0) {
    throw std::invalid_argument("make_params: need epsilon > 0, eta > 0, 0 <= sigma < 1");
  }
  const AlphaWindow w = alpha_window(m, eta);
  const double lo_eff = std::max(w.lo, 0.0);
  if (!(lo_eff < w.hi)) {
    throw std::invalid_argument("make_params: no admissible alpha (window empty or negative)");
  }
  PinchingParams p;
  p.m = m;
  p.epsilon = epsilon;
  p.eta = eta;
  p.sigma = sigma;
  p.a_eps = 1.0 / (double(m - 2) + epsilon);
  p.b_eps = 4.0 * (1.0 - epsilon);
  p.beta = p.b_eps;
  p.alpha = 0.5 * (lo_eff + w.hi);
  return p;
}

bool pinched(const ShapeSpectrum& s) {
  const int m = s.m();
  if (m < 3) throw std::invalid_argument("pinched: m must be >= 3");
  return s.H > 0.0 && s.normA2 < s.H * s.H / double(m - 2) + 4.0;
}

double pinched_eps(const ShapeSpectrum& s, const PinchingParams& p) {
  return s.normA2 - p.a_eps * s.H * s.H - p.b_eps;
}

WandF W_and_f(const ShapeSpectrum& s, const PinchingParams& p) {
  const int m = s.m();
  WandF out;
  out.W = p.alpha * s.H * s.H + p.beta;
  if (!(out.W > 0.0)) {
    throw std::domain_error("W_and_f: W <= 0 (invalid params)");
  }
  const double num = s.normA2 - (1.0 / double(m - 1) + p.eta) * s.H * s.H;
  out.f0 = num / out.W;
  out.f_sigma_eta = num / std::pow(out.W, 1.0 - p.sigma);
  return out;
}

TwoConvexity two_convexity_check(const ShapeSpectrum& s, double epsilon) {
  const int m = s.m();
  if (m < 3) throw std::invalid_argument("two_convexity_check: m must be >= 3");
  const double a_eps = 1.0 / (double(m - 2) + epsilon);
  const double b_eps = 4.0 * (1.0 - epsilon);
  const double Q = s.normA2 - a_eps * s.H * s.H - b_eps;
  if (!(s.H > 0.0) || Q > 1e-12 * std::max(1.0, s.normA2)) {
    throw std::invalid_argument("two_convexity_check: spectrum not pinched for this epsilon");
  }
  TwoConvexity out;
  out.threshold_met =
      s.H * s.H >= 8.0 * double(m - 2) * (double(m - 2) + epsilon) / epsilon;
  out.margin = s.lambdas[0] + s.lambdas[1] -
               epsilon * s.H / (4.0 * (double(m - 2) + epsilon));
  out.bound_holds = !out.threshold_met || out.margin >= -1e-10;
  return out;
}

double lambda1_split_identity_residual(const ShapeSpectrum& s) {
  const int m = s.m();
  if (m < 3) throw std::invalid_argument("lambda1_split_identity_residual: m must be >= 3");
  const double lhs = s.normA2 - s.H * s.H / double(m - 1);
  double pair_sum = 0.0;
  for (int i = 1; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = s.lambdas[i] - s.lambdas[j];
      pair_sum += d * d;
    }
  }
  const double l1 = s.lambdas[0];
  const double rhs = (pair_sum + l1 * (double(m) * l1 - 2.0 * s.H)) / double(m - 1);
  return std::abs(lhs - rhs);
}

CylindricalGap cylindrical_gap(const ShapeSpectrum& s, double eta) {
  const int m = s.m();
  if (m < 3) throw std::invalid_argument("cylindrical_gap: m must be >= 3");
  CylindricalGap out;
  out.hypothesis = std::abs(s.lambdas[0]) <= eta * s.H;
  int first = 1;
  while (first < m && s.lambdas[first] == s.lambdas[0]) ++first;
  if (first >= m) {
    out.gap = 0.0;  // umbilic: nothing above the bottom class
  } else {
    const double d = s.lambdas[m - 1] - s.lambdas[first];
    out.gap = d * d;
  }
  return out;
}

DimensionGate dimension_gate(const AmbientSpace& space, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("dimension_gate: epsilon must be in (0,1)");
  }
  const int m = space.m;
  const double a_eps = 1.0 / (double(m - 2) + epsilon);
  const double b_eps = 4.0 * (1.0 - epsilon);
  DimensionGate g;
  g.ineq1 = 2.0 * b_eps - 4.0 * double(m) < -4.0 / a_eps;
  g.ineq2 = 2.0 * space.einstein < 4.0 / a_eps;
  g.pass = g.ineq1 && g.ineq2;
  return g;
}

ShapeSpectrum sample_pinched(Rng& rng, int m, double epsilon,
                             PinchedStratum stratum, double target_H) {
  if (m < 3) throw std::invalid_argument("sample_pinched: m must be >= 3");
  const double a_eps = 1.0 / (double(m - 2) + epsilon);
  const double b_eps = 4.0 * (1.0 - epsilon);

  Eigen::VectorXd g(m);
  for (int i = 0; i < m; ++i) g[i] = rng.gaussian();
  double H = g.sum();
  if (H < 0.0) {
    g = -g;
    H = -H;
  }
  if (H == 0.0) H = 1e-8;
  if (target_H > 0.0) H = target_H;

  Eigen::VectorXd shape = (g.array() - g.sum() / double(m)).matrix();  // trace-free part
  double shape2 = shape.squaredNorm();
  if (shape2 == 0.0) {
    shape.setZero();
    shape[0] = -1.0;
    shape[m - 1] = 1.0;
    shape2 = 2.0;
  }

  // lambda(theta) = (H/m) 1 + theta * shape has
  //   Q(theta) = theta^2 |shape|^2 - [(a_eps - 1/m) H^2 + b_eps],
  // and the bracket is positive for every m >= 3, so theta below theta_max
  // always lands strictly inside the pinching set.
  const double budget = (a_eps - 1.0 / double(m)) * H * H + b_eps;
  const double theta_max = std::sqrt(budget / shape2);

  double theta = 0.0;
  switch (stratum) {
    case PinchedStratum::Gaussian:
      theta = (target_H > 0.0 || theta_max < 1.0) ? theta_max * rng.uniform(0.05, 0.95)
                                                  : 1.0;  // raw sample already pinched
      if (theta >= theta_max) theta = 0.95 * theta_max;
      break;
    case PinchedStratum::NearUmbilic:
      theta = theta_max * 0.05 * rng.uniform();
      break;
    case PinchedStratum::NearBoundary:
      theta = theta_max * (1.0 - 1e-7 * rng.uniform(0.5, 1.0));
      break;
  }

  Eigen::VectorXd lam = ((H / double(m)) + theta * shape.array()).matrix();
  return ShapeSpectrum::from_values(std::move(lam));
}

}  // namespace crossflow
