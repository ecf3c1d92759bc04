#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace crossflow {

/// Embedded Dormand-Prince 5(4) step on a small fixed-size state. Returns the
/// scaled error estimate of the 4th-order comparison; the caller accepts or
/// rejects and adapts the step.
template <int N, typename Rhs>
double dopri5_step(const Rhs& rhs, double t, const std::array<double, N>& y,
                   double h, std::array<double, N>& y_out, double rtol, double atol) {
  using State = std::array<double, N>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  State k1, k2, k3, k4, k5, k6, k7, tmp;
  rhs(t, y, k1);
  for (int i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  rhs(t + c2 * h, tmp, k2);
  for (int i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  rhs(t + c3 * h, tmp, k3);
  for (int i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  rhs(t + c4 * h, tmp, k4);
  for (int i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  rhs(t + c5 * h, tmp, k5);
  for (int i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  rhs(t + h, tmp, k6);
  for (int i = 0; i < N; ++i)
    y_out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  rhs(t + h, y_out, k7);

  double err = 0.0;
  for (int i = 0; i < N; ++i) {
    const double ei =
        h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y_out[i]));
    const double r = ei / sc;
    err += r * r;
  }
  return std::sqrt(err / N);
}

/// Integrates y' = rhs from t0 to t1 adaptively. `watch` (may be null) sees
/// every accepted step. Throws std::runtime_error on step-size underflow.
template <int N, typename Rhs, typename Watch>
void dopri5_integrate(const Rhs& rhs, double t0, double t1, std::array<double, N>& y,
                      double rtol, double atol, Watch&& watch, double h_init = 0.0) {
  double t = t0;
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  double h = (h_init != 0.0) ? h_init : dir * std::max(1e-8, 1e-4 * std::abs(t1 - t0));
  const double h_min = 1e-15 * std::max(1.0, std::abs(t1 - t0));
  std::array<double, N> y_new;
  while (dir * (t1 - t) > 0.0) {
    if (dir * h > dir * (t1 - t)) h = t1 - t;
    const double err = dopri5_step<N>(rhs, t, y, h, y_new, rtol, atol);
    if (err <= 1.0) {
      t += h;
      y = y_new;
      watch(t, y);
      const double grow = (err == 0.0) ? 5.0 : 0.9 * std::pow(err, -0.2);
      h *= std::min(5.0, std::max(0.2, grow));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (std::abs(h) < h_min) {
      throw std::runtime_error("dopri5_integrate: step size underflow");
    }
  }
}

}  // namespace crossflow
