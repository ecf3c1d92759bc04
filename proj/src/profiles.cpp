#include "crossflow/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include "crossflow/ode.hpp"

namespace crossflow {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDomainMargin = 1e-6;  // closed forms blow up at the ends

void check_domain(const EquivariantFamily& family, double r) {
  if (!(r >= family.r_min && r <= family.r_max)) {
    throw std::invalid_argument("radius outside the family domain");
  }
}

}  // namespace

EquivariantFamily geodesic_sphere_family(const AmbientSpace& space) {
  EquivariantFamily f;
  f.space = space;
  f.kind = FamilyKind::GeodesicSphere;
  f.r_min = kDomainMargin;
  f.r_max = kPi / 2.0 - kDomainMargin;
  f.classes = {
      {ProfileKind::TwoCotTwo, 4.0, space.a - 1},
      {ProfileKind::Cot, 1.0, space.m - space.a + 1},
  };
  return f;
}

EquivariantFamily tube_family(const AmbientSpace& space, int k) {
  if (k <= 0 || k >= space.n) {
    throw std::invalid_argument("tube_family: need 0 < k < n");
  }
  EquivariantFamily f;
  f.space = space;
  f.kind = FamilyKind::TubeAroundKPk;
  f.k = k;
  f.r_min = kDomainMargin;
  f.r_max = kPi / 2.0 - kDomainMargin;
  f.classes = {
      {ProfileKind::TwoCotTwo, 4.0, space.a - 1},
      {ProfileKind::MinusTan, 1.0, space.a * k},
      {ProfileKind::Cot, 1.0, space.a * (space.n - k - 1)},
  };
  return f;
}

std::string family_name(const EquivariantFamily& family) {
  if (family.kind == FamilyKind::GeodesicSphere) {
    return "sphere(" + space_name(family.space) + ")";
  }
  return "tube_k" + std::to_string(family.k) + "(" + space_name(family.space) + ")";
}

double class_value(ProfileKind kind, double r) {
  switch (kind) {
    case ProfileKind::Cot:
      return 1.0 / std::tan(r);
    case ProfileKind::TwoCotTwo:
      return 2.0 / std::tan(2.0 * r);
    case ProfileKind::MinusTan:
      return -std::tan(r);
  }
  return 0.0;
}

double class_value_derivative(ProfileKind kind, double r) {
  switch (kind) {
    case ProfileKind::Cot: {
      const double s = std::sin(r);
      return -1.0 / (s * s);
    }
    case ProfileKind::TwoCotTwo: {
      const double s = std::sin(2.0 * r);
      return -4.0 / (s * s);
    }
    case ProfileKind::MinusTan: {
      const double c = std::cos(r);
      return -1.0 / (c * c);
    }
  }
  return 0.0;
}

Eigen::VectorXd profile_values(const EquivariantFamily& family, double r) {
  check_domain(family, r);
  Eigen::VectorXd v(family.space.m);
  int at = 0;
  for (const auto& cls : family.classes) {
    const double val = class_value(cls.profile, r);
    for (int i = 0; i < cls.count; ++i) v[at++] = val;
  }
  return v;
}

ShapeSpectrum spectrum_at(const EquivariantFamily& family, double r) {
  return ShapeSpectrum::from_values(profile_values(family, r));
}

double mean_curvature_profile(const EquivariantFamily& family, double r) {
  check_domain(family, r);
  double H = 0.0;
  for (const auto& cls : family.classes) H += cls.count * class_value(cls.profile, r);
  return H;
}

double dH_dr(const EquivariantFamily& family, double r) {
  check_domain(family, r);
  double d = 0.0;
  for (const auto& cls : family.classes) d += cls.count * class_value_derivative(cls.profile, r);
  return d;
}

FrameConfig adapted_frame(const EquivariantFamily& family, double r) {
  const AmbientSpace& space = family.space;
  const int dim = space.dim();
  const int m = space.m;

  // Model basis layout: block b spans indices [a*b, a*(b+1)). The normal is
  // the first vector of block 0, so J_s nu fills the rest of block 0; blocks
  // 1..k carry the tube core tangent space, the remaining blocks its normal
  // complement. Both groups are J_s-invariant, matching the real geometry.
  FrameConfig frame;
  frame.normal = Eigen::VectorXd::Zero(dim);
  frame.normal[0] = 1.0;
  frame.tangent = Eigen::MatrixXd::Zero(m, dim);
  int row = 0;
  for (int s = 1; s < space.a; ++s) frame.tangent(row++, s) = 1.0;  // J_s nu
  const int core_blocks = (family.kind == FamilyKind::TubeAroundKPk) ? family.k : 0;
  for (int b = 1; b <= core_blocks; ++b) {
    for (int s = 0; s < space.a; ++s) frame.tangent(row++, space.a * b + s) = 1.0;
  }
  for (int b = core_blocks + 1; b < space.n; ++b) {
    for (int s = 0; s < space.a; ++s) frame.tangent(row++, space.a * b + s) = 1.0;
  }

  frame.h = profile_values(family, r).asDiagonal();
  fill_hopf_angles(space, frame);
  return frame;
}

std::vector<std::pair<double, double>> pinched_interval(const EquivariantFamily& family,
                                                        double eps, int grid) {
  if (grid <= 0) return {};
  const double a_eps = 1.0 / (double(family.space.m - 2) + eps);
  const double b_eps = 4.0 * (1.0 - eps);
  auto q_at = [&](double r) {
    const ShapeSpectrum s = spectrum_at(family, r);
    return s.normA2 - a_eps * s.H * s.H - b_eps;
  };

  auto refine = [&](double lo, double hi) {
    // bisect the sign change between lo and hi to 1e-8 in r
    double qlo = q_at(lo);
    while (hi - lo > 1e-8) {
      const double mid = 0.5 * (lo + hi);
      const double qm = q_at(mid);
      if ((qlo < 0.0) == (qm < 0.0)) {
        lo = mid;
        qlo = qm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  std::vector<std::pair<double, double>> out;
  const double dr = (family.r_max - family.r_min) / grid;
  bool inside = false;
  double start = 0.0;
  double prev_r = family.r_min;
  bool prev_neg = q_at(prev_r) < 0.0;
  if (prev_neg) {
    inside = true;
    start = family.r_min;
  }
  for (int i = 1; i <= grid; ++i) {
    const double r = family.r_min + i * dr;
    const bool neg = q_at(r) < 0.0;
    if (neg != prev_neg) {
      const double boundary = refine(prev_r, r);
      if (neg) {
        inside = true;
        start = boundary;
      } else {
        out.emplace_back(start, boundary);
        inside = false;
      }
    }
    prev_r = r;
    prev_neg = neg;
  }
  if (inside) out.emplace_back(start, family.r_max);
  return out;
}

double radial_riccati_oracle(double curv, double r, RiccatiStart condition) {
  if (!(curv == 1.0 || curv == 4.0)) {
    throw std::invalid_argument("radial_riccati_oracle: curv must be 1 or 4");
  }
  if (!(r > 0.0)) throw std::invalid_argument("radial_riccati_oracle: r must be positive");
  const double r0 = 1e-4;
  if (r <= r0) throw std::invalid_argument("radial_riccati_oracle: r too small");

  std::array<double, 1> s{};
  if (condition == RiccatiStart::SphereCap) {
    s[0] = 1.0 / r0 - curv * r0 / 3.0;  // series for sqrt(k)cot(sqrt(k)r)
  } else {
    s[0] = -curv * r0 - curv * curv * r0 * r0 * r0 / 3.0;  // -sqrt(k)tan(sqrt(k)r)
  }
  const double pole_guard = 1e7;
  auto rhs = [curv](double, const std::array<double, 1>& y, std::array<double, 1>& dy) {
    dy[0] = -(y[0] * y[0] + curv);
  };
  try {
    dopri5_integrate<1>(rhs, r0, r, s, 1e-12, 1e-12, [&](double, const std::array<double, 1>& y) {
      if (std::abs(y[0]) > pole_guard || !std::isfinite(y[0])) {
        throw std::runtime_error("radial_riccati_oracle: pole crossed");
      }
    });
  } catch (const std::runtime_error&) {
    throw std::runtime_error("radial_riccati_oracle: pole crossed before target radius");
  }
  return s[0];
}

}  // namespace crossflow
