#pragma once

#include <utility>
#include <vector>

#include "crossflow/ambient.hpp"
#include "crossflow/curvature.hpp"
#include "crossflow/spectrum.hpp"

namespace crossflow {

enum class FamilyKind { GeodesicSphere, TubeAroundKPk };

/// Closed-form principal-curvature profile of one eigenvalue class along the
/// radial direction (ambient radial curvature 1 or 4).
enum class ProfileKind {
  Cot,        // cot(r): sphere-like class, ambient curvature 1
  TwoCotTwo,  // 2cot(2r): the J_s nu directions, ambient curvature 4
  MinusTan,   // -tan(r): directions focalizing on the tube core
};

struct CurvatureClass {
  ProfileKind profile;
  double ambient_curvature;  // 1 or 4
  int count;
};

/// Homogeneous hypersurface family in KP^n: geodesic spheres, or tubes of
/// radius r around a totally geodesic KP^k (0 < k < n). MCF on the family
/// reduces to dr/dt = -H(r).
struct EquivariantFamily {
  AmbientSpace space;
  FamilyKind kind = FamilyKind::GeodesicSphere;
  int k = 0;  // tube core dimension (tube only)
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<CurvatureClass> classes;
};

EquivariantFamily geodesic_sphere_family(const AmbientSpace& space);
EquivariantFamily tube_family(const AmbientSpace& space, int k);

std::string family_name(const EquivariantFamily& family);

double class_value(ProfileKind kind, double r);
double class_value_derivative(ProfileKind kind, double r);

/// Per-direction curvature values in the class order of `family.classes`
/// (the order the adapted frame lists its tangent directions).
Eigen::VectorXd profile_values(const EquivariantFamily& family, double r);

/// Sorted principal-curvature spectrum at radius r; throws outside r_domain.
ShapeSpectrum spectrum_at(const EquivariantFamily& family, double r);

double mean_curvature_profile(const EquivariantFamily& family, double r);
double dH_dr(const EquivariantFamily& family, double r);

/// Model-point frame adapted to the family: normal = radial direction,
/// tangent directions grouped by curvature class (J_s nu block first, then
/// core-tangent, then core-normal); h = diag(profile_values(r)).
FrameConfig adapted_frame(const EquivariantFamily& family, double r);

/// Maximal subintervals of the radius domain where Q(spectrum_at(r)) < 0,
/// located by grid scan plus bisection refinement to 1e-8 in r.
std::vector<std::pair<double, double>> pinched_interval(const EquivariantFamily& family,
                                                        double eps, int grid);

enum class RiccatiStart { SphereCap, FocalCore };

/// Independent oracle for the closed-form profiles: integrates the radial
/// shape-operator equation s' = -(s^2 + curv) from a series initial condition
/// near r = 0 (SphereCap: s ~ 1/r0; FocalCore: s ~ -curv*r0) and returns
/// s(r). Targets sqrt(k)cot(sqrt(k)r) and -sqrt(k)tan(sqrt(k)r).
/// Throws std::runtime_error if a pole is crossed.
double radial_riccati_oracle(double curv, double r, RiccatiStart condition);

}  // namespace crossflow
