#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace crossflow {

enum class Field { Complex, Quaternionic };

/// The ambient projective space KP^n, normalized so the sectional curvature
/// ranges over [1, 4]. All geometry is evaluated in a fixed orthonormal model
/// tangent space R^{a*n} carrying the structure endomorphisms of K (one
/// complex structure J for C, a compatible triple I, J, K for H); homogeneity
/// makes one model point enough.
struct AmbientSpace {
  Field field = Field::Complex;
  int n = 0;          // projective dimension
  int a = 0;          // real dimension of K: 2 or 4
  int m = 0;          // hypersurface dimension a*n - 1
  double einstein = 0.0;  // Ricci = einstein * g: m+3 for C, m+9 for H

  int dim() const { return a * n; }
};

/// Builds a validated AmbientSpace. Throws std::invalid_argument for n < 2.
AmbientSpace make_space(Field field, int n);

/// Parses "cp4" / "hp3" style names (case-insensitive).
AmbientSpace parse_space(const std::string& name);

std::string space_name(const AmbientSpace& space);

/// The a-1 structure endomorphisms as dim x dim matrices. Each is orthogonal
/// and skew-symmetric with square -identity; the quaternionic triple
/// satisfies I*J = K cyclically.
std::vector<Eigen::MatrixXd> structure_matrices(const AmbientSpace& space);

}  // namespace crossflow
