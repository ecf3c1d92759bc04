#include "crossflow/ambient.hpp"

#include <cctype>
#include <stdexcept>

namespace crossflow {

AmbientSpace make_space(Field field, int n) {
  if (n < 2) {
    throw std::invalid_argument("make_space: projective dimension n must be >= 2");
  }
  AmbientSpace s;
  s.field = field;
  s.n = n;
  s.a = (field == Field::Complex) ? 2 : 4;
  s.m = s.a * n - 1;
  s.einstein = (field == Field::Complex) ? double(s.m + 3) : double(s.m + 9);
  return s;
}

AmbientSpace parse_space(const std::string& name) {
  if (name.size() < 3) {
    throw std::invalid_argument("parse_space: expected cp<n> or hp<n>, got '" + name + "'");
  }
  const char c0 = char(std::tolower(name[0]));
  const char c1 = char(std::tolower(name[1]));
  Field field;
  if (c0 == 'c' && c1 == 'p') {
    field = Field::Complex;
  } else if (c0 == 'h' && c1 == 'p') {
    field = Field::Quaternionic;
  } else {
    throw std::invalid_argument("parse_space: expected cp<n> or hp<n>, got '" + name + "'");
  }
  int n = 0;
  try {
    size_t pos = 0;
    n = std::stoi(name.substr(2), &pos);
    if (pos + 2 != name.size()) throw std::invalid_argument("trailing data");
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_space: bad dimension in '" + name + "'");
  }
  return make_space(field, n);
}

std::string space_name(const AmbientSpace& space) {
  return (space.field == Field::Complex ? "cp" : "hp") + std::to_string(space.n);
}

std::vector<Eigen::MatrixXd> structure_matrices(const AmbientSpace& space) {
  const int d = space.dim();
  std::vector<Eigen::MatrixXd> out;
  if (space.field == Field::Complex) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d);
    for (int b = 0; b < space.n; ++b) {
      const int o = 2 * b;
      J(o + 1, o) = 1.0;   // J e0 =  e1
      J(o, o + 1) = -1.0;  // J e1 = -e0
    }
    out.push_back(std::move(J));
    return out;
  }
  // Quaternionic: left multiplication by i, j, k on each R^4 block with
  // basis (1, i, j, k).
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(d, d);
  for (int b = 0; b < space.n; ++b) {
    const int o = 4 * b;
    I(o + 1, o) = 1.0;  I(o, o + 1) = -1.0;  I(o + 3, o + 2) = 1.0;  I(o + 2, o + 3) = -1.0;
    J(o + 2, o) = 1.0;  J(o + 3, o + 1) = -1.0;  J(o, o + 2) = -1.0;  J(o + 1, o + 3) = 1.0;
    K(o + 3, o) = 1.0;  K(o + 2, o + 1) = 1.0;  K(o + 1, o + 2) = -1.0;  K(o, o + 3) = -1.0;
  }
  out.push_back(std::move(I));
  out.push_back(std::move(J));
  out.push_back(std::move(K));
  return out;
}

}  // namespace crossflow
