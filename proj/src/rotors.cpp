#include "hurwitz/rotors.hpp"

#include <cmath>

namespace hurwitz {

namespace {

double mod_two_pi(double a) {
  double m = std::fmod(a, two_pi);
  return m < 0.0 ? m + two_pi : m;
}

std::array<double, 3> t_coefficients(int k, const EulerAngles& phi) {
  const double c1 = std::cos(phi.phi1), s1 = std::sin(phi.phi1);
  const double s3 = std::sin(phi.phi3), cot3 = std::cos(phi.phi3) / s3;
  switch (k) {
    case 1: return {1.0, 0.0, 0.0};
    case 2: return {c1 * cot3, -c1 / s3, s1};
    default: return {s1 * cot3, -s1 / s3, -c1};
  }
}

}  // namespace

const char* to_string(Rotor r) {
  static const char* names[] = {"T1", "T2", "T3", "Q1", "Q2", "Q3"};
  return names[static_cast<int>(r)];
}

EulerAngles substituted_angles(const EulerAngles& phi) {
  return {mod_two_pi(phi.phi2 + pi), mod_two_pi(phi.phi1 - pi), phi.phi3};
}

std::array<double, 3> rotor_coefficients(Rotor op, const EulerAngles& phi) {
  const int idx = static_cast<int>(op);
  if (idx < 3) return t_coefficients(idx + 1, phi);
  // Q_k(phi) = (B_2, B_1, B_3) of T_k evaluated at the substituted point.
  // Plain phi1 + pi etc. here (not mod 2pi) keeps the coefficients smooth
  // for finite-difference stencils.
  const EulerAngles psi{phi.phi2 + pi, phi.phi1 - pi, phi.phi3};
  const auto b = t_coefficients(idx - 2, psi);
  return {b[1], b[0], b[2]};
}

std::array<double, 3> printed_rotor_coefficients(Rotor op, const EulerAngles& phi) {
  const double c1 = std::cos(phi.phi1), s1 = std::sin(phi.phi1);
  const double c2 = std::cos(phi.phi2), s2 = std::sin(phi.phi2);
  const double s3 = std::sin(phi.phi3), cot3 = std::cos(phi.phi3) / s3;
  switch (op) {
    case Rotor::T1: return {1.0, 0.0, 0.0};
    case Rotor::T2: return {s1 * cot3, -s1 / s3, -c1};
    case Rotor::T3: return {c1 * cot3, -c1 / s3, -s1};
    case Rotor::Q1: return {0.0, 1.0, 0.0};
    case Rotor::Q2: return {c2 / s3, -c2 * cot3, -s2};
    case Rotor::Q3: return {s2 / s3, -s2 * cot3, c2};
  }
  return {};
}

}  // namespace hurwitz
