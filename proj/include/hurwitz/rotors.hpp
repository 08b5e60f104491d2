#pragma once

// Euler-angle realizations of the two rotor triples.
//
// Every operator is first order: O = -i sum_j c_j(phi) d/dphi_j, and
// rotor_coefficients() returns (c_1, c_2, c_3).

#include <array>
#include <string>

#include "hurwitz/transform.hpp"

namespace hurwitz {

enum class Rotor { T1, T2, T3, Q1, Q2, Q3 };

const char* to_string(Rotor r);
inline bool is_T(Rotor r) { return r == Rotor::T1 || r == Rotor::T2 || r == Rotor::T3; }
inline Rotor T(int k) { return static_cast<Rotor>(k - 1); }  // k = 1..3
inline Rotor Q(int k) { return static_cast<Rotor>(k + 2); }

// T_k as obtained from the xi-space generators with the case A/B angles:
//   T_1 = -i d1
//   T_2 = -i[ cos p1 cot p3 d1 - cos p1 / sin p3 d2 + sin p1 d3 ]
//   T_3 = -i[ sin p1 cot p3 d1 - sin p1 / sin p3 d2 - cos p1 d3 ]
// Q_k is T_k transported by the substitution phi_1 <-> phi_2, phi_3 -> -phi_3
// (see substituted_angles()).
std::array<double, 3> rotor_coefficients(Rotor op, const EulerAngles& phi);

// The same operators transcribed literally from the closed forms usually
// quoted for them. Kept for comparison only; the T_2/T_3 pair here does not
// close the algebra.
std::array<double, 3> printed_rotor_coefficients(Rotor op, const EulerAngles& phi);

// The point of the fiber that realizes (phi_2, phi_1, -phi_3). Since
// phi_3 -> -phi_3 is the same fiber point as (phi_1 + pi, phi_2 - pi, phi_3)
// with d/dphi_3 reversed, the substituted coefficient functions are read off
// at (phi_2 + pi, phi_1 - pi, phi_3) with no further sign change.
EulerAngles substituted_angles(const EulerAngles& phi);

}  // namespace hurwitz
