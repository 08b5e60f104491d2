#pragma once

// Reference computations that avoid the main code paths: determinants by
// the three-term continuant recurrence, roots by sign-change bisection, and
// closed-form values quoted for the J = 1 case.

#include <array>
#include <vector>

#include "hurwitz/separation.hpp"

namespace hurwitz::oracle {

// det h(a) for the tridiagonal h, built from A1, A+, A- directly.
double det_h(int J, const AColumn& col, double a);

// Roots of det h(a) = 0 from a uniform scan of [-R, R] (R a Gershgorin
// bound) followed by bisection. Only sign changes are seen, so roots of even
// multiplicity are missed; callers sample points with s_lambda > 0.
std::vector<double> bisection_roots(int J, const AColumn& col, int grid = 4000);

// a (a^2 - A1^2 - A2^2 - A3^2)
double j1_cubic(const AColumn& col, double a);

// Case A, J = 1, signs (-, +, -, +, 0):
//   a_1 = -sqrt(x2^2 + x3^2 + x4^2) / (r (r + x5)), ..., a_5 = 0
std::array<double, 5> eq45_values(const RPoint& x);

}  // namespace hurwitz::oracle
