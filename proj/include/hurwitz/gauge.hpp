#pragma once

// Monopole-type gauge potentials A_{lambda k} coupling the 5D momentum to
// the Q rotor generators.

#include <array>

#include "hurwitz/calculus.hpp"
#include "hurwitz/transform.hpp"

namespace hurwitz {

using Mat53 = std::array<std::array<double, 3>, 5>;  // [lambda][k], 0-based

struct BFunctions {
  std::array<double, 3> plus{};
  std::array<double, 3> minus{};
  double max_imag = 0.0;  // largest discarded imaginary part
};

// B_k^+ = -1/2 gt_st (xi_t df_k/dxi_s^* + xi_s^* df_k/dxi_t)
// B_k^- =  i/2 gt_st (xi_t df_k/dxi_s^* - xi_s^* df_k/dxi_t)
BFunctions b_functions(const XiPoint& p, const AngleCase& c, const DiffStrategy& d);

// Max deviation of the B functions between p and a second point of a
// different fiber carrying the same angles.
double b_x_independence(const XiPoint& p, const AngleCase& c, const DiffStrategy& d);

struct ATilde {
  Mat53 a{};
  double max_imag = 0.0;
};

// A~_{lambda k} = 1/(2r) (gamma_lambda)_st (xi_t df_k/dxi_s + xi_s^* df_k/dxi_t^*)
ATilde a_tilde(const XiPoint& p, const AngleCase& c, const DiffStrategy& d);

struct GaugeField {
  Mat53 A{};
  Case tag = Case::A;
  bool singular = false;
};

inline constexpr double default_frame_threshold = 1e-8;

// A = A~ C^{-1}, where C holds the Q-generator coefficients, written out in
// the explicit 2x2-determinant form. The B functions entering C are measured
// at the substituted fiber point over the same x.
GaugeField a_field_numeric(const XiPoint& p, const AngleCase& c, const DiffStrategy& d,
                           double frame_threshold = default_frame_threshold);

// Max deviation of a_field_numeric between p and a point of the same fiber
// with different angles.
double a_field_phi_independence(const XiPoint& p, const AngleCase& c, const DiffStrategy& d);

// Closed forms. Case A:
//   A_1 = (x2, -x1, -x4,  x3, 0) / (r(r + x5))
//   A_2 = (-x4, x3, -x2,  x1, 0) / (r(r + x5))
//   A_3 = (x3,  x4, -x1, -x2, 0) / (r(r + x5))
// Case B is the case A field pulled back through x4 -> -x4, x5 -> -x5:
//   A_1 = (x2, -x1,  x4, -x3, 0) / (r(r - x5))
//   A_2 = (x4,  x3, -x2, -x1, 0) / (r(r - x5))
//   A_3 = (x3, -x4, -x1,  x2, 0) / (r(r - x5))
// Throws SingularAxis on the case's singular half-line (r + sigma x5 <= eps r).
GaugeField a_field_closed(const RPoint& x, Case c, double eps = default_singular_eps);

// Case B with the sign pattern usually quoted for it (rows 1-3 flipped
// relative to a_field_closed). Not transverse; kept for the report.
GaugeField a_field_closed_as_printed(const RPoint& x, Case c,
                                     double eps = default_singular_eps);

// max_k |x_lambda A_{lambda k}|
double transversality_residual(const GaugeField& f, const RPoint& x);

// max_{k,j} |A_{lambda k} A_{lambda j} - s delta_kj|, s = (r - sx5)/(r^2 (r + sx5)).
double normalization_residual(const GaugeField& f, const RPoint& x);

double max_abs_difference(const Mat53& a, const Mat53& b);

}  // namespace hurwitz
