#pragma once

#include <complex>

#include "hurwitz/transform.hpp"

namespace hurwitz {

// Wigner small-d matrix element d^J_{m1 m}(beta), standard phase convention.
double small_d(int J, int m1, int m, double beta);

// d/dbeta of small_d, differentiated term by term.
double small_d_derivative(int J, int m1, int m, double beta);

// phi^J_{q,p} = exp(i q phi_2) d^J_{q p}(phi_3) exp(i p phi_1); an eigenfunction
// of Q_1 (eigenvalue q), T_1 (eigenvalue p) and the Casimir (J(J+1)).
cplx wigner(int J, int q, int p, const EulerAngles& phi);

// (Q_2 + sign * i Q_3) phi^J_{q,p}, evaluated analytically:
//   exp(i (q + sign) phi_2 + i p phi_1) [ (p - q cos phi_3) / sin phi_3 d + sign d' ].
cplx ladder_apply(int J, int q, int p, int sign, const EulerAngles& phi);

// |ladder_apply - sqrt((J - sign q)(J + sign q + 1)) phi^J_{q + sign, p}|
double ladder_residual(int J, int q, int p, int sign, const EulerAngles& phi);

}  // namespace hurwitz
