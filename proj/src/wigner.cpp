#include "hurwitz/wigner.hpp"

#include <cmath>

namespace hurwitz {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

bool valid(int J, int m) { return m >= -J && m <= J; }

// Calls term(k, prefactor, cos exponent, sin exponent) for each summand.
template <class Term>
double d_sum(int J, int m1, int m, Term&& term) {
  const double norm =
      std::sqrt(factorial(J + m1) * factorial(J - m1) * factorial(J + m) * factorial(J - m));
  double acc = 0.0;
  for (int k = 0; k <= 2 * J; ++k) {
    if (J + m - k < 0 || J - m1 - k < 0 || k + m1 - m < 0) continue;
    const double sign = ((k + m1 - m) % 2 == 0) ? 1.0 : -1.0;
    const double den =
        factorial(J + m - k) * factorial(k) * factorial(J - m1 - k) * factorial(k + m1 - m);
    acc += sign / den * term(2 * J + m - m1 - 2 * k, 2 * k + m1 - m);
  }
  return norm * acc;
}

}  // namespace

double small_d(int J, int m1, int m, double beta) {
  if (!valid(J, m1) || !valid(J, m)) return 0.0;
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  return d_sum(J, m1, m, [&](int a, int b) { return ipow(c, a) * ipow(s, b); });
}

double small_d_derivative(int J, int m1, int m, double beta) {
  if (!valid(J, m1) || !valid(J, m)) return 0.0;
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  return d_sum(J, m1, m, [&](int a, int b) {
    double v = 0.0;
    if (a > 0) v -= 0.5 * a * ipow(c, a - 1) * ipow(s, b + 1);
    if (b > 0) v += 0.5 * b * ipow(c, a + 1) * ipow(s, b - 1);
    return v;
  });
}

cplx wigner(int J, int q, int p, const EulerAngles& phi) {
  if (!valid(J, q) || !valid(J, p)) return 0.0;
  return std::polar(1.0, q * phi.phi2 + p * phi.phi1) * small_d(J, q, p, phi.phi3);
}

cplx ladder_apply(int J, int q, int p, int sign, const EulerAngles& phi) {
  const double b = phi.phi3;
  const double d = small_d(J, q, p, b);
  const double dd = small_d_derivative(J, q, p, b);
  const double radial = (p - q * std::cos(b)) / std::sin(b) * d + sign * dd;
  return std::polar(1.0, (q + sign) * phi.phi2 + p * phi.phi1) * radial;
}

double ladder_residual(int J, int q, int p, int sign, const EulerAngles& phi) {
  const double coef = std::sqrt(double((J - sign * q) * (J + sign * q + 1)));
  return std::abs(ladder_apply(J, q, p, sign, phi) - coef * wigner(J, q + sign, p, phi));
}

}  // namespace hurwitz
