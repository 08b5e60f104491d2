#include "hurwitz/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace hurwitz::oracle {

double det_h(int J, const AColumn& col, double a) {
  const int n = 2 * J + 1;
  // f_k = d_k f_{k-1} - (h_{k,k-1} h_{k-1,k}) f_{k-2}; the product is
  // (2J+2-k)(k-1) |A+|^2, real since A- = conj(A+).
  const double pp = std::real(col.plus * col.minus);
  double f_prev = 1.0, f = 0.0;
  double f_prev2 = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double dk = -a - double(J + 1 - k) * col.a1;
    if (k == 1) {
      f = dk;
    } else {
      f = dk * f_prev - double((2 * J + 2 - k) * (k - 1)) * pp * f_prev2;
    }
    f_prev2 = f_prev;
    f_prev = f;
  }
  return f;
}

std::vector<double> bisection_roots(int J, const AColumn& col, int grid) {
  const double off = 2.0 * std::abs(col.plus) * (J + 1) * std::sqrt(double(2 * J + 1));
  const double R = J * std::abs(col.a1) + off + 1e-300;
  const double lo = -1.01 * R, hi = 1.01 * R;
  std::vector<double> roots;
  const auto det = [&](double a) { return det_h(J, col, a); };
  double a0 = lo, f0 = det(lo);
  for (int i = 1; i <= grid; ++i) {
    const double a1 = lo + (hi - lo) * i / grid;
    const double f1 = det(a1);
    if (f1 == 0.0) {
      roots.push_back(a1);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f0 != 0.0) {
      double l = a0, h = a1, fl = f0;
      for (int it = 0; it < 200 && h - l > 0.0; ++it) {
        const double m = 0.5 * (l + h);
        if (m <= l || m >= h) break;
        const double fm = det(m);
        if (fm == 0.0) {
          l = h = m;
          break;
        }
        if ((fm < 0.0) == (fl < 0.0)) {
          l = m;
          fl = fm;
        } else {
          h = m;
        }
      }
      roots.push_back(0.5 * (l + h));
    }
    a0 = a1;
    f0 = f1;
  }
  if (J == 0 && roots.empty()) roots.push_back(0.0);
  std::sort(roots.begin(), roots.end());
  return roots;
}

double j1_cubic(const AColumn& col, double a) {
  const double s2 = col.a1 * col.a1 + 4.0 * std::norm(col.plus);
  return a * (a * a - s2);
}

std::array<double, 5> eq45_values(const RPoint& x) {
  const auto& v = x.x;
  const double den = x.r * (x.r + v[4]);
  const auto rest = [&](int skip) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) s += v[i] * v[i];
    return std::sqrt(s) / den;
  };
  return {-rest(0), rest(1), -rest(2), rest(3), 0.0};
}

}  // namespace hurwitz::oracle
