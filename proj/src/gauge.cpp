#include "hurwitz/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "hurwitz/clifford.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/rotors.hpp"

namespace hurwitz {

namespace {

constexpr cplx I{0.0, 1.0};

double sigma(Case c) { return c == Case::A ? 1.0 : -1.0; }

// A second x carrying the same fiber structure: scaled and with x_1..x_4
// cycled. Stays off the singular half-axis whenever x does.
RPoint other_base(const RPoint& x) {
  return RPoint::from({1.7 * x.x[1], 1.7 * x.x[2], 1.7 * x.x[3], 1.7 * x.x[0], 1.7 * x.x[4]});
}

EulerAngles other_angles(const EulerAngles& phi) {
  // Shift away from phi, staying inside (0, pi) for phi_3.
  const double p3 = phi.phi3 < 0.5 * pi ? phi.phi3 + 0.25 * (pi - phi.phi3)
                                        : phi.phi3 - 0.25 * phi.phi3;
  return {std::fmod(phi.phi1 + 1.3, two_pi), std::fmod(phi.phi2 + 2.1, two_pi), p3};
}

}  // namespace

BFunctions b_functions(const XiPoint& p, const AngleCase& c, const DiffStrategy& d) {
  const auto& gt = resolved_gamma().set.gamma_tilde;
  const auto grads = angle_gradients(p, c, d);
  BFunctions out;
  for (int k = 0; k < 3; ++k) {
    cplx bp = 0.0, bm = 0.0;
    for (int s = 0; s < 4; ++s)
      for (int t = 0; t < 4; ++t) {
        const cplx g = gt(s, t);
        if (g == cplx(0.0)) continue;
        const cplx first = p.xi[t] * grads[k].dbar[s];
        const cplx second = std::conj(p.xi[s]) * grads[k].d[t];
        bp += -0.5 * g * (first + second);
        bm += 0.5 * I * g * (first - second);
      }
    out.plus[k] = bp.real();
    out.minus[k] = bm.real();
    out.max_imag = std::max({out.max_imag, std::abs(bp.imag()), std::abs(bm.imag())});
  }
  return out;
}

double b_x_independence(const XiPoint& p, const AngleCase& c, const DiffStrategy& d) {
  const EulerAngles phi = extra_angles(p, c);
  const XiPoint q = fiber_section(other_base(forward(p)), phi, c);
  const BFunctions a = b_functions(p, c, d);
  const BFunctions b = b_functions(q, c, d);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k)
    worst = std::max({worst, std::abs(a.plus[k] - b.plus[k]), std::abs(a.minus[k] - b.minus[k])});
  return worst;
}

ATilde a_tilde(const XiPoint& p, const AngleCase& c, const DiffStrategy& d) {
  const auto& g = resolved_gamma().set;
  const auto grads = angle_gradients(p, c, d);
  const double r = p.norm2();
  ATilde out;
  for (int l = 0; l < 5; ++l)
    for (int k = 0; k < 3; ++k) {
      cplx acc = 0.0;
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) {
          const cplx gm = g.gamma[l](s, t);
          if (gm == cplx(0.0)) continue;
          acc += gm * (p.xi[t] * grads[k].d[s] + std::conj(p.xi[s]) * grads[k].dbar[t]);
        }
      acc /= 2.0 * r;
      out.a[l][k] = acc.real();
      out.max_imag = std::max(out.max_imag, std::abs(acc.imag()));
    }
  return out;
}

GaugeField a_field_numeric(const XiPoint& p, const AngleCase& c, const DiffStrategy& d,
                           double frame_threshold) {
  const RPoint x = forward(p);
  const EulerAngles phi = extra_angles(p, c);
  const XiPoint q = fiber_section(x, substituted_angles(phi), c);
  const BFunctions b = b_functions(q, c, d);
  const ATilde at = a_tilde(p, c, d);

  const double b1p = b.plus[0], b2p = b.plus[1], b3p = b.plus[2];
  const double b1m = b.minus[0], b2m = b.minus[1], b3m = b.minus[2];
  const double det = b3p * b2m - b2p * b3m;
  if (std::abs(det) < frame_threshold)
    throw IllConditionedFrame("B determinant " + std::to_string(det) + " below threshold");

  GaugeField f;
  f.tag = c.tag;
  for (int l = 0; l < 5; ++l) {
    const double t1 = at.a[l][0], t2 = at.a[l][1], t3 = at.a[l][2];
    f.A[l][0] = t2 - (b3p * b1m - b3m * b1p) / det * t1 + (b2p * b1m - b2m * b1p) / det * t3;
    f.A[l][1] = -b3m / det * t1 + b2m / det * t3;
    f.A[l][2] = b3p / det * t1 - b2p / det * t3;
  }
  return f;
}

double a_field_phi_independence(const XiPoint& p, const AngleCase& c, const DiffStrategy& d) {
  const XiPoint q = fiber_section(forward(p), other_angles(extra_angles(p, c)), c);
  return max_abs_difference(a_field_numeric(p, c, d).A, a_field_numeric(q, c, d).A);
}

GaugeField a_field_closed(const RPoint& pt, Case c, double eps) {
  const double s = sigma(c);
  const double r = pt.r;
  if (!(r > 0.0) || r + s * pt.x[4] <= eps * r)
    throw SingularAxis(std::string("case ") + to_string(c) + " potential is singular at this point");
  const double den = r * (r + s * pt.x[4]);
  const auto& [x1, x2, x3, x4, x5] = pt.x;
  (void)x5;
  GaugeField f;
  f.tag = c;
  std::array<std::array<double, 5>, 3> rows;
  if (c == Case::A) {
    rows = {{{x2, -x1, -x4, x3, 0.0}, {-x4, x3, -x2, x1, 0.0}, {x3, x4, -x1, -x2, 0.0}}};
  } else {
    rows = {{{x2, -x1, x4, -x3, 0.0}, {x4, x3, -x2, -x1, 0.0}, {x3, -x4, -x1, x2, 0.0}}};
  }
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 5; ++l) f.A[l][k] = rows[k][l] / den;
  return f;
}

GaugeField a_field_closed_as_printed(const RPoint& pt, Case c, double eps) {
  GaugeField f = a_field_closed(pt, c, eps);
  if (c == Case::B)
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k) f.A[l][k] = -f.A[l][k];
  return f;
}

double transversality_residual(const GaugeField& f, const RPoint& x) {
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    double dot = 0.0;
    for (int l = 0; l < 5; ++l) dot += x.x[l] * f.A[l][k];
    worst = std::max(worst, std::abs(dot));
  }
  return worst;
}

double normalization_residual(const GaugeField& f, const RPoint& x) {
  const double s = sigma(f.tag);
  const double r = x.r;
  const double scale = (r - s * x.x[4]) / (r * r * (r + s * x.x[4]));
  double worst = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int l = 0; l < 5; ++l) dot += f.A[l][k] * f.A[l][j];
      worst = std::max(worst, std::abs(dot - (k == j ? scale : 0.0)));
    }
  return worst;
}

double max_abs_difference(const Mat53& a, const Mat53& b) {
  double worst = 0.0;
  for (int l = 0; l < 5; ++l)
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a[l][k] - b[l][k]));
  return worst;
}

}  // namespace hurwitz
