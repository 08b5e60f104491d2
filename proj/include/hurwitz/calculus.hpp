#pragma once

// Central finite differences and Wirtinger derivatives.
//
// For complex xi = a + i b:
//   d/dxi   = (d/da - i d/db) / 2
//   d/dxi^* = (d/da + i d/db) / 2
// so d^2/(dxi dxi^*) = (d^2/da^2 + d^2/db^2) / 4.

#include <array>
#include <complex>
#include <functional>

#include "hurwitz/errors.hpp"
#include "hurwitz/transform.hpp"

namespace hurwitz {

struct DiffStrategy {
  double step = 1e-5;         // first derivatives
  int order = 4;              // 2 or 4
  double second_step = 1e-4;  // second derivatives and nested first derivatives

  // Strategy for an operator applied to the output of another operator.
  DiffStrategy nested() const { return {second_step, order, second_step}; }

  DiffStrategy scaled(double factor) const {
    return {step * factor, order, second_step * factor};
  }

  void validate() const {
    if (!(step > 0.0) || !(second_step > 0.0))
      throw ConfigInvalid("finite-difference step must be positive");
    if (order != 2 && order != 4) throw ConfigInvalid("difference order must be 2 or 4");
  }
};

// g'(0) for a scalar function of one real variable.
template <class G>
auto diff1(G&& g, double h, int order) {
  if (order == 2) return (g(h) - g(-h)) / (2.0 * h);
  return (-g(2.0 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2.0 * h)) / (12.0 * h);
}

// g''(0).
template <class G>
auto diff2(G&& g, double h, int order) {
  const auto g0 = g(0.0);
  if (order == 2) return (g(h) - 2.0 * g0 + g(-h)) / (h * h);
  return (-g(2.0 * h) + 16.0 * g(h) - 30.0 * g0 + 16.0 * g(-h) - g(-2.0 * h)) /
         (12.0 * h * h);
}

using XiField = std::function<cplx(const XiPoint&)>;

struct WirtingerGrad {
  std::array<cplx, 4> d{};     // d f / d xi_s
  std::array<cplx, 4> dbar{};  // d f / d xi_s^*
};

inline XiPoint shifted(XiPoint p, int s, cplx delta) {
  p.xi[s] += delta;
  return p;
}

template <class F>
WirtingerGrad wirtinger(F&& f, const XiPoint& p, const DiffStrategy& d) {
  WirtingerGrad g;
  for (int s = 0; s < 4; ++s) {
    const cplx dre = diff1([&](double t) { return cplx(f(shifted(p, s, {t, 0.0}))); },
                           d.step, d.order);
    const cplx dim = diff1([&](double t) { return cplx(f(shifted(p, s, {0.0, t}))); },
                           d.step, d.order);
    g.d[s] = 0.5 * (dre - cplx(0, 1) * dim);
    g.dbar[s] = 0.5 * (dre + cplx(0, 1) * dim);
  }
  return g;
}

// Gradients of the three (raw, multi-valued) fiber angles. Differences are
// taken relative to the centre value and wrapped, so branch cuts of arg do
// not leak into the stencil.
inline std::array<WirtingerGrad, 3> angle_gradients(const XiPoint& p, const AngleCase& c,
                                                    const DiffStrategy& d) {
  const auto centre = raw_angles(p, c);
  std::array<WirtingerGrad, 3> out;
  for (int k = 0; k < 3; ++k) {
    out[k] = wirtinger(
        [&](const XiPoint& q) { return wrap_angle(raw_angles(q, c)[k] - centre[k]); }, p,
        d);
  }
  return out;
}

// sum_s d^2 f / (d xi_s d xi_s^*).
template <class F>
cplx wirtinger_laplacian(F&& f, const XiPoint& p, const DiffStrategy& d) {
  cplx acc = 0.0;
  for (int s = 0; s < 4; ++s) {
    acc += diff2([&](double t) { return cplx(f(shifted(p, s, {t, 0.0}))); }, d.second_step,
                 d.order);
    acc += diff2([&](double t) { return cplx(f(shifted(p, s, {0.0, t}))); }, d.second_step,
                 d.order);
  }
  return 0.25 * acc;
}

}  // namespace hurwitz
