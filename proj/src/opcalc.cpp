#include "hurwitz/opcalc.hpp"

#include <algorithm>
#include <cmath>

#include "hurwitz/clifford.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/gauge.hpp"

namespace hurwitz {

namespace {

constexpr cplx I{0.0, 1.0};

EulerAngles bumped(EulerAngles phi, int j, double t) {
  (j == 0 ? phi.phi1 : j == 1 ? phi.phi2 : phi.phi3) += t;
  return phi;
}

std::array<double, 5> bumped(std::array<double, 5> x, int l, double t) {
  x[l] += t;
  return x;
}

EulerAngles as_angles(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

int levi_civita(int j, int k, int h) {
  if (j == k || k == h || j == h) return 0;
  return ((j == 0 && k == 1) || (j == 1 && k == 2) || (j == 2 && k == 0)) ? 1 : -1;
}

// dF/dphi_j at fixed x.
cplx dphi(const PhysField& F, const std::array<double, 5>& x, const EulerAngles& phi, int j,
          const DiffStrategy& d) {
  return diff1([&](double t) { return F(x, bumped(phi, j, t)); }, d.step, d.order);
}

cplx dx(const PhysField& F, const std::array<double, 5>& x, const EulerAngles& phi, int l,
        const DiffStrategy& d) {
  return diff1([&](double t) { return F(bumped(x, l, t), phi); }, d.step, d.order);
}

cplx q_apply(int k, const PhysField& F, const std::array<double, 5>& x, const EulerAngles& phi,
             const DiffStrategy& d) {
  return apply_euler_op(Q(k), [&](const EulerAngles& a) { return F(x, a); }, phi, d);
}

}  // namespace

cplx apply_T(int k, const XiField& f, const XiPoint& p, const DiffStrategy& d) {
  const auto& gt = resolved_gamma().set.gamma_tilde;
  const WirtingerGrad g = wirtinger(f, p, d);
  cplx acc = 0.0;
  if (k == 1) {
    for (int s = 0; s < 4; ++s) acc += p.xi[s] * g.d[s] - std::conj(p.xi[s]) * g.dbar[s];
    return 0.5 * acc;
  }
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      const cplx first = p.xi[t] * g.dbar[s];
      const cplx second = std::conj(p.xi[s]) * g.d[t];
      acc += gt(s, t) * (k == 2 ? first + second : first - second);
    }
  return k == 2 ? 0.5 * I * acc : 0.5 * acc;
}

cplx apply_euler_op(Rotor op, const AngleField& g, const EulerAngles& phi,
                    const DiffStrategy& d, double eps) {
  if (std::abs(std::sin(phi.phi3)) < eps)
    throw PolarSingularity("|sin phi_3| below " + std::to_string(eps));
  const auto c = rotor_coefficients(op, phi);
  cplx acc = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (c[j] == 0.0) continue;
    acc += c[j] * diff1([&](double t) { return g(bumped(phi, j, t)); }, d.step, d.order);
  }
  return -I * acc;
}

RotorCombination structure_rhs(Rotor a, Rotor b, double structure_sign) {
  if (is_T(a) != is_T(b)) return {};
  const int j = static_cast<int>(a) % 3;
  const int k = static_cast<int>(b) % 3;
  RotorCombination out;
  for (int h = 0; h < 3; ++h) {
    const int e = levi_civita(j, k, h);
    if (e == 0) continue;
    out.emplace_back(I * structure_sign * double(e), is_T(a) ? T(h + 1) : Q(h + 1));
  }
  return out;
}

double commutator_residual(Rotor a, Rotor b, const RotorCombination& expected,
                           const AngleField& f, const EulerAngles& phi,
                           const DiffStrategy& d) {
  const DiffStrategy dn = d.nested();
  auto inner = [&](Rotor op) {
    return [&, op](const EulerAngles& q) { return apply_euler_op(op, f, q, dn); };
  };
  const cplx ab = apply_euler_op(a, inner(b), phi, dn);
  const cplx ba = apply_euler_op(b, inner(a), phi, dn);
  cplx rhs = 0.0;
  for (const auto& [coef, op] : expected) rhs += coef * apply_euler_op(op, f, phi, dn);
  return std::abs(ab - ba - rhs);
}

double casimir_residual(const AngleField& f, const EulerAngles& phi, const DiffStrategy& d) {
  const DiffStrategy dn = d.nested();
  cplx acc = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (Rotor op : {T(k), Q(k)}) {
      const cplx v = apply_euler_op(
          op, [&](const EulerAngles& q) { return apply_euler_op(op, f, q, dn); }, phi, dn);
      acc += is_T(op) ? v : -v;
    }
  }
  return std::abs(acc);
}

const char* to_string(IdentityId id) {
  switch (id) {
    case IdentityId::eq9: return "eq9";
    case IdentityId::eq17: return "eq17";
    case IdentityId::eq20: return "eq20";
    case IdentityId::eq23: return "eq23";
  }
  return "?";
}

XiField pullback(const PhysField& F, const AngleCase& c) {
  return [F, c](const XiPoint& p) { return F(forward(p).x, as_angles(raw_angles(p, c))); };
}

cplx momentum_apply(int lambda, const PhysField& F, const std::array<double, 5>& x,
                    const EulerAngles& phi, Case c, const DiffStrategy& d) {
  const GaugeField A = a_field_closed(RPoint::from(x), c);
  cplx acc = -I * dx(F, x, phi, lambda, d);
  for (int k = 0; k < 3; ++k) {
    const double a = A.A[lambda][k];
    if (a != 0.0) acc += a * q_apply(k + 1, F, x, phi, d);
  }
  return acc;
}

cplx momentum_squared_apply(const PhysField& F, const std::array<double, 5>& x,
                            const EulerAngles& phi, Case c, const DiffStrategy& d) {
  const DiffStrategy dn = d.nested();
  cplx acc = 0.0;
  for (int l = 0; l < 5; ++l) {
    const PhysField inner = [&, l](const std::array<double, 5>& y, const EulerAngles& q) {
      return momentum_apply(l, F, y, q, c, dn);
    };
    acc += momentum_apply(l, inner, x, phi, c, dn);
  }
  return acc;
}

cplx casimir_apply(const PhysField& F, const std::array<double, 5>& x, const EulerAngles& phi,
                   const DiffStrategy& d) {
  const DiffStrategy dn = d.nested();
  cplx acc = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const PhysField inner = [&, k](const std::array<double, 5>& y, const EulerAngles& q) {
      return q_apply(k, F, y, q, dn);
    };
    acc += q_apply(k, inner, x, phi, dn);
  }
  return acc;
}

IdentitySides identity_sides(IdentityId id, const AngleCase& c, const XiPoint& p,
                             const PhysField& F, const DiffStrategy& d,
                             double casimir_weight) {
  d.validate();
  IdentitySides out;
  if (id == IdentityId::eq9) {
    const auto grads = angle_gradients(p, c, d);
    for (int k = 0; k < 3; ++k) {
      cplx acc = 0.0;
      for (int s = 0; s < 4; ++s)
        acc += p.xi[s] * grads[k].d[s] - std::conj(p.xi[s]) * grads[k].dbar[s];
      out.lhs.push_back(acc);
      out.rhs.push_back(k == 0 ? -2.0 * I : cplx(0.0));
    }
    return out;
  }

  const auto& g = resolved_gamma().set;
  const RPoint x = forward(p);
  const EulerAngles phi = as_angles(raw_angles(p, c));
  const XiField f = pullback(F, c);
  out.field_value = F(x.x, phi);

  if (id == IdentityId::eq23) {
    out.lhs.push_back(-wirtinger_laplacian(f, p, d));
    out.rhs.push_back(x.r * momentum_squared_apply(F, x.x, phi, c.tag, d) +
                      casimir_weight * casimir_apply(F, x.x, phi, d) / x.r);
    return out;
  }

  const WirtingerGrad w = wirtinger(f, p, d);
  std::array<cplx, 5> generator{};
  for (int l = 0; l < 5; ++l) {
    cplx acc = 0.0;
    for (int s = 0; s < 4; ++s)
      for (int t = 0; t < 4; ++t) {
        const cplx gm = g.gamma[l](s, t);
        if (gm == cplx(0.0)) continue;
        acc += gm * (p.xi[t] * w.d[s] + std::conj(p.xi[s]) * w.dbar[t]);
      }
    generator[l] = 0.5 * acc;
  }

  if (id == IdentityId::eq17) {
    const ATilde at = a_tilde(p, c, d);
    std::array<cplx, 3> dF{};
    for (int k = 0; k < 3; ++k) dF[k] = dphi(F, x.x, phi, k, d);
    for (int l = 0; l < 5; ++l) {
      cplx rhs = dx(F, x.x, phi, l, d);
      for (int k = 0; k < 3; ++k) rhs += at.a[l][k] * dF[k];
      out.lhs.push_back(generator[l]);
      out.rhs.push_back(x.r * rhs);
    }
    return out;
  }

  for (int l = 0; l < 5; ++l) {
    out.lhs.push_back(-I * generator[l] / x.r);
    out.rhs.push_back(momentum_apply(l, F, x.x, phi, c.tag, d));
  }
  return out;
}

double identity_residual(IdentityId id, const AngleCase& c, const XiPoint& p,
                         const PhysField& F, const DiffStrategy& d, double casimir_weight) {
  const IdentitySides s = identity_sides(id, c, p, F, d, casimir_weight);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.lhs.size(); ++i) {
    const double diff = std::abs(s.lhs[i] - s.rhs[i]);
    if (id == IdentityId::eq9) {
      worst = std::max(worst, diff);
      continue;
    }
    const double scale =
        std::max({std::abs(s.lhs[i]), std::abs(s.rhs[i]), std::abs(s.field_value)});
    if (scale > 0.0) worst = std::max(worst, diff / scale);
  }
  return worst;
}

OscillatorParams OscillatorParams::from_omega(double omega, double Z) {
  return {omega, Z, -0.5 * omega * omega};
}

cplx oscillator_apply(const OscillatorParams& p, const XiField& f, const XiPoint& xi,
                      const DiffStrategy& d) {
  return -0.5 * wirtinger_laplacian(f, xi, d) + 0.5 * p.omega * p.omega * xi.norm2() * f(xi);
}

cplx reduced_apply(const OscillatorParams& p, const PhysField& psi,
                   const std::array<double, 5>& x, const EulerAngles& phi, Case c,
                   const DiffStrategy& d) {
  const double r = RPoint::from(x).r;
  return 0.5 * momentum_squared_apply(psi, x, phi, c, d) +
         casimir_apply(psi, x, phi, d) / (2.0 * r * r) - p.Z * psi(x, phi) / r;
}

}  // namespace hurwitz
