#pragma once

// Numerical differential operators on the oscillator side (xi) and on the
// reduced side (x, phi), and residuals of the identities linking them.

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "hurwitz/calculus.hpp"
#include "hurwitz/rotors.hpp"
#include "hurwitz/transform.hpp"

namespace hurwitz {

using AngleField = std::function<cplx(const EulerAngles&)>;
using PhysField = std::function<cplx(const std::array<double, 5>&, const EulerAngles&)>;

inline constexpr double default_polar_eps = 1e-6;

// T_1 = 1/2 (xi_s d/dxi_s - xi_s^* d/dxi_s^*)
// T_2 = i/2 gt_st (xi_t d/dxi_s^* + xi_s^* d/dxi_t)
// T_3 = 1/2 gt_st (xi_t d/dxi_s^* - xi_s^* d/dxi_t)
// k in {1, 2, 3}.
cplx apply_T(int k, const XiField& f, const XiPoint& p, const DiffStrategy& d);

// -i sum_j c_j(phi) dg/dphi_j. Throws PolarSingularity when |sin phi_3| < eps.
cplx apply_euler_op(Rotor op, const AngleField& g, const EulerAngles& phi,
                    const DiffStrategy& d, double eps = default_polar_eps);

using RotorCombination = std::vector<std::pair<cplx, Rotor>>;

// |(ab - ba - expected) f| at phi; the outer application uses d.nested().
double commutator_residual(Rotor a, Rotor b, const RotorCombination& expected,
                           const AngleField& f, const EulerAngles& phi,
                           const DiffStrategy& d);

// |(T_k T_k - Q_j Q_j) f| at phi.
double casimir_residual(const AngleField& f, const EulerAngles& phi, const DiffStrategy& d);

// i * structure_sign * eps_jkh * O_h for the pair (j, k) of one family.
RotorCombination structure_rhs(Rotor a, Rotor b, double structure_sign);

// --- oscillator <-> reduced identities --------------------------------------

enum class IdentityId { eq9, eq17, eq20, eq23 };

const char* to_string(IdentityId id);

// f(xi) = F(forward(xi), raw angles(xi)).
XiField pullback(const PhysField& F, const AngleCase& c);

// Operators on the (x, phi) side, with A taken from the closed form.
cplx momentum_apply(int lambda, const PhysField& F, const std::array<double, 5>& x,
                    const EulerAngles& phi, Case c, const DiffStrategy& d);
cplx momentum_squared_apply(const PhysField& F, const std::array<double, 5>& x,
                            const EulerAngles& phi, Case c, const DiffStrategy& d);
cplx casimir_apply(const PhysField& F, const std::array<double, 5>& x, const EulerAngles& phi,
                   const DiffStrategy& d);

struct IdentitySides {
  std::vector<cplx> lhs;
  std::vector<cplx> rhs;
  cplx field_value = 0.0;
};

// eq9:  xi_s df_k/dxi_s - xi_s^* df_k/dxi_s^*  vs  -2i delta_1k   (F unused)
// eq17: 1/2 (g_l)_st (xi_t d/dxi_s + xi_s^* d/dxi_t^*) f  vs  r (dF/dx_l + A~_lk dF/dphi_k)
// eq20: -i/(2r) (g_l)_st (...) f  vs  (-i d/dx_l + A_lk Q_k) F
// eq23: -d^2 f/(dxi_s dxi_s^*)  vs  r p^2 F + casimir_weight * Q^2 F / r
// A weight of 1 is the one compatible with the reduced Schrodinger equation.
IdentitySides identity_sides(IdentityId id, const AngleCase& c, const XiPoint& p,
                             const PhysField& F, const DiffStrategy& d,
                             double casimir_weight = 1.0);

// eq9: absolute max deviation. Others: max |lhs - rhs| / max(|lhs|, |rhs|, |f|).
double identity_residual(IdentityId id, const AngleCase& c, const XiPoint& p,
                         const PhysField& F, const DiffStrategy& d,
                         double casimir_weight = 1.0);

struct OscillatorParams {
  double omega = 1.0;
  double Z = 2.0;
  double E = -0.5;

  // E = -omega^2 / 2
  static OscillatorParams from_omega(double omega, double Z);
};

// H f = -1/2 d^2 f/(dxi_s dxi_s^*) + 1/2 omega^2 |xi|^2 f
cplx oscillator_apply(const OscillatorParams& p, const XiField& f, const XiPoint& xi,
                      const DiffStrategy& d);

// Reduced operator 1/2 (-i d/dx + A Q)^2 psi + Q^2 psi / (2 r^2) - Z psi / r.
cplx reduced_apply(const OscillatorParams& p, const PhysField& psi,
                   const std::array<double, 5>& x, const EulerAngles& phi, Case c,
                   const DiffStrategy& d);

}  // namespace hurwitz
