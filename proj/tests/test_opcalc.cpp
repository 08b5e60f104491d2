#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hurwitz/errors.hpp"
#include "hurwitz/opcalc.hpp"

using namespace hurwitz;

namespace {

const cplx I{0.0, 1.0};

XiPoint random_xi(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  XiPoint p;
  for (auto& z : p.xi) {
    const double re = n(rng);
    z = {re, n(rng)};
  }
  return p;
}

cplx trig(const EulerAngles& a) {
  return std::polar(1.0, 2.0 * a.phi1 - a.phi2) * std::sin(a.phi3) +
         std::cos(a.phi2 + a.phi1) * std::cos(a.phi3) * 0.5 + cplx(0.2, 0.1) * std::sin(2 * a.phi3);
}

cplx gaussian(const std::array<double, 5>& x, const EulerAngles& a) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return std::exp(-0.2 * r2 + 0.1 * x[2]) * trig(a);
}

cplx poly(const std::array<double, 5>& x, const EulerAngles& a) {
  return (1.0 + x[0] * x[1] - 0.5 * x[4] + cplx(0, 0.3) * x[3] * x[3]) * trig(a);
}

const DiffStrategy d{1e-5, 4, 1e-3};

}  // namespace

TEST_CASE("Wirtinger derivatives of a monomial") {
  const XiField f = [](const XiPoint& p) { return p.xi[0] * std::conj(p.xi[1]); };
  XiPoint p;
  p.xi = {cplx(0.3, 0.2), cplx(-0.5, 1.0), cplx(1, 0), cplx(0, 1)};
  const WirtingerGrad g = wirtinger(f, p, d);
  CHECK(std::abs(g.d[0] - std::conj(p.xi[1])) < 1e-10);
  CHECK(std::abs(g.dbar[1] - p.xi[0]) < 1e-10);
  CHECK(std::abs(g.dbar[0]) < 1e-10);
  CHECK(std::abs(g.d[1]) < 1e-10);
  // d^2/(dxi dxi^*) of |xi|^2 summed over s is 4.
  const XiField n2 = [](const XiPoint& q) { return cplx(q.norm2()); };
  CHECK(std::abs(wirtinger_laplacian(n2, p, d) - 4.0) < 1e-6);
}

TEST_CASE("Euler-angle T operators agree with the xi-space generators") {
  std::mt19937_64 rng(21);
  for (Case c : {Case::A, Case::B}) {
    const AngleCase ac{c, std::nullopt};
    const PhysField F = [](const std::array<double, 5>&, const EulerAngles& a) { return trig(a); };
    const XiField f = pullback(F, ac);
    for (int i = 0; i < 20; ++i) {
      const XiPoint p = random_xi(rng);
      const EulerAngles phi = extra_angles(p, ac);
      for (int k = 1; k <= 3; ++k) {
        const cplx xi_side = apply_T(k, f, p, d);
        const cplx angle_side = apply_euler_op(T(k), trig, phi, d);
        CHECK(std::abs(xi_side - angle_side) < 1e-7);
      }
    }
  }
}

TEST_CASE("printed T_2 coincides with the derived T_3") {
  const EulerAngles phi{0.7, 2.1, 1.1};
  const auto printed = printed_rotor_coefficients(Rotor::T2, phi);
  const auto derived = rotor_coefficients(Rotor::T3, phi);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(printed[j] - derived[j]) < 1e-15);
}

TEST_CASE("Q coefficients reproduce the quoted closed forms") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 50; ++i) {
    const EulerAngles phi{2 * u(rng), 2 * u(rng), u(rng)};
    for (int k = 1; k <= 3; ++k) {
      const auto a = rotor_coefficients(Q(k), phi);
      const auto b = printed_rotor_coefficients(Q(k), phi);
      for (int j = 0; j < 3; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-12);
    }
  }
}

TEST_CASE("both rotor families close su(2) with +i eps and commute") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.2, 2.9);
  for (int i = 0; i < 30; ++i) {
    const EulerAngles phi{2 * u(rng), 2 * u(rng), u(rng)};
    for (int j = 1; j <= 3; ++j) {
      const int k = j % 3 + 1;
      CHECK(commutator_residual(T(j), T(k), structure_rhs(T(j), T(k), 1.0), trig, phi, d) < 1e-5);
      CHECK(commutator_residual(Q(j), Q(k), structure_rhs(Q(j), Q(k), 1.0), trig, phi, d) < 1e-5);
      for (int m = 1; m <= 3; ++m) CHECK(commutator_residual(T(j), Q(m), {}, trig, phi, d) < 1e-5);
    }
    CHECK(casimir_residual(trig, phi, d) < 1e-4);
  }
}

TEST_CASE("the Q algebra does not close with -i eps") {
  const EulerAngles phi{0.4, 1.9, 1.3};
  CHECK(commutator_residual(Q(2), Q(3), structure_rhs(Q(2), Q(3), -1.0), trig, phi, d) > 1e-2);
}

TEST_CASE("Euler operators refuse the poles") {
  CHECK_THROWS_AS(apply_euler_op(Rotor::T1, trig, {1, 1, 0.0}, d), PolarSingularity);
  CHECK_THROWS_AS(apply_euler_op(Rotor::Q2, trig, {1, 1, pi}, d), PolarSingularity);
  CHECK_NOTHROW(apply_euler_op(Rotor::Q2, trig, {1, 1, 0.5}, d));
}

TEST_CASE("constraint equations with and without offsets") {
  std::mt19937_64 rng(24);
  const PhysField none = [](const std::array<double, 5>&, const EulerAngles&) { return cplx(0); };
  for (Case c : {Case::A, Case::B}) {
    AngleCase off{c, std::array<InvariantFn, 3>{
                         [](const Gram& g) { return 0.2 * std::real(g[0][1] * g[1][0]); },
                         [](const Gram& g) { return std::cos(std::real(g[3][3])); },
                         [](const Gram&) { return 0.0; }}};
    for (int i = 0; i < 20; ++i) {
      const XiPoint p = random_xi(rng);
      CHECK(identity_residual(IdentityId::eq9, {c, std::nullopt}, p, none, d) < 1e-6);
      CHECK(identity_residual(IdentityId::eq9, off, p, none, d) < 1e-6);
    }
  }
}

TEST_CASE("momentum and Laplacian identities") {
  std::mt19937_64 rng(25);
  for (Case c : {Case::A, Case::B}) {
    const AngleCase ac{c, std::nullopt};
    for (int i = 0; i < 8; ++i) {
      const XiPoint p = random_xi(rng);
      for (const PhysField& F : {PhysField(gaussian), PhysField(poly)}) {
        CHECK(identity_residual(IdentityId::eq17, ac, p, F, d) < 1e-4);
        CHECK(identity_residual(IdentityId::eq20, ac, p, F, d) < 1e-4);
        CHECK(identity_residual(IdentityId::eq23, ac, p, F, d) < 1e-4);
      }
    }
  }
}

TEST_CASE("the Laplacian identity needs Q^2 / r, not Q^2 / (2r)") {
  std::mt19937_64 rng(26);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const XiPoint p = random_xi(rng);
    for (const PhysField& F : {PhysField(gaussian), PhysField(poly)})
      worst = std::max(worst, identity_residual(IdentityId::eq23, AngleCase::A(), p, F, d, 0.5));
  }
  CHECK(worst > 1e-2);
}

TEST_CASE("oscillator Gaussian and the 5D Coulomb ground state") {
  std::mt19937_64 rng(27);
  for (double omega : {0.5, 1.0, 2.0}) {
    const XiField f = [omega](const XiPoint& p) { return cplx(std::exp(-omega * p.norm2())); };
    const OscillatorParams par = OscillatorParams::from_omega(omega, 2.0 * omega);
    CHECK(par.E == doctest::Approx(-0.5 * omega * omega));
    const PhysField psi = [omega](const std::array<double, 5>& x, const EulerAngles&) {
      return cplx(std::exp(-omega * RPoint::from(x).r));
    };
    for (int i = 0; i < 5; ++i) {
      const XiPoint p = random_xi(rng);
      CHECK(std::abs(oscillator_apply(par, f, p, d) / f(p) - 2.0 * omega) < 1e-6);
      const RPoint x = forward(p);
      const EulerAngles phi = extra_angles(p, AngleCase::A());
      CHECK(std::abs(reduced_apply(par, psi, x.x, phi, Case::A, d) / psi(x.x, phi) - par.E) <
            1e-6);
    }
  }
}

TEST_CASE("step validation") {
  CHECK_THROWS_AS((DiffStrategy{0.0, 4, 1e-3}.validate()), ConfigInvalid);
  CHECK_THROWS_AS((DiffStrategy{1e-5, 3, 1e-3}.validate()), ConfigInvalid);
}
