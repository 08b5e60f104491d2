#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "hurwitz/errors.hpp"
#include "hurwitz/oracles.hpp"
#include "hurwitz/separation.hpp"

using namespace hurwitz;

namespace {

const cplx I{0.0, 1.0};
const DiffStrategy d{1e-5, 4, 1e-3};

XiPoint random_xi(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  XiPoint p;
  for (auto& z : p.xi) {
    const double re = n(rng);
    z = {re, n(rng)};
  }
  return p;
}

// <J m1| exp(-i beta J_y) |J m>, basis ordered m = J .. -J.
Eigen::MatrixXd d_by_exponential(int J, double beta) {
  const int n = 2 * J + 1;
  Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double m = J - i - 1;  // column state, raised to row i
    const double c = std::sqrt(J * (J + 1.0) - m * (m + 1.0));
    jy(i, i + 1) = -0.5 * I * c;
    jy(i + 1, i) = 0.5 * I * c;
  }
  const Eigen::MatrixXcd u = (-I * beta * jy).exp();
  return u.real();
}

}  // namespace

TEST_CASE("small-d agrees with the exponential of J_y") {
  for (int J = 0; J <= 3; ++J)
    for (double beta : {0.3, 1.1, 2.5}) {
      const Eigen::MatrixXd ref = d_by_exponential(J, beta);
      for (int a = 0; a <= 2 * J; ++a)
        for (int b = 0; b <= 2 * J; ++b)
          CHECK(std::abs(small_d(J, J - a, J - b, beta) - ref(a, b)) < 1e-13);
    }
}

TEST_CASE("small-d derivative matches a difference quotient") {
  for (int J = 0; J <= 3; ++J)
    for (int m1 = -J; m1 <= J; ++m1)
      for (int m = -J; m <= J; ++m) {
        const double b = 0.9, h = 1e-5;
        const double fd = (small_d(J, m1, m, b + h) - small_d(J, m1, m, b - h)) / (2 * h);
        CHECK(std::abs(small_d_derivative(J, m1, m, b) - fd) < 1e-8);
      }
}

TEST_CASE("Wigner functions: J = 0, eigenrelations, ladder") {
  const EulerAngles phi{0.8, 2.2, 1.0};
  CHECK(std::abs(wigner(0, 0, 0, phi) - 1.0) < 1e-15);
  const AngleField w = [](const EulerAngles& a) { return wigner(1, 1, 0, a); };
  CHECK(std::abs(apply_euler_op(Rotor::Q1, w, phi, d) - w(phi)) < 1e-6);
  for (int J = 0; J <= 2; ++J)
    for (int p = -J; p <= J; ++p) CHECK(std::abs(ladder_apply(J, J, p, +1, phi)) < 1e-12);
  double worst = 0.0;
  for (int J = 0; J <= 2; ++J)
    for (int q = -J; q <= J; ++q)
      for (int p = -J; p <= J; ++p)
        for (int i = 1; i < 10; ++i) {
          const EulerAngles a{0.6 * i, 0.4 * i, pi * i / 10.0};
          worst = std::max({worst, ladder_residual(J, q, p, 1, a), ladder_residual(J, q, p, -1, a)});
        }
  CHECK(worst < 1e-12);
}

TEST_CASE("Q_+ and Q_- by differencing agree with the analytic ladder") {
  const EulerAngles phi{0.5, 1.7, 0.9};
  for (int q = -2; q <= 2; ++q) {
    const AngleField w = [q](const EulerAngles& a) { return wigner(2, q, 1, a); };
    const cplx up = apply_euler_op(Rotor::Q2, w, phi, d) + I * apply_euler_op(Rotor::Q3, w, phi, d);
    const cplx down = apply_euler_op(Rotor::Q2, w, phi, d) - I * apply_euler_op(Rotor::Q3, w, phi, d);
    CHECK(std::abs(up - ladder_apply(2, q, 1, +1, phi)) < 1e-8);
    CHECK(std::abs(down - ladder_apply(2, q, 1, -1, phi)) < 1e-8);
  }
}

TEST_CASE("h for J = 1 has the displayed layout") {
  const AColumn col = AColumn::from_components(0.7, -0.3, 0.4);
  const double a = 0.25;
  const HMatrix h = build_h(1, col, a);
  const double s2 = std::sqrt(2.0);
  Eigen::Matrix3cd ref;
  ref << -a - col.a1, s2 * col.minus, 0.0,
         s2 * col.plus, -a, s2 * col.minus,
         0.0, s2 * col.plus, -a + col.a1;
  CHECK((h.entries - ref).norm() < 1e-15);
  CHECK(std::abs(col.plus - 0.5 * cplx(-0.3, -0.4)) < 1e-15);
  CHECK(build_h(0, col, a).entries.size() == 1);
  CHECK(std::abs(build_h(0, col, a).entries(0, 0) + a) < 1e-15);
}

TEST_CASE("h is diagonal when A_+- vanish") {
  const AColumn col = AColumn::from_components(1.3, 0.0, 0.0);
  const HMatrix h = build_h(2, col, 0.1);
  for (int k = 0; k < 5; ++k) {
    const int q = k - 2;
    CHECK(std::abs(h.entries(k, k) - (-0.1 + q * 1.3)) < 1e-15);
  }
  CHECK((h.entries - Eigen::MatrixXcd(h.entries.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("roots: J = 1 factorization, J = 2, 3 against bisection") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n;
  for (int i = 0; i < 100; ++i) {
    const AColumn col = AColumn::from_components(n(rng), n(rng), n(rng));
    const double s = col.magnitude();
    const auto r1 = separation_roots(1, col);
    REQUIRE(r1.size() == 3);
    CHECK(std::abs(r1[0] + s) < 1e-12);
    CHECK(std::abs(r1[1]) < 1e-12);
    CHECK(std::abs(r1[2] - s) < 1e-12);
    for (double a : r1) CHECK(std::abs(oracle::j1_cubic(col, a)) < 1e-12 * std::max(1.0, s * s * s));
    for (int J = 2; J <= 3; ++J) {
      const auto roots = separation_roots(J, col);
      const auto ref = oracle::bisection_roots(J, col);
      REQUIRE(ref.size() == roots.size());
      for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(ref[k] - roots[k]) < 1e-10);
    }
  }
}

TEST_CASE("continuant determinant agrees with a dense determinant") {
  const AColumn col = AColumn::from_components(0.4, 1.1, -0.6);
  for (int J = 0; J <= 3; ++J)
    for (double a : {-1.0, 0.2, 0.9}) {
      const cplx dense = build_h(J, col, a).entries.determinant();
      CHECK(std::abs(dense.imag()) < 1e-12);
      CHECK(std::abs(dense.real() - oracle::det_h(J, col, a)) < 1e-12);
    }
}

TEST_CASE("coefficients") {
  const AColumn diag = AColumn::from_components(0.8, 0.0, 0.0);
  const Coefficients top = coefficients(1, diag, 0.8);
  CHECK_FALSE(top.degenerate);
  // a = A1 belongs to q = +1, the last entry in ascending-q order.
  CHECK(std::abs(top.g()(2) - 1.0) < 1e-14);
  CHECK(std::abs(top.g()(0)) + std::abs(top.g()(1)) < 1e-14);

  const Coefficients zero = coefficients(0, diag, 0.0);
  CHECK(std::abs(zero.g()(0) - 1.0) < 1e-15);

  const Coefficients flat = coefficients(2, AColumn{}, 0.0);
  CHECK(flat.degenerate);
  CHECK(flat.basis.size() == 5);

  CHECK_THROWS_AS(coefficients(1, diag, 0.3), NotARoot);

  std::mt19937_64 rng(42);
  std::normal_distribution<double> n;
  for (int i = 0; i < 100; ++i) {
    const AColumn col = AColumn::from_components(n(rng), n(rng), n(rng));
    for (int J = 0; J <= 3; ++J)
      for (double a : separation_roots(J, col)) {
        const Coefficients c = coefficients(J, col, a);
        CHECK_FALSE(c.degenerate);
        CHECK(std::abs(c.g().norm() - 1.0) < 1e-12);
        CHECK(null_residual(build_h(J, col, a), c.g()) < 1e-10);
        int first = 0;
        while (std::abs(c.g()(first)) <= 1e-8) ++first;
        CHECK(std::abs(c.g()(first).imag()) < 1e-14);
        CHECK(c.g()(first).real() > 0.0);
      }
  }
}

TEST_CASE("branch selectors") {
  CHECK(BranchSelector::parse("m=-1").m_for(2, 3) == -1);
  CHECK(BranchSelector::parse("top").m_for(1, 2) == 2);
  CHECK(BranchSelector::parse("zero").m_for(1, 2) == 0);
  const BranchSelector e = BranchSelector::parse("eq45");
  CHECK(e.m_for(1, 1) == -1);
  CHECK(e.m_for(2, 1) == 1);
  CHECK(e.m_for(3, 1) == -1);
  CHECK(e.m_for(4, 1) == 1);
  CHECK(e.m_for(5, 1) == 0);
  CHECK_THROWS_AS(BranchSelector::parse("m=x"), ConfigInvalid);
  CHECK_THROWS_AS(BranchSelector::parse("up"), ConfigInvalid);
}

TEST_CASE("effective terms") {
  const BranchSelector e = BranchSelector::parse("eq45");
  const RPoint north = RPoint::from({0, 0, 0, 0, 2.0});
  const EffectiveTerms t0 = effective_terms(1, north, Case::A, e);
  for (double a : t0.a) CHECK(a == 0.0);
  CHECK(t0.centrifugal == doctest::Approx(1.0 / 4.0));

  const RPoint x = RPoint::from({0.3, -0.4, 0.2, 0.7, 0.1});
  const EffectiveTerms t = effective_terms(1, x, Case::A, e);
  const double den = x.r * (x.r + x.x[4]);
  CHECK(t.a[1] == doctest::Approx(std::sqrt(0.09 + 0.04 + 0.49) / den).epsilon(1e-14));
  CHECK(t.a[4] == 0.0);
  const auto ref = oracle::eq45_values(x);
  for (int l = 0; l < 5; ++l) CHECK(std::abs(t.a[l] - ref[l]) < 1e-14);

  const EffectiveTerms j0 = effective_terms(0, x, Case::A, e);
  for (double a : j0.a) CHECK(a == 0.0);
  CHECK(j0.centrifugal == 0.0);
  CHECK_THROWS_AS(effective_terms(1, RPoint::from({0, 0, 0, 0, -1}), Case::A, e), SingularAxis);
}

TEST_CASE("assembled G solves the angular eigenproblems") {
  std::mt19937_64 rng(43);
  for (Case c : {Case::A, Case::B}) {
    for (int i = 0; i < 4; ++i) {
      const RPoint x = forward(random_xi(rng));
      const EulerAngles phi{0.3 + i, 2.0 + 0.5 * i, 0.6 + 0.4 * i};
      for (int J = 0; J <= 3; ++J)
        for (int l = 1; l <= 5; ++l)
          for (int m = -J; m <= J; ++m) {
            const BranchSelector b{BranchSelector::Kind::uniform, m};
            const int p = m;
            CHECK(eq38_residual(J, p, x, c, l, b, phi, d) < 1e-4);
            CHECK(eq39_residual(J, p, x, c, l, b, phi, d) < 1e-4);
            CHECK(eq40_residual(J, p, x, c, l, b, phi, d) < 1e-4);
          }
    }
  }
}

TEST_CASE("G with the other index order fails the T_1 relation") {
  // phi^J_{p,q} in place of phi^J_{q,p}: T_1 then sees q, not p.
  const RPoint x = RPoint::from({0.3, -0.4, 0.2, 0.7, 0.1});
  const auto sol = solve_separation(1, 0, a_field_closed(x, Case::A), 1, {BranchSelector::Kind::uniform, 1});
  const AngleField swapped = [&](const EulerAngles& a) {
    cplx acc = 0.0;
    for (int q = -1; q <= 1; ++q) acc += sol.g(q + 1) * wigner(1, 0, q, a);
    return acc;
  };
  const EulerAngles phi{0.4, 1.2, 1.0};
  CHECK(std::abs(apply_euler_op(Rotor::T1, swapped, phi, d)) > 1e-3);
}

TEST_CASE("consistency: J = 0 reduces, zero field gives zero") {
  std::mt19937_64 rng(44);
  const ScalarField psi = [](const std::array<double, 5>& x) {
    return cplx(std::exp(-RPoint::from(x).r));
  };
  const ScalarField nil = [](const std::array<double, 5>&) { return cplx(0.0); };
  const std::vector<EulerAngles> angles{{0.4, 1.1, 0.9}, {2.0, 4.0, 2.1}};
  for (Case c : {Case::A, Case::B}) {
    const RPoint x = forward(random_xi(rng));
    CHECK(consistency_residual(0, 0, psi, x, c, {}, d, angles) < 1e-4);
    CHECK(consistency_residual(1, 0, nil, x, c, BranchSelector::parse("eq45"), d, angles) == 0.0);
  }
}
