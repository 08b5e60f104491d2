#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hurwitz/clifford.hpp"

using namespace hurwitz;

namespace {

const cplx I{0.0, 1.0};

// Fierz sum computed directly from the matrices, independent of the library loop.
double brute_fierz(const GammaSet& g, const Eigen::Matrix4cd& gt) {
  double worst = 0.0;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) {
          cplx lhs = 0.0;
          for (const auto& m : g.gamma) lhs += m(s, t) * m(u, v);
          const cplx rhs = 2.0 * double(s == v && t == u) - double(s == t && u == v) -
                           2.0 * gt(s, u) * gt(t, v);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

}  // namespace

TEST_CASE("gamma_5 is the diagonal beta") {
  const GammaSet g = build_gamma();
  Eigen::Matrix4cd beta = Eigen::Matrix4cd::Zero();
  beta.diagonal() << 1.0, 1.0, -1.0, -1.0;
  CHECK((g.gamma[4] - beta).norm() == 0.0);
}

TEST_CASE("anticommutators and hermiticity") {
  const GammaSet g = build_gamma();
  CHECK(clifford_residual(g) < 1e-14);
  for (int a = 0; a < 5; ++a) {
    CHECK((g.gamma[a] - g.gamma[a].adjoint()).norm() == 0.0);
    CHECK(std::abs(g.gamma[a].trace()) == 0.0);
    for (int b = 0; b < 5; ++b) {
      const Eigen::Matrix4cd ac = g.gamma[a] * g.gamma[b] + g.gamma[b] * g.gamma[a];
      const Eigen::Matrix4cd expect = 2.0 * double(a == b) * Eigen::Matrix4cd::Identity();
      CHECK((ac - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  CHECK(gamma_entries_are_units(g));
}

TEST_CASE("gamma_4 is beta gamma_1 gamma_2 gamma_3") {
  const GammaSet g = build_gamma();
  CHECK((g.gamma[3] - g.gamma[4] * g.gamma[0] * g.gamma[1] * g.gamma[2]).norm() < 1e-15);
}

TEST_CASE("i gamma_1 gamma_3 satisfies the Fierz identity without substitution") {
  const auto& rg = resolved_gamma();
  CHECK_FALSE(rg.choice.substituted);
  CHECK(rg.choice.a == 1);
  CHECK(rg.choice.b == 3);
  CHECK(rg.fierz < 1e-12);
  const GammaSet g = build_gamma();
  CHECK(brute_fierz(g, I * g.gamma[0] * g.gamma[2]) < 1e-12);
  CHECK((rg.set.gamma_tilde + rg.set.gamma_tilde.transpose()).norm() == 0.0);
}

TEST_CASE("only +-i gamma_1 gamma_3 among the products zero the Fierz residual") {
  const GammaSet g = build_gamma();
  int zero = 0;
  for (const auto& c : gamma_tilde_candidates(g)) {
    const Eigen::Matrix4cd m = double(c.choice.sign) * I * g.gamma[c.choice.a - 1] *
                               g.gamma[c.choice.b - 1];
    CHECK(std::abs(brute_fierz(g, m) - c.fierz) < 1e-13);
    if (c.fierz < 1e-12) {
      ++zero;
      CHECK(c.choice.a == 1);
      CHECK(c.choice.b == 3);
    }
  }
  CHECK(gamma_tilde_candidates(g).size() == 20);
  CHECK(zero == 2);
}

TEST_CASE("a wrong gamma_tilde is replaced by the search") {
  GammaSet g = build_gamma();
  g.gamma_tilde = I * g.gamma[0] * g.gamma[1];
  CHECK(fierz_residual(g) > 0.1);
  const ResolvedGamma r = resolve_gamma_tilde(g);
  CHECK(r.choice.substituted);
  CHECK(r.fierz < 1e-12);
  CHECK(brute_fierz(r.set, r.set.gamma_tilde) < 1e-12);
}

TEST_CASE("gamma_tilde commutes with gamma_2,4,5 and anticommutes with gamma_1,3") {
  const auto t = gamma_tilde_commutation_table(resolved_gamma().set);
  CHECK(t[0] == Commutation::anticommutes);
  CHECK(t[1] == Commutation::commutes);
  CHECK(t[2] == Commutation::anticommutes);
  CHECK(t[3] == Commutation::commutes);
  CHECK(t[4] == Commutation::commutes);
}
