#include "hurwitz/separation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace {

constexpr cplx I{0.0, 1.0};

void check_spin(int J, int p) {
  if (J < 0 || J > max_spin) throw ConfigInvalid("J must lie in 0.." + std::to_string(max_spin));
  if (p < -J || p > J) throw ConfigInvalid("p must satisfy |p| <= J");
}

void check_lambda(int lambda) {
  if (lambda < 1 || lambda > 5) throw ConfigInvalid("lambda must lie in 1..5");
}

int pick_root(int J, int m) {
  m = std::clamp(m, -J, J);
  return q_index(J, m);
}

}  // namespace

AColumn AColumn::from(const GaugeField& f, int lambda) {
  check_lambda(lambda);
  const auto& row = f.A[lambda - 1];
  return from_components(row[0], row[1], row[2]);
}

AColumn AColumn::from_components(double a1, double a2, double a3) {
  return {a1, 0.5 * cplx(a2, -a3), 0.5 * cplx(a2, a3)};
}

double AColumn::magnitude() const { return std::sqrt(a1 * a1 + 4.0 * std::norm(plus)); }

HMatrix build_h(int J, const AColumn& col, double a, int lambda) {
  check_spin(J, 0);
  const int n = 2 * J + 1;
  HMatrix h{Eigen::MatrixXcd::Zero(n, n), J, lambda, a};
  for (int k = 1; k <= n; ++k) {
    const int i = k - 1;
    h.entries(i, i) = -a - double(J + 1 - k) * col.a1;
    if (k > 1) h.entries(i, i - 1) = std::sqrt(double((2 * J + 2 - k) * (k - 1))) * col.plus;
    if (k < n) h.entries(i, i + 1) = std::sqrt(double(k * (2 * J + 1 - k))) * col.minus;
  }
  return h;
}

std::vector<double> separation_roots(int J, const AColumn& col) {
  const HMatrix h = build_h(J, col, 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.entries, Eigen::EigenvaluesOnly);
  std::vector<double> roots(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(roots.begin(), roots.end());
  return roots;
}

double null_residual(const HMatrix& h, const Eigen::VectorXcd& g) {
  return (h.entries * g).norm();
}

Coefficients coefficients(int J, const AColumn& col, double a_root, double tol) {
  // h(a) = h(0) - a, so its null space is the eigenspace of h(0) at a.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(build_h(J, col, 0.0).entries);
  const double scale = std::max(1.0, col.magnitude());
  Coefficients out;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) - a_root) > tol * scale) continue;
    Eigen::VectorXcd v = es.eigenvectors().col(i);
    for (int k = 0; k < v.size(); ++k) {
      if (std::abs(v(k)) > 1e-8) {
        v *= std::conj(v(k)) / std::abs(v(k));
        break;
      }
    }
    out.basis.push_back(v.normalized());
  }
  if (out.basis.empty()) throw NotARoot("h(" + std::to_string(a_root) + ") has no null vector");
  out.degenerate = out.basis.size() > 1;
  return out;
}

BranchSelector BranchSelector::parse(const std::string& s) {
  if (s == "eq45") return {Kind::eq45, 0};
  if (s == "top") return {Kind::uniform, max_spin};
  if (s == "bottom") return {Kind::uniform, -max_spin};
  if (s == "zero") return {Kind::uniform, 0};
  if (s.rfind("m=", 0) == 0) {
    try {
      std::size_t used = 0;
      const int m = std::stoi(s.substr(2), &used);
      if (used == s.size() - 2) return {Kind::uniform, m};
    } catch (const std::exception&) {
    }
  }
  throw ConfigInvalid("unknown branch selector '" + s + "' (use m=<int>, top, bottom, zero, eq45)");
}

std::string BranchSelector::name() const {
  if (kind == Kind::eq45) return "eq45";
  return "m=" + std::to_string(m);
}

int BranchSelector::m_for(int lambda, int J) const {
  check_lambda(lambda);
  if (kind == Kind::eq45) {
    static constexpr int pattern[5] = {-1, 1, -1, 1, 0};
    return pattern[lambda - 1] * J;
  }
  return std::clamp(m, -J, J);
}

SeparationSolution solve_separation(int J, int p, const GaugeField& f, int lambda,
                                    const BranchSelector& branch) {
  check_spin(J, p);
  const AColumn col = AColumn::from(f, lambda);
  SeparationSolution s;
  s.J = J;
  s.p = p;
  s.lambda = lambda;
  s.roots = separation_roots(J, col);
  s.branch_m = branch.m_for(lambda, J);
  s.a = s.roots[pick_root(J, s.branch_m)];
  const Coefficients c = coefficients(J, col, s.a);
  s.g = c.g();
  s.degenerate = c.degenerate;
  return s;
}

cplx assemble_G(int J, int p, const Eigen::VectorXcd& g, const EulerAngles& phi) {
  cplx acc = 0.0;
  for (int q = -J; q <= J; ++q) {
    const cplx gq = g(q_index(J, q));
    if (gq != cplx(0.0)) acc += gq * wigner(J, q, p, phi);
  }
  return acc;
}

cplx assemble_G(int J, int p, const GaugeField& f, int lambda, const BranchSelector& branch,
                const EulerAngles& phi) {
  return assemble_G(J, p, solve_separation(J, p, f, lambda, branch).g, phi);
}

EffectiveTerms effective_terms(int J, const RPoint& x, Case c, const BranchSelector& branch) {
  check_spin(J, 0);
  const GaugeField f = a_field_closed(x, c);
  EffectiveTerms t;
  for (int l = 1; l <= 5; ++l) {
    const AColumn col = AColumn::from(f, l);
    // The roots are m * s exactly; read them from the solver anyway.
    const auto roots = separation_roots(J, col);
    t.a[l - 1] = roots[pick_root(J, branch.m_for(l, J))];
  }
  t.centrifugal = J * (J + 1) / (2.0 * x.r * x.r);
  return t;
}

namespace {

struct AngularSetup {
  GaugeField field;
  SeparationSolution sol;
  AngleField G;
};

AngularSetup angular_setup(int J, int p, const RPoint& x, Case c, int lambda,
                           const BranchSelector& branch) {
  AngularSetup s;
  s.field = a_field_closed(x, c);
  s.sol = solve_separation(J, p, s.field, lambda, branch);
  const Eigen::VectorXcd g = s.sol.g;
  s.G = [J, p, g](const EulerAngles& a) { return assemble_G(J, p, g, a); };
  return s;
}

}  // namespace

double eq38_residual(int J, int p, const RPoint& x, Case c, int lambda,
                     const BranchSelector& branch, const EulerAngles& phi,
                     const DiffStrategy& d) {
  const AngularSetup s = angular_setup(J, p, x, c, lambda, branch);
  cplx lhs = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double a = s.field.A[lambda - 1][k - 1];
    if (a != 0.0) lhs += a * apply_euler_op(Q(k), s.G, phi, d);
  }
  return std::abs(lhs - s.sol.a * s.G(phi));
}

double eq39_residual(int J, int p, const RPoint& x, Case c, int lambda,
                     const BranchSelector& branch, const EulerAngles& phi,
                     const DiffStrategy& d) {
  const AngularSetup s = angular_setup(J, p, x, c, lambda, branch);
  const DiffStrategy dn = d.nested();
  cplx acc = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const AngleField inner = [&, k](const EulerAngles& a) {
      return apply_euler_op(Q(k), s.G, a, dn);
    };
    acc += apply_euler_op(Q(k), inner, phi, dn);
  }
  return std::abs(acc - double(J * (J + 1)) * s.G(phi));
}

double eq40_residual(int J, int p, const RPoint& x, Case c, int lambda,
                     const BranchSelector& branch, const EulerAngles& phi,
                     const DiffStrategy& d) {
  const AngularSetup s = angular_setup(J, p, x, c, lambda, branch);
  return std::abs(apply_euler_op(Rotor::T1, s.G, phi, d) - double(p) * s.G(phi));
}

double consistency_residual(int J, int p, const ScalarField& psi, const RPoint& x, Case c,
                            const BranchSelector& branch, const DiffStrategy& d,
                            const std::vector<EulerAngles>& angles,
                            const ConsistencyOptions& opt) {
  check_spin(J, p);
  check_lambda(opt.lambda_ref);
  d.validate();
  const PhysField product = [&](const std::array<double, 5>& y, const EulerAngles& a) {
    const GaugeField f = a_field_closed(RPoint::from(y), c);
    return psi(y) * assemble_G(J, p, f, opt.lambda_ref, branch, a);
  };

  // (-i d/dx_l + sign a_l) applied to a scalar field.
  const auto cov = [&](const ScalarField& u, int l, const std::array<double, 5>& y,
                       const DiffStrategy& s) {
    const cplx du = diff1(
        [&](double t) {
          auto z = y;
          z[l] += t;
          return u(z);
        },
        s.step, s.order);
    const double al = effective_terms(J, RPoint::from(y), c, branch).a[l];
    return -I * du + opt.coupling_sign * al * u(y);
  };

  const DiffStrategy dn = d.nested();
  cplx scalar = 0.0;
  for (int l = 0; l < 5; ++l) {
    const ScalarField inner = [&, l](const std::array<double, 5>& y) {
      return cov(psi, l, y, dn);
    };
    scalar += cov(inner, l, x.x, dn);
  }
  scalar = 0.5 * scalar + effective_terms(J, x, c, branch).centrifugal * psi(x.x);

  const GaugeField field = a_field_closed(x, c);
  const OscillatorParams none{1.0, 0.0, 0.0};
  double worst = 0.0;
  for (const auto& phi : angles) {
    const cplx lhs = reduced_apply(none, product, x.x, phi, c, d);
    const cplx G = assemble_G(J, p, field, opt.lambda_ref, branch, phi);
    worst = std::max(worst, std::abs(lhs - G * scalar));
  }
  return worst;
}

}  // namespace hurwitz
