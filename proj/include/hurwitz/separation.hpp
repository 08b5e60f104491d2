#pragma once

// Spin-J separation of the fiber angles: tridiagonal system h_lambda, its
// roots a_lambda, the coefficient vectors g and the angular factor G_Jp.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hurwitz/calculus.hpp"
#include "hurwitz/gauge.hpp"
#include "hurwitz/opcalc.hpp"
#include "hurwitz/wigner.hpp"

namespace hurwitz {

inline constexpr int max_spin = 3;

// (A_l1, A_l+, A_l-) with A_l+- = 1/2 (A_l2 -+ i A_l3).
struct AColumn {
  double a1 = 0.0;
  cplx plus = 0.0;
  cplx minus = 0.0;

  static AColumn from(const GaugeField& f, int lambda);  // lambda in 1..5
  static AColumn from_components(double a1, double a2, double a3);
  // s = sqrt(A_l1^2 + A_l2^2 + A_l3^2)
  double magnitude() const;
};

struct HMatrix {
  Eigen::MatrixXcd entries;
  int J = 0;
  int lambda = 0;
  double a = 0.0;
};

// Row k (1-based) pairs with q = k - J - 1:
//   h_{k,k-1} = sqrt((2J+2-k)(k-1)) A+,  h_{k,k} = -a - (J+1-k) A1,
//   h_{k,k+1} = sqrt(k(2J+1-k)) A-.
HMatrix build_h(int J, const AColumn& col, double a, int lambda = 0);

// Index of q in a coefficient vector.
inline int q_index(int J, int q) { return q + J; }

// All a with det h(a) = 0, ascending. They are the eigenvalues of h(0),
// which is Hermitian since A- = conj(A+).
std::vector<double> separation_roots(int J, const AColumn& col);

double null_residual(const HMatrix& h, const Eigen::VectorXcd& g);

struct Coefficients {
  std::vector<Eigen::VectorXcd> basis;  // orthonormal null space of h(a)
  bool degenerate = false;

  const Eigen::VectorXcd& g() const { return basis.front(); }
};

// Unit null vector(s) of h(a_root). The phase makes the first component with
// modulus above 1e-8 real positive. Throws NotARoot when h(a_root) has no null
// vector within tol.
Coefficients coefficients(int J, const AColumn& col, double a_root, double tol = 1e-8);

// Picks the root m * s_lambda per axis.
struct BranchSelector {
  enum class Kind { uniform, eq45 };
  Kind kind = Kind::uniform;
  int m = 0;

  // "m=<int>", "top", "bottom", "zero" or "eq45"
  static BranchSelector parse(const std::string& s);
  std::string name() const;
  // lambda in 1..5. eq45 uses the sign pattern (-, +, -, +, 0) times J.
  int m_for(int lambda, int J) const;
};

struct SeparationSolution {
  int J = 0;
  int p = 0;
  int lambda = 0;
  std::vector<double> roots;
  int branch_m = 0;
  double a = 0.0;
  Eigen::VectorXcd g;
  bool degenerate = false;
};

SeparationSolution solve_separation(int J, int p, const GaugeField& f, int lambda,
                                    const BranchSelector& branch);

// sum_q g_q phi^J_{q,p}(phi)
cplx assemble_G(int J, int p, const Eigen::VectorXcd& g, const EulerAngles& phi);
cplx assemble_G(int J, int p, const GaugeField& f, int lambda, const BranchSelector& branch,
                const EulerAngles& phi);

struct EffectiveTerms {
  std::array<double, 5> a{};
  double centrifugal = 0.0;
};

EffectiveTerms effective_terms(int J, const RPoint& x, Case c, const BranchSelector& branch);

// Residuals of the angular eigenproblems at a single point, measured with
// finite differences in the angles.
//   Ahat_lambda G - a_lambda G    (lambda in 1..5)
double eq38_residual(int J, int p, const RPoint& x, Case c, int lambda,
                     const BranchSelector& branch, const EulerAngles& phi,
                     const DiffStrategy& d);
//   Q^2 G - J(J+1) G
double eq39_residual(int J, int p, const RPoint& x, Case c, int lambda,
                     const BranchSelector& branch, const EulerAngles& phi,
                     const DiffStrategy& d);
//   T_1 G - p G
double eq40_residual(int J, int p, const RPoint& x, Case c, int lambda,
                     const BranchSelector& branch, const EulerAngles& phi,
                     const DiffStrategy& d);

using ScalarField = std::function<cplx(const std::array<double, 5>&)>;

struct ConsistencyOptions {
  int lambda_ref = 1;           // axis whose g builds G(x, phi)
  double coupling_sign = -1.0;  // (-i d/dx_l + sign * a_l)^2 in the scalar equation
};

// max over phi of
//   | [1/2 (-i d + A Q)^2 + Q^2/(2r^2)] (Psi G)
//     - G [1/2 (-i d + sign a)^2 + J(J+1)/(2r^2)] Psi |
double consistency_residual(int J, int p, const ScalarField& psi, const RPoint& x, Case c,
                            const BranchSelector& branch, const DiffStrategy& d,
                            const std::vector<EulerAngles>& angles,
                            const ConsistencyOptions& opt = {});

}  // namespace hurwitz
