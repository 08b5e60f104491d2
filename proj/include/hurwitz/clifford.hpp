#pragma once

// Dirac matrices for the 8 -> 5 quadratic map.
//
// Matrices are indexed 0..3 internally; documentation and reports use the
// physics convention s, t in {1..4} and lambda in {1..5}.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hurwitz {

using cplx = std::complex<double>;

struct GammaSet {
  std::array<Eigen::Matrix4cd, 5> gamma;  // gamma[0] is gamma_1
  Eigen::Matrix4cd gamma_tilde;
  std::array<Eigen::Matrix2cd, 3> pauli;
};

// gamma_k = -i beta alpha_k (k = 1..3), gamma_4 = beta gamma_1 gamma_2 gamma_3,
// gamma_5 = beta, and gamma_tilde = i gamma_1 gamma_3.
GammaSet build_gamma();

// max_{l,b} max-abs entry of {gamma_l, gamma_b} - 2 delta_lb I.
double clifford_residual(const GammaSet& g);

// max over all 256 (s,t,u,v) of
//   |sum_l (g_l)_st (g_l)_uv - (2 d_sv d_tu - d_st d_uv - 2 gt_su gt_tv)|.
double fierz_residual(const GammaSet& g);

// Which product i*gamma_a*gamma_b (times sign) plays the role of gamma_tilde.
struct GammaTildeChoice {
  int a = 1;  // 1-based
  int b = 3;
  int sign = +1;
  bool substituted = false;  // true when the default i*gamma_1*gamma_3 failed

  std::string describe() const;
};

struct GammaTildeCandidate {
  GammaTildeChoice choice;
  double fierz = 0.0;
  bool antisymmetric = false;
};

// All 20 candidates +/- i gamma_a gamma_b (a < b) with their Fierz residuals.
std::vector<GammaTildeCandidate> gamma_tilde_candidates(const GammaSet& g);

struct ResolvedGamma {
  GammaSet set;
  GammaTildeChoice choice;
  double fierz = 0.0;
};

// Keeps i gamma_1 gamma_3 if it zeroes the Fierz residual, otherwise adopts
// the first residual-zero candidate from gamma_tilde_candidates().
ResolvedGamma resolve_gamma_tilde(GammaSet g, double tol = 1e-12);

// Process-wide resolved set used by the transform and gauge code.
const ResolvedGamma& resolved_gamma();

enum class Commutation { commutes, anticommutes, neither };

const char* to_string(Commutation c);

// Classification of gamma_tilde against each gamma_lambda.
std::array<Commutation, 5> gamma_tilde_commutation_table(const GammaSet& g,
                                                          double tol = 1e-12);
std::array<Commutation, 5> commutation_table(const Eigen::Matrix4cd& m,
                                             const GammaSet& g,
                                             double tol = 1e-12);

// Every entry of every gamma is one of 0, +-1, +-i and each gamma is Hermitian.
bool gamma_entries_are_units(const GammaSet& g);

}  // namespace hurwitz
