#pragma once

// The generalized Hurwitz map (xi_1..xi_4) -> (x_1..x_5, phi_1, phi_2, phi_3).

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hurwitz {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

struct XiPoint {
  std::array<cplx, 4> xi{};

  double norm2() const;  // sum_s |xi_s|^2
};

struct RealOctet {
  std::array<double, 8> u{};
};

struct RPoint {
  std::array<double, 5> x{};
  double r = 0.0;

  static RPoint from(const std::array<double, 5>& x);
};

struct EulerAngles {
  double phi1 = 0.0;  // [0, 2pi)
  double phi2 = 0.0;  // [0, 2pi)
  double phi3 = 0.0;  // [0, pi]
};

enum class Case { A, B };

const char* to_string(Case c);
Case parse_case(const std::string& s);  // "A" | "B"

// Invariants xi_j xi_k^*, indexed [j][k] from 0.
using Gram = std::array<std::array<cplx, 4>, 4>;
using InvariantFn = std::function<double(const Gram&)>;

Gram gram(const XiPoint& p);

// Which pair of xi components carries the fiber angles, plus the optional
// additive offsets F_k(xi_j xi_k^*) of the general solution.
struct AngleCase {
  Case tag = Case::A;
  std::optional<std::array<InvariantFn, 3>> offsets;

  static AngleCase A() { return {Case::A, std::nullopt}; }
  static AngleCase B() { return {Case::B, std::nullopt}; }
};

// Indices (0-based) of the xi components used by the case.
std::array<int, 2> angle_components(Case c);

// x_lambda = xi^* gamma_lambda xi, with r cached.
RPoint forward(const XiPoint& p);

// --- the real-variable form with eight u's -------------------------------

// coef * u_a * u_b with 1-based a, b; the line value is 2 * sum of terms.
struct OctetTerm {
  int coef = 1;
  int a = 1;
  int b = 1;

  bool operator==(const OctetTerm&) const = default;
};

using OctetLines = std::array<std::vector<OctetTerm>, 4>;  // x_2 .. x_5

// The bilinear lines exactly as they are usually printed (with the u_7 u_5
// slip in x_3).
const OctetLines& printed_octet_lines();

struct OctetCorrection {
  int line = 0;  // 2..5
  int term = 0;  // 0-based term index within the line
  OctetTerm printed;
  OctetTerm corrected;
};

// Every single-term edit (one index or one sign) of `lines` that restores
// |x| = sum u^2, checked on deterministic random octets.
std::vector<OctetCorrection> find_octet_corrections(const OctetLines& lines);

// printed_octet_lines() with the unique single-edit correction applied.
const OctetLines& corrected_octet_lines();

double octet_norm_residual(const OctetLines& lines, int samples = 200,
                           std::uint64_t seed = 7);

std::string describe_octet_lines(const OctetLines& lines);

RPoint forward_octet(const RealOctet& u, const OctetLines& lines);
RPoint forward_octet(const RealOctet& u);  // corrected lines

// How the eight u's map onto xi and the octet axes onto gamma axes:
//   xi_s = u[pairing[2s]] + i u[pairing[2s+1]]
//   forward(xi(u)).x[l] = signs[l] * forward_octet(u).x[axis_perm[l]]
struct ConventionMap {
  std::array<int, 8> pairing{};
  std::array<int, 5> axis_perm{};
  std::array<int, 5> signs{};
  double residual = 0.0;  // max componentwise deviation on the check octets
  int witnesses = 0;      // number of exact pairings found by the search

  XiPoint xi_from(const RealOctet& u) const;
  std::string describe() const;
};

// Exhaustive search over the 8! pairings; axis permutation and signs are
// matched form by form. Verified on `samples` random octets.
ConventionMap resolve_convention(int samples = 1000, std::uint64_t seed = 11,
                                 double tol = 1e-12);

// --- fiber coordinates --------------------------------------------------

inline constexpr double default_degeneracy_eps = 1e-12;
inline constexpr double default_singular_eps = 1e-9;

// phi per the case definition: phi_1 = arg a + arg b, phi_2 = arg a - arg b,
// phi_3 = atan2(2|a||b|, |a|^2 - |b|^2), plus offsets. phi_1, phi_2 land in
// [0, 2pi); phi_3 in [0, pi] when no offsets are present.
EulerAngles extra_angles(const XiPoint& p, const AngleCase& c,
                         double eps = default_degeneracy_eps);

// Same values without the degeneracy check and without range normalization.
// Finite-difference code differentiates these (with wrapped differences).
std::array<double, 3> raw_angles(const XiPoint& p, const AngleCase& c);

// One point of the fiber over x with the requested angles. Verified after
// construction; throws SectionFailed if the round trip misses.
XiPoint fiber_section(const RPoint& x, const EulerAngles& phi, const AngleCase& c,
                      double eps = default_singular_eps);

// Wrap an angle difference into (-pi, pi].
double wrap_angle(double d);

}  // namespace hurwitz
