#include "hurwitz/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "hurwitz/clifford.hpp"
#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace {

constexpr cplx I{0.0, 1.0};

double mod_two_pi(double a) {
  double m = std::fmod(a, two_pi);
  if (m < 0.0) m += two_pi;
  if (m >= two_pi) m -= two_pi;
  return m;
}

using Form = std::array<std::array<double, 8>, 8>;

Form octet_form(const std::vector<OctetTerm>& terms) {
  Form m{};
  for (const auto& t : terms) {
    m[t.a - 1][t.b - 1] += t.coef;
    m[t.b - 1][t.a - 1] += t.coef;
  }
  return m;
}

Form diagonal_form() {
  Form m{};
  for (int i = 0; i < 8; ++i) m[i][i] = i < 4 ? 1.0 : -1.0;
  return m;
}

double form_distance(const Form& a, const Form& b, double sign) {
  double d = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) d = std::max(d, std::abs(a[i][j] - sign * b[i][j]));
  return d;
}

}  // namespace

double XiPoint::norm2() const {
  double s = 0.0;
  for (const auto& z : xi) s += std::norm(z);
  return s;
}

RPoint RPoint::from(const std::array<double, 5>& x) {
  RPoint p;
  p.x = x;
  double s = 0.0;
  for (double v : x) s += v * v;
  p.r = std::sqrt(s);
  return p;
}

const char* to_string(Case c) { return c == Case::A ? "A" : "B"; }

Case parse_case(const std::string& s) {
  if (s == "A" || s == "a") return Case::A;
  if (s == "B" || s == "b") return Case::B;
  throw ConfigInvalid("unknown case '" + s + "' (expected A or B)");
}

Gram gram(const XiPoint& p) {
  Gram g{};
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) g[j][k] = p.xi[j] * std::conj(p.xi[k]);
  return g;
}

std::array<int, 2> angle_components(Case c) {
  return c == Case::A ? std::array<int, 2>{0, 1} : std::array<int, 2>{2, 3};
}

RPoint forward(const XiPoint& p) {
  const auto& g = resolved_gamma().set;
  Eigen::Vector4cd v;
  for (int s = 0; s < 4; ++s) v(s) = p.xi[s];
  std::array<double, 5> x{};
  for (int l = 0; l < 5; ++l) x[l] = (v.adjoint() * g.gamma[l] * v)(0, 0).real();
  RPoint out = RPoint::from(x);
  return out;
}

// --- octet form ---------------------------------------------------------

const OctetLines& printed_octet_lines() {
  static const OctetLines lines = {
      std::vector<OctetTerm>{{1, 1, 5}, {1, 2, 6}, {-1, 3, 7}, {-1, 4, 8}},
      std::vector<OctetTerm>{{1, 1, 6}, {-1, 7, 5}, {1, 3, 8}, {-1, 4, 7}},
      std::vector<OctetTerm>{{1, 1, 7}, {1, 2, 8}, {1, 3, 5}, {1, 4, 6}},
      std::vector<OctetTerm>{{1, 1, 8}, {-1, 2, 7}, {-1, 3, 6}, {1, 4, 5}},
  };
  return lines;
}

RPoint forward_octet(const RealOctet& o, const OctetLines& lines) {
  const auto& u = o.u;
  std::array<double, 5> x{};
  for (int i = 0; i < 4; ++i) x[0] += u[i] * u[i] - u[i + 4] * u[i + 4];
  for (int l = 0; l < 4; ++l) {
    double s = 0.0;
    for (const auto& t : lines[l]) s += t.coef * u[t.a - 1] * u[t.b - 1];
    x[l + 1] = 2.0 * s;
  }
  return RPoint::from(x);
}

RPoint forward_octet(const RealOctet& u) {
  return forward_octet(u, corrected_octet_lines());
}

double octet_norm_residual(const OctetLines& lines, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    RealOctet u;
    double n2 = 0.0;
    for (auto& v : u.u) {
      v = n01(rng);
      n2 += v * v;
    }
    worst = std::max(worst, std::abs(forward_octet(u, lines).r - n2) / n2);
  }
  return worst;
}

std::vector<OctetCorrection> find_octet_corrections(const OctetLines& lines) {
  std::vector<OctetCorrection> out;
  for (int l = 0; l < 4; ++l)
    for (int t = 0; t < static_cast<int>(lines[l].size()); ++t) {
      const OctetTerm orig = lines[l][t];
      for (int coef : {1, -1})
        for (int a = 1; a <= 8; ++a)
          for (int b = 1; b <= 8; ++b) {
            if (a == b) continue;
            const int edits = (coef != orig.coef) + (a != orig.a) + (b != orig.b);
            if (edits != 1) continue;
            OctetLines trial = lines;
            trial[l][t] = {coef, a, b};
            if (octet_norm_residual(trial) < 1e-12)
              out.push_back({l + 2, t, orig, trial[l][t]});
          }
    }
  return out;
}

const OctetLines& corrected_octet_lines() {
  static const OctetLines lines = [] {
    OctetLines l = printed_octet_lines();
    const auto fixes = find_octet_corrections(l);
    if (fixes.size() != 1)
      throw NoConventionFound("expected exactly one single-edit correction of the octet "
                              "form, found " + std::to_string(fixes.size()));
    l[fixes[0].line - 2][fixes[0].term] = fixes[0].corrected;
    return l;
  }();
  return lines;
}

std::string describe_octet_lines(const OctetLines& lines) {
  std::ostringstream os;
  os << "x1 = u1^2 + u2^2 + u3^2 + u4^2 - u5^2 - u6^2 - u7^2 - u8^2";
  for (int l = 0; l < 4; ++l) {
    os << "; x" << l + 2 << " = 2(";
    for (std::size_t t = 0; t < lines[l].size(); ++t) {
      const auto& term = lines[l][t];
      if (t == 0)
        os << (term.coef < 0 ? "-" : "");
      else
        os << (term.coef < 0 ? " - " : " + ");
      os << "u" << term.a << "u" << term.b;
    }
    os << ")";
  }
  return os.str();
}

// --- convention search --------------------------------------------------

XiPoint ConventionMap::xi_from(const RealOctet& u) const {
  XiPoint p;
  for (int s = 0; s < 4; ++s) p.xi[s] = cplx(u.u[pairing[2 * s]], u.u[pairing[2 * s + 1]]);
  return p;
}

std::string ConventionMap::describe() const {
  std::ostringstream os;
  for (int s = 0; s < 4; ++s) {
    if (s) os << ", ";
    os << "xi" << s + 1 << " = u" << pairing[2 * s] + 1 << " + i u" << pairing[2 * s + 1] + 1;
  }
  os << "; ";
  for (int l = 0; l < 5; ++l) {
    if (l) os << ", ";
    os << "x" << l + 1 << "[gamma] = " << (signs[l] < 0 ? "-" : "+") << "x"
       << axis_perm[l] + 1 << "[octet]";
  }
  return os.str();
}

ConventionMap resolve_convention(int samples, std::uint64_t seed, double tol) {
  const auto& g = resolved_gamma().set;
  const auto& lines = corrected_octet_lines();
  std::array<Form, 5> octet{};
  octet[0] = diagonal_form();
  for (int l = 0; l < 4; ++l) octet[l + 1] = octet_form(lines[l]);

  std::array<int, 8> perm{};
  for (int i = 0; i < 8; ++i) perm[i] = i;

  std::optional<ConventionMap> found;
  int witnesses = 0;
  double best_mismatch = std::numeric_limits<double>::infinity();

  do {
    // u index perm[2s] -> Re xi_s, perm[2s+1] -> Im xi_s
    std::array<int, 8> slot{};
    std::array<cplx, 8> phase{};
    for (int s = 0; s < 4; ++s) {
      slot[perm[2 * s]] = s;
      phase[perm[2 * s]] = 1.0;
      slot[perm[2 * s + 1]] = s;
      phase[perm[2 * s + 1]] = I;
    }
    ConventionMap cand;
    cand.pairing = perm;
    std::array<bool, 5> used{};
    bool ok = true;
    double mismatch = 0.0;
    for (int l = 0; l < 5 && ok; ++l) {
      Form q{};
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          q[i][j] = (std::conj(phase[i]) * g.gamma[l](slot[i], slot[j]) * phase[j]).real();
      for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) q[i][j] = q[j][i] = 0.5 * (q[i][j] + q[j][i]);
      double best = std::numeric_limits<double>::infinity();
      for (int mu = 0; mu < 5; ++mu) {
        if (used[mu]) continue;
        for (int sign : {1, -1}) {
          const double d = form_distance(q, octet[mu], sign);
          if (d < best) {
            best = d;
            cand.axis_perm[l] = mu;
            cand.signs[l] = sign;
          }
        }
      }
      mismatch = std::max(mismatch, best);
      if (best > tol)
        ok = false;
      else
        used[cand.axis_perm[l]] = true;
    }
    best_mismatch = std::min(best_mismatch, mismatch);
    if (ok) {
      ++witnesses;
      if (!found) found = cand;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!found)
    throw NoConventionFound("no pairing/permutation/sign assignment matches; minimal "
                            "form mismatch " + std::to_string(best_mismatch));

  ConventionMap map = *found;
  map.witnesses = witnesses;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    RealOctet u;
    for (auto& v : u.u) v = n01(rng);
    const RPoint a = forward(map.xi_from(u));
    const RPoint b = forward_octet(u);
    for (int l = 0; l < 5; ++l)
      worst = std::max(worst, std::abs(a.x[l] - map.signs[l] * b.x[map.axis_perm[l]]));
  }
  map.residual = worst;
  if (worst >= tol)
    throw NoConventionFound("witness map failed sample verification, residual " +
                            std::to_string(worst));
  return map;
}

// --- fiber coordinates --------------------------------------------------

double wrap_angle(double d) {
  d = std::fmod(d + pi, two_pi);
  if (d < 0.0) d += two_pi;
  return d - pi;
}

std::array<double, 3> raw_angles(const XiPoint& p, const AngleCase& c) {
  const auto [ia, ib] = angle_components(c.tag);
  const cplx a = p.xi[ia];
  const cplx b = p.xi[ib];
  const double na = std::norm(a);
  const double nb = std::norm(b);
  std::array<double, 3> phi = {std::arg(a) + std::arg(b), std::arg(a) - std::arg(b),
                               std::atan2(2.0 * std::sqrt(na * nb), na - nb)};
  if (c.offsets) {
    const Gram gm = gram(p);
    for (int k = 0; k < 3; ++k) phi[k] += (*c.offsets)[k](gm);
  }
  return phi;
}

EulerAngles extra_angles(const XiPoint& p, const AngleCase& c, double eps) {
  const auto [ia, ib] = angle_components(c.tag);
  if (std::abs(p.xi[ia]) <= eps || std::abs(p.xi[ib]) <= eps)
    throw DegenerateFiber("xi_" + std::to_string(ia + 1) + " or xi_" +
                          std::to_string(ib + 1) + " vanishes; case " + to_string(c.tag) +
                          " angles undefined");
  const auto raw = raw_angles(p, c);
  return {mod_two_pi(raw[0]), mod_two_pi(raw[1]), raw[2]};
}

namespace {

// Given the spinor carrying the angles, solve the remaining two components
// from x_1..x_4, which are real-linear in them.
XiPoint complete_section(const RPoint& x, const EulerAngles& base, Case tag) {
  const auto& g = resolved_gamma().set;
  const double block_norm2 = tag == Case::A ? 0.5 * (x.r + x.x[4]) : 0.5 * (x.r - x.x[4]);
  const double rho = std::sqrt(std::max(block_norm2, 0.0));
  const double th_a = 0.5 * (base.phi1 + base.phi2);
  const double th_b = 0.5 * (base.phi1 - base.phi2);
  const cplx a = rho * std::cos(0.5 * base.phi3) * std::polar(1.0, th_a);
  const cplx b = rho * std::sin(0.5 * base.phi3) * std::polar(1.0, th_b);

  const int known0 = tag == Case::A ? 0 : 2;
  const int free0 = tag == Case::A ? 2 : 0;

  XiPoint p;
  p.xi[known0] = a;
  p.xi[known0 + 1] = b;

  // x_l = xi^* gamma_l xi is affine in the free components once the known
  // block is fixed; the diagonal blocks vanish for l = 1..4.
  Eigen::Matrix4d m;
  Eigen::Vector4d rhs;
  const std::array<cplx, 4> basis_val = {1.0, I, 1.0, I};
  const std::array<int, 4> basis_slot = {free0, free0, free0 + 1, free0 + 1};
  Eigen::Vector4cd known = Eigen::Vector4cd::Zero();
  known(known0) = a;
  known(known0 + 1) = b;
  for (int l = 0; l < 4; ++l) {
    for (int j = 0; j < 4; ++j) {
      Eigen::Vector4cd unk = Eigen::Vector4cd::Zero();
      unk(basis_slot[j]) = basis_val[j];
      m(l, j) = 2.0 * (known.adjoint() * g.gamma[l] * unk)(0, 0).real();
    }
    rhs(l) = x.x[l];
  }
  const Eigen::Vector4d w = m.colPivHouseholderQr().solve(rhs);
  p.xi[free0] = cplx(w(0), w(1));
  p.xi[free0 + 1] = cplx(w(2), w(3));
  return p;
}

double angle_mismatch(const EulerAngles& a, const EulerAngles& b) {
  return std::max({std::abs(wrap_angle(a.phi1 - b.phi1)), std::abs(wrap_angle(a.phi2 - b.phi2)),
                   std::abs(a.phi3 - b.phi3)});
}

}  // namespace

XiPoint fiber_section(const RPoint& x, const EulerAngles& phi, const AngleCase& c,
                      double eps) {
  const double sigma = c.tag == Case::A ? 1.0 : -1.0;
  if (!(x.r > 0.0) || x.r + sigma * x.x[4] <= eps * x.r)
    throw SingularFiber(std::string("point lies on the case ") + to_string(c.tag) +
                        " singular half-axis");

  EulerAngles base = phi;
  XiPoint p = complete_section(x, base, c.tag);
  if (c.offsets) {
    for (int it = 0; it < 100; ++it) {
      const Gram gm = gram(p);
      EulerAngles next{phi.phi1 - (*c.offsets)[0](gm), phi.phi2 - (*c.offsets)[1](gm),
                       phi.phi3 - (*c.offsets)[2](gm)};
      p = complete_section(x, next, c.tag);
      if (angle_mismatch(next, base) < 1e-15) break;
      base = next;
    }
  }

  const RPoint back = forward(p);
  double dx = 0.0;
  for (int l = 0; l < 5; ++l) dx = std::max(dx, std::abs(back.x[l] - x.x[l]));
  if (dx > 1e-10 * x.r)
    throw SectionFailed("forward(section) misses x by " + std::to_string(dx / x.r) +
                        " relative");
  EulerAngles got;
  try {
    got = extra_angles(p, c);
  } catch (const DegenerateFiber&) {
    throw SectionFailed("requested angles lie on a degenerate fiber (phi_3 at a pole)");
  }
  const double dphi = angle_mismatch(got, phi);
  if (dphi > 1e-10)
    throw SectionFailed("angles of section miss the request by " + std::to_string(dphi));
  return p;
}

}  // namespace hurwitz
