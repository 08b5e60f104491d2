#pragma once

// Suite orchestration, configuration and JSON export.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "hurwitz/separation.hpp"

namespace hurwitz {

using json = nlohmann::json;

inline constexpr int report_schema_version = 1;

struct SuiteConfig {
  std::uint64_t seed = 20240601;
  int samples = 1000;
  double fd_step = 1e-5;
  double fd_second_step = 1e-3;
  int fd_order = 4;
  std::map<std::string, double> tolerances;  // check_id -> override
  std::vector<Case> cases{Case::A, Case::B};
  int J_max = 3;
  double exclusion_eps = 1e-2;

  void validate() const;  // throws ConfigInvalid
  DiffStrategy diff() const { return {fd_step, fd_order, fd_second_step}; }
  double tolerance(const std::string& id, double fallback) const;

  static SuiteConfig from_json(const json& j);  // unknown keys rejected
  static SuiteConfig load(const std::string& path);
  json to_json() const;
};

struct CheckRecord {
  std::string check_id;
  std::string case_tag;  // "A", "B" or "-"
  int n_samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::vector<CheckRecord> checks;
  std::vector<CheckRecord> diagnostics;  // measured and reported, not gating
  json conventions;
  json findings;
  json config;
  double runtime_seconds = 0.0;
  std::string timestamp;

  bool pass() const;
  const CheckRecord* find(const std::string& id, const std::string& case_tag = "-") const;
  json to_json() const;
  std::string summary() const;  // human-readable table
};

// Deterministic draws. xi components have independent standard-normal real
// and imaginary parts.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  XiPoint xi();
  // xi with both angle components and sin(phi_3) away from zero, and x away
  // from the case's singular half-line, all relative to eps.
  XiPoint regular_xi(Case c, double eps);
  EulerAngles angles(double polar_margin);
  double uniform(double lo, double hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Runs every check. Single-threaded and deterministic in cfg.seed.
Report run_suite(const SuiteConfig& cfg);

struct FieldsSummary {
  int written = 0;
  int skipped = 0;
  json to_json() const { return {{"written", written}, {"skipped", skipped}}; }
};

// region: "random" (generic points), "north" (positive x5 axis for case A,
// negative for case B: the regular half-line) or "axis" (alternates generic
// points with points on the singular half-line, which are skipped).
// Throws IoError when out_path cannot be written, ConfigInvalid on a bad
// region or n < 1.
FieldsSummary fields_cmd(Case c, int n, const std::string& region, const std::string& out_path,
                         std::uint64_t seed = 1);

json separation_json(int J, int p, Case c, const std::array<double, 5>& point,
                     const BranchSelector& branch);

// Throws SingularAxis on the singular half-line, IoError on write failure.
json separate_cmd(int J, int p, Case c, const std::array<double, 5>& point,
                  const BranchSelector& branch, const std::string& out_path);

}  // namespace hurwitz
