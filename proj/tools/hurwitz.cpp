// hurwitz: run the verification suite or export gauge / separation data.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hurwitz/errors.hpp"
#include "hurwitz/harness.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_check_failure = 1;
constexpr int exit_config = 2;

std::array<double, 5> parse_point(const std::string& s) {
  std::array<double, 5> x{};
  std::stringstream in(s);
  std::string item;
  int n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 5) throw hurwitz::ConfigInvalid("--point takes exactly five values");
    try {
      std::size_t used = 0;
      x[n] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw hurwitz::ConfigInvalid("bad coordinate '" + item + "' in --point");
    }
    ++n;
  }
  if (n != 5) throw hurwitz::ConfigInvalid("--point takes exactly five values");
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Hurwitz transformation: checks and exports"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run every check and write a report");
  std::string config_path, json_out;
  std::uint64_t seed = 0;
  int samples = 0;
  verify->add_option("--config", config_path, "JSON config file");
  auto* seed_opt = verify->add_option("--seed", seed, "sampling seed");
  auto* samples_opt = verify->add_option("--samples", samples, "base sample count")
                          ->check(CLI::PositiveNumber);
  verify->add_option("--json", json_out, "write the JSON report here");

  auto* fields = app.add_subcommand("fields", "export closed-form gauge fields as JSON lines");
  std::string case_name = "A", region = "random", out_path;
  int n = 1;
  std::uint64_t fields_seed = 1;
  fields->add_option("--case", case_name, "A or B")->check(CLI::IsMember({"A", "B"}));
  fields->add_option("-n", n, "number of points")->required();
  fields->add_option("--region", region, "random, north or axis")
      ->check(CLI::IsMember({"random", "north", "axis"}));
  fields->add_option("--seed", fields_seed, "sampling seed");
  fields->add_option("--out", out_path, "output path")->required();

  auto* separate = app.add_subcommand("separate", "separation data at one point");
  int J = 1, p = 0;
  std::string point = "0.3,-0.2,0.5,0.1,0.4", branch = "m=1", sep_case = "A", sep_out;
  separate->add_option("--j", J, "spin J (0..3)");
  separate->add_option("--p", p, "T1 eigenvalue p");
  separate->add_option("--case", sep_case, "A or B")->check(CLI::IsMember({"A", "B"}));
  separate->add_option("--point", point, "x1,..,x5");
  separate->add_option("--branch", branch, "m=<int>, top, bottom, zero or eq45");
  separate->add_option("--out", sep_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_config;
  }

  try {
    if (*verify) {
      hurwitz::SuiteConfig cfg;
      if (!config_path.empty()) cfg = hurwitz::SuiteConfig::load(config_path);
      if (*seed_opt) cfg.seed = seed;
      if (*samples_opt) cfg.samples = samples;
      const hurwitz::Report rep = hurwitz::run_suite(cfg);
      std::cout << rep.summary();
      if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw hurwitz::IoError("cannot write '" + json_out + "'");
        out << rep.to_json().dump(2) << "\n";
      }
      return rep.pass() ? exit_pass : exit_check_failure;
    }
    if (*fields) {
      const auto sum =
          hurwitz::fields_cmd(hurwitz::parse_case(case_name), n, region, out_path, fields_seed);
      std::cout << sum.to_json().dump() << "\n";
      return exit_pass;
    }
    if (*separate) {
      const auto j = hurwitz::separate_cmd(J, p, hurwitz::parse_case(sep_case), parse_point(point),
                                           hurwitz::BranchSelector::parse(branch), sep_out);
      std::cout << "wrote " << j["records"].size() << " records to " << sep_out << "\n";
      return exit_pass;
    }
  } catch (const hurwitz::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_config;
  }
  return exit_config;
}
