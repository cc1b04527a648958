#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ndalg/ndalg.hpp"

namespace {

constexpr int kExitUsage = 64;     // malformed scenario / descriptor
constexpr int kExitBadSolution = 65;

ndalg::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ndalg::ParseError(path, "cannot open file");
  ndalg::json j;
  try {
    in >> j;
  } catch (const ndalg::json::parse_error& e) {
    throw ndalg::ParseError(path, std::string("invalid JSON: ") + e.what());
  }
  return j;
}

ndalg::Scenario load_scenario(const std::string& path) {
  ndalg::Scenario s = ndalg::scenario_from_json(load_json_file(path));
  if (const char* cap = std::getenv("NDALG_INDEX_CAP")) {
    char* end = nullptr;
    long value = std::strtol(cap, &end, 10);
    if (end == cap || *end != '\0' || value < 0)
      throw ndalg::ParseError("NDALG_INDEX_CAP",
                              "expected a nonnegative integer");
    s.protocol.index_cap = static_cast<int>(value);
  }
  return s;
}

int cmd_verify(const std::string& path) {
  ndalg::Scenario scenario = load_scenario(path);
  ndalg::VerifyOutcome outcome = ndalg::run_verify(scenario);
  std::cout << outcome.report_json.dump(2) << "\n";
  return outcome.exit_code;
}

int cmd_export(const std::string& path, const std::string& out_path) {
  ndalg::Scenario scenario = load_scenario(path);
  if (!scenario.export_spec)
    throw ndalg::ParseError("scenario.export", "missing");
  const std::string content = ndalg::run_export(scenario);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ndalg::ParseError(out_path, "cannot open output file");
  out << content;
  return 0;
}

int cmd_compose(const std::vector<std::string>& descriptors) {
  std::vector<ndalg::ActionDescriptor> actions;
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    ndalg::json j;
    try {
      j = ndalg::json::parse(descriptors[i]);
    } catch (const ndalg::json::parse_error& e) {
      throw ndalg::ParseError("descriptor[" + std::to_string(i) + "]",
                              std::string("invalid JSON: ") + e.what());
    }
    actions.push_back(
        ndalg::action_from_json(j, "descriptor[" + std::to_string(i) + "]"));
  }
  std::cout << ndalg::compose_descriptors(actions).dump(2) << "\n";
  return 0;
}

int cmd_rho_table(double lo, double hi, int count) {
  if (count < 2) throw ndalg::ParseError("grid", "count must be >= 2");
  if (!(lo <= hi)) throw ndalg::ParseError("grid", "lo must not exceed hi");
  const ndalg::SmoothExpr rho = ndalg::make_rho();
  std::printf("x,rho\n");
  for (int i = 0; i < count; ++i) {
    const double x = lo + (hi - lo) * i / (count - 1);
    std::printf("%.17g,%.17g\n", x, rho.eval(x));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Jump symmetries of generalized ODE solutions in the nowhere-dense "
      "sequence algebra"};
  app.require_subcommand(1);

  std::string scenario_path;
  auto* verify =
      app.add_subcommand("verify", "certify a scenario's transformed solution");
  verify->add_option("file", scenario_path, "scenario JSON file")->required();

  std::string export_path;
  std::string export_out;
  auto* exporter =
      app.add_subcommand("export", "sample transformed representatives");
  exporter->add_option("file", export_path, "scenario JSON file")->required();
  exporter->add_option("-o,--output", export_out, "output file")->required();

  std::vector<std::string> descriptors;
  auto* compose = app.add_subcommand("compose", "fold a chain of action descriptors");
  compose->add_option("descriptor", descriptors, "action descriptor JSON strings")
      ->required();

  std::vector<double> grid;
  auto* rho_table = app.add_subcommand("rho-table", "print cutoff samples");
  rho_table->add_option("--grid", grid, "lo hi count")->expected(3)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(scenario_path);
    if (*exporter) return cmd_export(export_path, export_out);
    if (*compose) return cmd_compose(descriptors);
    if (*rho_table)
      return cmd_rho_table(grid[0], grid[1], static_cast<int>(grid[2]));
  } catch (const ndalg::ParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ndalg::DerivativeMismatch& e) {
    std::cerr << "solution rejected: " << e.what() << "\n";
    return kExitBadSolution;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
