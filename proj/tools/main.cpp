// Command-line front end: tuple file I/O, certification reports, flow runs,
// catalogue emission and parameter tuning.
//
// Exit codes: 0 success, 1 demanded verdict not met, 2 input error.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilsol/commands.hpp"
#include "nilsol/io.hpp"

namespace {

struct OutputMode {
  bool json = false;
};

void emit(const nilsol::CommandResult& result, const OutputMode& mode) {
  std::cout << (mode.json ? result.json : result.text);
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> params;
  for (const std::string& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw nilsol::ParameterError("bad --param '" + kv + "', expected key=value");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(value, &used);
    } catch (const std::exception&) {
      throw nilsol::ParameterError("bad --param '" + kv + "': '" + value + "' is not a number");
    }
    if (used != value.size())
      throw nilsol::ParameterError("bad --param '" + kv + "': '" + value + "' is not a number");
    if (!params.emplace(key, parsed).second)
      throw nilsol::ParameterError("duplicate --param '" + key + "'");
  }
  return params;
}

std::pair<double, double> parse_bounds(const std::string& raw) {
  const auto sep = raw.find(':');
  if (sep == std::string::npos)
    throw nilsol::ParameterError("bad --bounds '" + raw + "', expected lo:hi");
  const auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty())
      throw nilsol::ParameterError("bad --bounds '" + raw + "', expected lo:hi");
    return v;
  };
  return {number(raw.substr(0, sep)), number(raw.substr(sep + 1))};
}

nilsol::Group parse_group(const std::string& name) {
  if (name == "glq") return nilsol::Group::GLq;
  if (name == "slq") return nilsol::Group::SLq;
  if (name == "full") return nilsol::Group::Full;
  throw nilsol::ParameterError("unknown group '" + name + "' (expected glq, slq or full)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-map certification of Ricci Yang-Mills solitons on 2-step nilpotent Lie groups"};
  app.require_subcommand(1);
  app.fallthrough();  // allow global flags after the subcommand

  OutputMode output;
  app.add_flag("--json", output.json, "machine-readable JSON reports");

  // analyze
  std::string analyze_path;
  double analyze_tol = nilsol::kCertifyTol;
  auto* analyze = app.add_subcommand("analyze", "validate, fingerprint and run all certificates");
  analyze->add_option("file", analyze_path, "tuple document")->required();
  analyze->add_option("--tol", analyze_tol, "certification tolerance");

  // certify
  std::string certify_path, certify_mode = "rym", certify_expect;
  double certify_tol = nilsol::kCertifyTol;
  auto* certify = app.add_subcommand("certify", "run one soliton/minimality certificate");
  certify->add_option("file", certify_path, "tuple document")->required();
  certify->add_option("--mode", certify_mode, "rym | ricci | gfi | ricci_and_gfi");
  certify->add_option("--tol", certify_tol, "certification tolerance");
  certify->add_option("--expect", certify_expect, "fail (exit 1) unless the verdict matches");

  // flow
  std::vector<std::string> flow_paths;
  nilsol::FlowCommandOptions flow_options;
  std::string flow_group = "slq", flow_csv;
  bool flow_plain = false;
  auto* flow = app.add_subcommand("flow", "integrate the negative gradient flow of ||m_G||^2");
  flow->add_option("files", flow_paths, "tuple documents")->required();
  flow->add_option("--group", flow_group, "glq | slq | full (default slq)");
  flow->add_option("--steps", flow_options.config.max_steps, "maximum number of steps");
  flow->add_option("--step", flow_options.config.step, "dimensionless step size");
  flow->add_option("--tol", flow_options.config.conv_tol, "convergence tolerance");
  flow->add_option("--blowdown-tol", flow_options.config.blowdown_tol,
                   "norm-collapse threshold (plain mode)");
  flow->add_option("--detect-tol", flow_options.detect_tol, "limit classification tolerance");
  auto* projected_flag =
      flow->add_flag("--projected", "constrain the flow to the sphere ||C|| = ||C0|| (default)");
  flow->add_flag("--plain", flow_plain, "unconstrained flow")->excludes(projected_flag);
  flow->add_option("--csv", flow_csv, "write the trace as CSV (single input only)");

  // catalog
  std::string catalog_family, catalog_out;
  std::vector<std::string> catalog_params;
  auto* catalog = app.add_subcommand("catalog", "emit a catalogue family tuple");
  catalog->add_option("family", catalog_family,
                      "heisenberg | a1 | b_basis | will | example2 | example3")->required();
  catalog->add_option("--param", catalog_params, "family parameter key=value");
  catalog->add_option("--out", catalog_out, "output path (default: stdout)");

  // tune
  std::string tune_family, tune_free, tune_bounds;
  std::vector<std::string> tune_params;
  double tune_tol = 1e-9;
  auto* tune = app.add_subcommand("tune", "tune one free parameter to the rym soliton condition");
  tune->add_option("family", tune_family, "catalogue family")->required();
  tune->add_option("--param", tune_params, "fixed parameter key=value");
  tune->add_option("--free", tune_free, "name of the free parameter")->required();
  tune->add_option("--bounds", tune_bounds, "search interval lo:hi")->required();
  tune->add_option("--tol", tune_tol, "acceptable residual");

  // concat
  std::string concat_a, concat_b, concat_out;
  auto* concat = app.add_subcommand("concat", "block-diagonal concatenation of two tuples");
  concat->add_option("left", concat_a, "left tuple document")->required();
  concat->add_option("right", concat_b, "right tuple document")->required();
  concat->add_option("--out", concat_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    nilsol::CommandResult result;
    if (*analyze) {
      result = nilsol::cmd_analyze(analyze_path, analyze_tol);
    } else if (*certify) {
      std::optional<bool> expect;
      if (!certify_expect.empty()) {
        if (certify_expect == "true")
          expect = true;
        else if (certify_expect == "false")
          expect = false;
        else
          throw nilsol::ParameterError("--expect must be 'true' or 'false'");
      }
      result = nilsol::cmd_certify(certify_path, certify_mode, certify_tol, expect);
    } else if (*flow) {
      flow_options.config.group = parse_group(flow_group);
      flow_options.config.projected = !flow_plain;
      if (!flow_csv.empty()) flow_options.csv_path = flow_csv;
      result = nilsol::cmd_flow(flow_paths, flow_options);
    } else if (*catalog) {
      result = nilsol::cmd_catalog(
          catalog_family, parse_params(catalog_params),
          catalog_out.empty() ? std::nullopt : std::optional<std::string>(catalog_out));
    } else if (*tune) {
      const auto [lo, hi] = parse_bounds(tune_bounds);
      result = nilsol::cmd_tune(tune_family, parse_params(tune_params), tune_free, lo, hi,
                                tune_tol);
    } else if (*concat) {
      result = nilsol::cmd_concat(
          concat_a, concat_b,
          concat_out.empty() ? std::nullopt : std::optional<std::string>(concat_out));
    }
    emit(result, output);
    return result.exit_code;
  } catch (const nilsol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
