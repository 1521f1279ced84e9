#include "nilsol/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "nilsol/actions.hpp"
#include "nilsol/catalogue.hpp"
#include "nilsol/io.hpp"

namespace nilsol {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool use_color() {
  const char* v = std::getenv("NILSOL_COLOR");
  return v != nullptr && std::string(v) == "1";
}

std::string verdict_word(bool verdict) {
  const char* word = verdict ? "PASS" : "FAIL";
  if (!use_color()) return word;
  return verdict ? std::string("\x1b[32m") + word + "\x1b[0m"
                 : std::string("\x1b[31m") + word + "\x1b[0m";
}

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

ordered_json certificate_to_json(const Certificate& cert) {
  ordered_json j;
  j["mode"] = to_string(cert.mode);
  j["verdict"] = cert.verdict;
  j["residual"] = cert.residual;
  j["tol"] = cert.tol;
  j["r"] = cert.r;
  if (cert.lambda) j["lambda"] = *cert.lambda;
  if (cert.derivation) {
    j["derivation_norm"] = cert.derivation->norm();
    j["derivation"] = matrix_to_json(*cert.derivation);
  }
  if (cert.s) j["s"] = *cert.s;
  return j;
}

std::string certificate_to_text(const Certificate& cert) {
  std::ostringstream os;
  os << "  " << to_string(cert.mode);
  for (std::size_t n = std::string(to_string(cert.mode)).size(); n < 14; ++n) os << ' ';
  os << verdict_word(cert.verdict) << "  residual " << fmt(cert.residual) << " (tol "
     << fmt(cert.tol) << ")";
  if (cert.mode != CertMode::Gfi) os << "  r " << fmt(cert.r);
  if (cert.lambda) os << "  lambda " << fmt(*cert.lambda);
  if (cert.derivation) os << "  ||D|| " << fmt(cert.derivation->norm());
  if (cert.s) os << "  s " << fmt(*cert.s);
  return os.str();
}

ordered_json validation_to_json(const ValidationReport& report) {
  ordered_json j;
  j["is_skew"] = report.is_skew;
  j["effective_p"] = report.effective_p;
  j["is_regular"] = report.is_regular;
  j["messages"] = report.messages;
  return j;
}

ordered_json fingerprint_to_json(const Fingerprint& fp) {
  ordered_json j;
  j["p"] = fp.p;
  j["q"] = fp.q;
  j["glq_spectrum"] = vector_to_json(fp.glq_spectrum);
  j["glp_spectrum"] = vector_to_json(fp.glp_spectrum);
  j["norm"] = fp.norm;
  return j;
}

ordered_json input_to_json(const std::string& path, const StructureTuple& t) {
  ordered_json j;
  j["path"] = path;
  if (!t.label().empty()) j["label"] = t.label();
  j["q"] = t.q();
  j["p"] = t.p();
  j["norm"] = t.norm();
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string provenance_line(const std::string& family,
                            const std::map<std::string, double>& parameters) {
  std::ostringstream os;
  os << "nilsol catalog " << family;
  for (const auto& kv : parameters) os << " --param " << kv.first << "=" << fmt(kv.second);
  return os.str();
}

}  // namespace

CommandResult cmd_analyze(const std::string& path, double tol) {
  const StructureTuple t = load_tuple(path);
  const ValidationReport report = validate(t);

  ordered_json j;
  j["command"] = "analyze";
  j["input"] = input_to_json(path, t);
  j["validation"] = validation_to_json(report);
  j["type"] = {{"p", report.effective_p}, {"q", t.q()}};

  std::ostringstream text;
  text << "analyze " << path << "\n";
  if (!t.label().empty()) text << "  label: " << t.label() << "\n";
  text << "  type: (" << report.effective_p << ", " << t.q() << ")  [p = " << t.p()
       << ", effective p = " << report.effective_p << ", "
       << (report.is_regular ? "regular" : "NOT regular") << "]\n";
  text << "  skew: " << (report.all_skew() ? "ok" : "FAILED") << " (defect "
       << fmt(t.skewness_defect()) << ")\n";
  for (const std::string& m : report.messages) text << "  note: " << m << "\n";
  text << "  norm: " << fmt(t.norm()) << "\n";

  const bool zero = t.squared_norm() == 0.0;
  if (report.all_skew() && !zero) {
    const Fingerprint fp = fingerprint(t);
    j["fingerprint"] = fingerprint_to_json(fp);
    text << "  fingerprint:\n";
    text << "    glq spectrum:";
    for (int i = 0; i < fp.glq_spectrum.size(); ++i) text << " " << fmt(fp.glq_spectrum(i));
    text << "\n    glp spectrum:";
    for (int i = 0; i < fp.glp_spectrum.size(); ++i) text << " " << fmt(fp.glp_spectrum(i));
    text << "\n";

    ordered_json certs;
    text << "  certificates:\n";
    for (const Certificate& cert :
         {certify_rym(t, tol), certify_ricci(t, tol), certify_gfi(t, tol),
          certify_ricci_gfi(t, tol)}) {
      certs[to_string(cert.mode)] = certificate_to_json(cert);
      text << certificate_to_text(cert) << "\n";
    }
    j["certificates"] = std::move(certs);
  } else {
    const char* reason = zero ? "zero tuple" : "tuple is not skew-symmetric";
    j["certificates_skipped"] = reason;
    text << "  certificates skipped: " << reason << "\n";
  }

  return {0, text.str(), dump(j)};
}

CommandResult cmd_certify(const std::string& path, const std::string& mode, double tol,
                          std::optional<bool> expect) {
  const StructureTuple t = load_tuple(path);
  const CertMode m = cert_mode_from_string(mode);
  Certificate cert;
  switch (m) {
    case CertMode::Rym: cert = certify_rym(t, tol); break;
    case CertMode::Ricci: cert = certify_ricci(t, tol); break;
    case CertMode::Gfi: cert = certify_gfi(t, tol); break;
    case CertMode::RicciGfi: cert = certify_ricci_gfi(t, tol); break;
  }

  ordered_json j;
  j["command"] = "certify";
  j["input"] = input_to_json(path, t);
  j["certificate"] = certificate_to_json(cert);

  std::ostringstream text;
  text << "certify " << path << "\n" << certificate_to_text(cert) << "\n";

  int exit_code = 0;
  if (expect) {
    j["expected"] = *expect;
    j["matched"] = cert.verdict == *expect;
    if (cert.verdict != *expect) {
      exit_code = 1;
      text << "  expected verdict " << (*expect ? "true" : "false") << ", got "
           << (cert.verdict ? "true" : "false") << "\n";
    }
  }
  return {exit_code, text.str(), dump(j)};
}

namespace {

struct FlowRun {
  std::string path;
  StructureTuple input = StructureTuple::zero(1, 1);
  FlowTrace trace;
  LimitReport limit;
  double detect_tol = 0.0;
};

FlowRun run_one_flow(const std::string& path, const FlowCommandOptions& options) {
  FlowRun run;
  run.path = path;
  run.input = load_tuple(path);
  run.trace = integrate(run.input, options.config);
  run.limit = detect_limit(run.trace, options.detect_tol);
  run.detect_tol = options.detect_tol;
  return run;
}

// A numerical flow cannot prove orbit closedness; it only gathers evidence.
std::string orbit_closure_note(const FlowRun& run) {
  if (run.trace.outcome == FlowOutcome::Degenerated)
    return "norm collapse: the orbit closure appears to contain 0 (orbit not closed)";
  if (run.trace.outcome == FlowOutcome::ConvergedMinimal && run.limit.rank_preserved)
    return "minimal limit with preserved rank: evidence for a closed orbit";
  return "inconclusive";
}

ordered_json flow_run_to_json(const FlowRun& run) {
  ordered_json j;
  j["input"] = input_to_json(run.path, run.input);
  j["outcome"] = to_string(run.trace.outcome);
  j["steps"] = run.trace.steps_taken;
  j["final_norm"] = run.trace.final_state.norm();
  j["norm_ratio"] = run.trace.final_state.norm() / run.trace.initial_norm;
  ordered_json limit;
  limit["class"] = to_string(run.limit.limit);
  limit["tol"] = run.detect_tol;
  limit["minimality_residual"] = run.limit.minimality_residual;
  limit["distinguished_residual"] = run.limit.distinguished_residual;
  limit["scalar_moment_residual"] = run.limit.scalar_moment_residual;
  limit["rank_preserved"] = run.limit.rank_preserved;
  limit["effective_p_start"] = run.limit.effective_p_start;
  limit["effective_p_end"] = run.limit.effective_p_end;
  j["limit"] = std::move(limit);
  j["orbit_closure_heuristic"] = orbit_closure_note(run);
  j["samples_recorded"] = run.trace.samples.size();
  return j;
}

}  // namespace

CommandResult cmd_flow(const std::vector<std::string>& paths, const FlowCommandOptions& options) {
  if (paths.empty()) throw ParameterError("flow: at least one input file is required");
  if (options.csv_path && paths.size() != 1)
    throw ParameterError("flow: --csv needs exactly one input file");

  std::vector<FlowRun> runs;
  if (paths.size() == 1) {
    runs.push_back(run_one_flow(paths[0], options));
  } else {
    // Independent integrations; evaluate concurrently, report in input order.
    std::vector<std::future<FlowRun>> futures;
    futures.reserve(paths.size());
    for (const std::string& path : paths)
      futures.push_back(std::async(std::launch::async, run_one_flow, path, options));
    for (auto& f : futures) runs.push_back(f.get());
  }

  ordered_json j;
  j["command"] = "flow";
  ordered_json cfg;
  cfg["group"] = to_string(options.config.group);
  cfg["step"] = options.config.step;
  cfg["max_steps"] = options.config.max_steps;
  cfg["conv_tol"] = options.config.conv_tol;
  cfg["projected"] = options.config.projected;
  cfg["blowdown_tol"] = options.config.blowdown_tol;
  j["config"] = std::move(cfg);

  std::ostringstream text;
  ordered_json sections = ordered_json::array();
  for (const FlowRun& run : runs) {
    sections.push_back(flow_run_to_json(run));
    text << "flow " << run.path << " [" << to_string(options.config.group) << ", "
         << (options.config.projected ? "projected" : "plain") << "]\n";
    text << "  outcome: " << to_string(run.trace.outcome) << " after " << run.trace.steps_taken
         << " steps\n";
    text << "  limit: " << to_string(run.limit.limit)
         << "  minimality residual " << fmt(run.limit.minimality_residual)
         << ", distinguished residual " << fmt(run.limit.distinguished_residual)
         << ", scalar moment residual " << fmt(run.limit.scalar_moment_residual) << "\n";
    text << "  rank: " << run.limit.effective_p_start << " -> " << run.limit.effective_p_end
         << (run.limit.rank_preserved ? " (preserved)" : " (DROPPED)") << "\n";
    text << "  norm ratio: " << fmt(run.trace.final_state.norm() / run.trace.initial_norm)
         << "\n";
    text << "  orbit closure (HEURISTIC): " << orbit_closure_note(run) << "\n";
  }
  j["runs"] = std::move(sections);

  if (options.csv_path) {
    std::ofstream csv(*options.csv_path, std::ios::binary);
    if (!csv) throw Error("cannot open '" + *options.csv_path + "' for writing");
    write_trace_csv(runs.front().trace, csv);
    j["csv"] = *options.csv_path;
    text << "  trace csv: " << *options.csv_path << "\n";
  }

  return {0, text.str(), dump(j)};
}

CommandResult cmd_catalog(const std::string& family,
                          const std::map<std::string, double>& parameters,
                          const std::optional<std::string>& out_path) {
  const StructureTuple t = build({family, parameters});
  const std::string document = serialize_tuple(t, provenance_line(family, parameters));

  ordered_json j;
  j["command"] = "catalog";
  j["family"] = family;
  j["parameters"] = parameters;
  j["q"] = t.q();
  j["p"] = t.p();
  j["label"] = t.label();

  std::string text;
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw Error("cannot open '" + *out_path + "' for writing");
    out << document;
    j["out"] = *out_path;
    text = "wrote " + t.label() + " [type (" + std::to_string(t.p()) + "," +
           std::to_string(t.q()) + ")] to " + *out_path + "\n";
  } else {
    text = document;  // print the document itself so output can be piped
  }
  return {0, text, dump(j)};
}

CommandResult cmd_tune(const std::string& family,
                       const std::map<std::string, double>& parameters,
                       const std::string& free_name, double lo, double hi, double tol) {
  FamilySpec spec{family, parameters};
  spec.parameters.erase(free_name);

  ordered_json j;
  j["command"] = "tune";
  j["family"] = family;
  j["parameters"] = spec.parameters;
  j["free"] = free_name;
  j["bounds"] = {lo, hi};
  j["tol"] = tol;

  std::ostringstream text;
  text << "tune " << family << " over " << free_name << " in [" << fmt(lo) << ", " << fmt(hi)
       << "]\n";
  try {
    const TuneResult result = tune_parameter(spec, free_name, lo, hi, tol);
    j["found"] = true;
    j["value"] = result.value;
    j["residual"] = result.residual;
    j["evaluations"] = result.evaluations;

    FamilySpec tuned = spec;
    tuned.parameters[free_name] = result.value;
    const Certificate cert = certify_rym(build(tuned), tol);
    j["certificate"] = certificate_to_json(cert);

    text << "  " << free_name << " = " << fmt(result.value) << "  (residual "
         << fmt(result.residual) << ", " << result.evaluations << " evaluations)\n";
    text << certificate_to_text(cert) << "\n";
    return {0, text.str(), dump(j)};
  } catch (const TuneError& e) {
    j["found"] = false;
    j["best_value"] = e.best_value;
    j["best_residual"] = e.best_residual;
    text << "  not found: " << e.what() << "\n";
    return {1, text.str(), dump(j)};
  }
}

CommandResult cmd_concat(const std::string& path_a, const std::string& path_b,
                         const std::optional<std::string>& out_path) {
  const StructureTuple a = load_tuple(path_a);
  const StructureTuple b = load_tuple(path_b);
  const StructureTuple t = concat(a, b);
  const std::string document =
      serialize_tuple(t, "nilsol concat " + path_a + " " + path_b);

  ordered_json j;
  j["command"] = "concat";
  j["inputs"] = {path_a, path_b};
  j["q"] = t.q();
  j["p"] = t.p();

  std::string text;
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw Error("cannot open '" + *out_path + "' for writing");
    out << document;
    j["out"] = *out_path;
    text = "wrote type (" + std::to_string(t.p()) + "," + std::to_string(t.q()) + ") tuple to " +
           *out_path + "\n";
  } else {
    text = document;
  }
  return {0, text, dump(j)};
}

}  // namespace nilsol
