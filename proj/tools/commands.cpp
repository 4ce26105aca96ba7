// Copyright 2026 The Frame Lab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "frame_lab/erasure.hpp"
#include "frame_lab/optimality.hpp"
#include "reference_frames.hpp"

namespace frame_lab::cli {

namespace {

constexpr const char* kToolName = "frame_lab";
constexpr const char* kToolVersion = "1.0.0";

Json report_header(const std::string& command, const ResolvedInput* input) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  if (input) {
    Json in = input_to_json(*input);
    j["input_digest"] = digest_string(emit_json(in));
    j["input"] = std::move(in);
    j["warnings"] = input->warnings;
  }
  return j;
}

std::vector<MeasureKind> selected_kinds(const MeasureSelection& s) {
  std::vector<MeasureKind> kinds;
  if (s.spectral) kinds.push_back(MeasureKind::kSpectral);
  if (s.norm) kinds.push_back(MeasureKind::kNorm);
  return kinds;
}

/// Runs a certificate that may reject its input; rejections become a certificate with
/// a note instead of aborting the whole report.
template <typename Fn>
OptimalityCertificate guarded(ConditionId id, Fn&& run,
                              std::optional<bool> conclusion_on_rejection = std::nullopt) {
  try {
    return run();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kNotInDelta1:
      case ErrorCode::kDegenerateDenominator:
      case ErrorCode::kHypothesisFailed:
      case ErrorCode::kNotParseval: {
        OptimalityCertificate cert;
        cert.id = id;
        cert.conclusion = conclusion_on_rejection;
        cert.notes.push_back(std::string("not applicable: ") + e.what());
        return cert;
      }
      default:
        throw;
    }
  }
}

Json with_partition(const PartitionCertificate& pc) {
  Json j = to_json(pc.certificate);
  j["partition"] = to_json(pc.partition);
  return j;
}

template <typename Scalar>
Frame<Scalar> frame_of(const FrameFile& file) {
  if constexpr (is_complex_v<Scalar>)
    return Frame<Scalar>(file.synthesis);
  else
    return Frame<Scalar>(file.synthesis.real());
}

template <typename Scalar>
Json analyze_impl(const Frame<Scalar>& f, const ProbabilityProfile& profile, const AnalyzeOptions& options) {
  Json j;
  const auto canonical = canonical_dual(f);
  const double tol = options.tolerance;

  Json frame;
  frame["lower_bound"] = double(f.lower_bound());
  frame["upper_bound"] = double(f.upper_bound());
  frame["tight"] = f.is_tight(tol);
  frame["parseval_defect"] = double(parseval_defect(f));
  j["frame"] = std::move(frame);
  j["weights"] = to_json(profile);

  Json dual;
  dual["vectors"] = vectors_to_json(canonical.dual().synthesis());
  dual["residual"] = double(dual_residual(f, canonical.dual()));
  j["canonical_dual"] = std::move(dual);

  // per-index one-erasure values of the canonical pair
  std::vector<double> spectral_one, norm_one;
  for (Index i = 0; i < f.count(); ++i) {
    spectral_one.push_back(profile.weight(i) * std::abs(canonical.cross_gram()(i, i)));
    norm_one.push_back(profile.weight(i) * double(f.vector(i).norm()) * double(canonical.dual().vector(i).norm()));
  }
  auto all_one = [tol](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [tol](double x) { return std::abs(x - 1) <= tol; });
  };
  Json diag;
  diag["spectral_one_erasure"] = spectral_one;
  diag["spectral_all_one"] = all_one(spectral_one);
  diag["norm_one_erasure"] = norm_one;
  diag["norm_all_one"] = all_one(norm_one);
  j["diagnostics"] = std::move(diag);

  Json measures = Json::array();
  for (Index m : options.m)
    for (MeasureKind kind : selected_kinds(options.measures))
      measures.push_back(to_json(erasure_measure(canonical, profile, m, kind)));
  j["measures"] = std::move(measures);

  if (f.count() >= 2)
    j["optimal_values"] = to_json(optimal_values(profile));
  else
    j["optimal_values"] = nullptr;

  Json certs = Json::array();
  certs.push_back(to_json(is_one_uniform(canonical, profile, tol)));
  certs.push_back(to_json(is_two_uniform(canonical, profile, tol)));
  certs.push_back(to_json(delta1_membership(canonical, profile, tol)));
  certs.push_back(to_json(guarded(
      ConditionId::kSpectralOptimalPairTwo, [&] { return delta2_membership(canonical, profile, tol); }, false)));
  certs.push_back(with_partition(canonical_spectral_certificate(f, profile, tol)));
  certs.push_back(with_partition(canonical_norm_certificate(f, profile, tol)));
  certs.push_back(to_json(canonical_two_erasure_certificate(f, profile, tol)));
  auto prediction = detail::two_erasure_prediction_certificate(canonical, profile, tol);
  if (!prediction.all_hold()) prediction.notes.push_back("hypotheses fail: no prediction emitted");
  certs.push_back(to_json(prediction));
  certs.push_back(to_json(gamma1_membership(canonical, profile, tol)));
  certs.push_back(to_json(is_probabilistic_uniform_parseval(f, profile, tol)));
  certs.push_back(to_json(guarded(ConditionId::kParsevalEquivalence,
                                  [&] { return parseval_equivalence_report(f, profile, tol, options.search); })));
  j["certificates"] = std::move(certs);
  return j;
}

template <typename Scalar>
Json search_impl(const Frame<Scalar>& f, const ProbabilityProfile& profile, const SearchCommandOptions& options) {
  Json results = Json::array();
  for (MeasureKind kind : selected_kinds(options.measures)) {
    const auto r = minimize_one_erasure(f, profile, kind, options.search);
    Json j = to_json(r, options.search.method);
    Verdict v = r.gap > options.gap_tolerance ? Verdict::kNotOptimal
                                              : (r.converged ? Verdict::kOptimal : Verdict::kInconclusive);
    j["canonical_verdict"] = to_string(v);
    j["gap_tolerance"] = options.gap_tolerance;
    results.push_back(std::move(j));
  }
  return results;
}

template <typename Scalar>
Json simulate_impl(const Frame<Scalar>& f, const ProbabilityProfile& profile, const SimulateOptions& options) {
  const auto canonical = canonical_dual(f);
  Json runs = Json::array();
  for (Index m : options.m)
    runs.push_back(to_json(simulate_erasure_channel(canonical, profile, m, options.trials, options.seed, options.bins)));
  return runs;
}

template <typename Fn>
Json dispatch(const ResolvedInput& input, Fn&& fn) {
  const ProbabilityProfile profile(input.probabilities, input.frame.dim);
  if (input.frame.complex_field) return fn(frame_of<cplx>(input.frame), profile);
  return fn(frame_of<double>(input.frame), profile);
}

}  // namespace

MeasureSelection measure_selection_from_string(const std::string& s) {
  if (s == "both") return {true, true};
  const auto kind = measure_kind_from_string(s);
  return {kind == MeasureKind::kSpectral, kind == MeasureKind::kNorm};
}

CommandOutput cmd_analyze(const ResolvedInput& input, const AnalyzeOptions& options) {
  CommandOutput out;
  out.report = report_header("analyze", &input);
  const Json body = dispatch(input, [&](const auto& f, const ProbabilityProfile& p) { return analyze_impl(f, p, options); });
  for (const auto& [k, v] : body.items()) out.report[k] = v;
  return out;
}

CommandOutput cmd_search(const ResolvedInput& input, const SearchCommandOptions& options) {
  CommandOutput out;
  out.report = report_header("search", &input);
  Json params;
  params["method"] = to_string(options.search.method);
  params["restarts"] = options.search.restarts;
  params["max_iterations"] = options.search.max_iterations;
  params["tolerance"] = options.search.tolerance;
  params["seed"] = options.search.seed;
  out.report["parameters"] = std::move(params);
  out.report["search"] =
      dispatch(input, [&](const auto& f, const ProbabilityProfile& p) { return search_impl(f, p, options); });
  for (const auto& r : out.report["search"]) {
    if (r["unique_dual"].get<bool>()) out.messages.push_back(r["notice"].get<std::string>());
    if (!r["converged"].get<bool>())
      out.messages.push_back(std::string("warning: ") + r["measure"].get<std::string>() +
                             " search did not converge across restarts");
  }
  return out;
}

CommandOutput cmd_simulate(const ResolvedInput& input, const SimulateOptions& options) {
  if (options.trials < 1) throw Error(ErrorCode::kInvalidArgument, "--trials must be at least 1");
  CommandOutput out;
  out.report = report_header("simulate", &input);
  out.report["simulation"] =
      dispatch(input, [&](const auto& f, const ProbabilityProfile& p) { return simulate_impl(f, p, options); });
  return out;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::kEqual: return "==";
    case Relation::kAtMost: return "<=";
    case Relation::kAtLeast: return ">=";
  }
  return "?";
}

bool ExampleCheck::passed() const {
  if (!std::isfinite(actual)) return false;
  switch (relation) {
    case Relation::kEqual: return std::abs(actual - expected) <= tolerance;
    case Relation::kAtMost: return actual <= expected + tolerance;
    case Relation::kAtLeast: return actual >= expected - tolerance;
  }
  return false;
}

std::vector<ExampleCheck> reference_example_table() {
  std::vector<ExampleCheck> t;
  auto add = [&t](const char* example, std::string name, Relation rel, double expected, double actual,
                  double tol = 1e-9) { t.push_back({example, std::move(name), rel, expected, tol, actual}); };
  const SearchOptions search;

  {
    const char* ex = "oblique";
    const auto f = reference::oblique_frame();
    const auto p = reference::oblique_profile();
    const auto canonical = canonical_dual(f);
    const auto improved = reference::oblique_improved_pair();
    const double q[] = {4.0 / 3, 4.0 / 3, 2.0};
    const double diag[] = {8.0 / 9, 8.0 / 9, 4.0 / 3};
    const double g[3][2] = {{2.0 / 3, -1.0 / 3}, {-1.0 / 3, 2.0 / 3}, {1.0 / 3, 1.0 / 3}};
    for (int i = 0; i < 3; ++i) add(ex, "q[" + std::to_string(i) + "]", Relation::kEqual, q[i], p.weight(i));
    double dual_dev = 0;
    for (int i = 0; i < 3; ++i)
      for (int r = 0; r < 2; ++r) dual_dev = std::max(dual_dev, std::abs(canonical.dual().synthesis()(r, i) - g[i][r]));
    add(ex, "canonical dual entries, max deviation", Relation::kEqual, 0.0, dual_dev);
    for (int i = 0; i < 3; ++i)
      add(ex, "q_i |<f_i, S^-1 f_i>| [" + std::to_string(i) + "]", Relation::kEqual, diag[i],
          p.weight(i) * std::abs(canonical.cross_gram()(i, i)));
    add(ex, "R1 canonical", Relation::kEqual, 4.0 / 3, spectral_measure(canonical, p, 1).value);
    add(ex, "R1 improved dual", Relation::kEqual, 10.0 / 9, spectral_measure(improved, p, 1).value);
    add(ex, "d1 canonical", Relation::kEqual, 4.0 / 3, norm_measure(canonical, p, 1).value);
    add(ex, "d1 improved dual", Relation::kEqual, 2 * std::sqrt(26.0) / 9, norm_measure(improved, p, 1).value);
    const auto sc = canonical_spectral_certificate(f, p);
    const auto nc = canonical_norm_certificate(f, p);
    add(ex, "spectral partition dim(H1 ^ H2)", Relation::kEqual, 1, double(sc.partition.dim_intersection));
    add(ex, "norm partition dim(H1 ^ H2)", Relation::kEqual, 1, double(nc.partition.dim_intersection));
    const auto rs = minimize_spectral_one(f, p, search);
    const auto rn = minimize_norm_one(f, p, search);
    add(ex, "spectral search best value", Relation::kAtMost, 10.0 / 9, rs.best_value, 1e-6);
    add(ex, "spectral search gap", Relation::kAtLeast, 4.0 / 3 - 10.0 / 9, rs.gap, 1e-6);
    add(ex, "norm search best value", Relation::kAtMost, 2 * std::sqrt(26.0) / 9, rn.best_value, 1e-6);
  }
  {
    const char* ex = "tight";
    const auto f = reference::tight_frame();
    const auto p = reference::tight_profile();
    const auto canonical = canonical_dual(f);
    const double q[] = {3.0, 3.0, 1.5, 1.5};
    add(ex, "lower frame bound", Relation::kEqual, 3.0, f.lower_bound());
    add(ex, "upper frame bound", Relation::kEqual, 3.0, f.upper_bound());
    for (int i = 0; i < 4; ++i) add(ex, "q[" + std::to_string(i) + "]", Relation::kEqual, q[i], p.weight(i));
    for (int i = 0; i < 4; ++i) {
      add(ex, "q_i |<f_i, S^-1 f_i>| [" + std::to_string(i) + "]", Relation::kEqual, 1.0,
          p.weight(i) * std::abs(canonical.cross_gram()(i, i)));
      add(ex, "q_i ||f_i|| ||S^-1 f_i|| [" + std::to_string(i) + "]", Relation::kEqual, 1.0,
          p.weight(i) * f.vector(i).norm() * canonical.dual().vector(i).norm());
    }
    const auto sc = canonical_spectral_certificate(f, p);
    const auto nc = canonical_norm_certificate(f, p);
    add(ex, "spectral partition dim H2", Relation::kEqual, 0, double(sc.partition.dim_h2));
    add(ex, "spectral certificate holds", Relation::kEqual, 1, sc.certificate.conclusion.value_or(false) ? 1 : 0);
    add(ex, "norm partition dim H2", Relation::kEqual, 0, double(nc.partition.dim_h2));
    add(ex, "norm certificate holds", Relation::kEqual, 1, nc.certificate.conclusion.value_or(false) ? 1 : 0);
    add(ex, "norm certificate unique", Relation::kEqual, 1, nc.certificate.detail("unique").value_or(0));
    add(ex, "spectral search gap", Relation::kAtMost, 0, minimize_spectral_one(f, p, search).gap, 1e-6);
    add(ex, "norm search gap", Relation::kAtMost, 0, minimize_norm_one(f, p, search).gap, 1e-6);
  }
  return t;
}

CommandOutput run_examples(const std::vector<ExampleCheck>& table) {
  CommandOutput out;
  out.report = report_header("examples", nullptr);
  Json checks = Json::array();
  bool all = true;
  for (const auto& c : table) {
    const bool ok = c.passed();
    all = all && ok;
    checks.push_back(Json{{"example", c.example},
                          {"check", c.name},
                          {"relation", to_string(c.relation)},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"tolerance", c.tolerance},
                          {"passed", ok}});
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-8s %-40s actual %.12g %s %.12g", ok ? "PASS" : "FAIL", c.example.c_str(),
                  c.name.c_str(), c.actual, to_string(c.relation), c.expected);
    out.messages.push_back(line);
  }
  out.report["checks"] = std::move(checks);
  out.report["passed"] = all;
  out.exit_code = all ? kExitOk : kExitMismatch;
  return out;
}

CommandOutput cmd_examples() { return run_examples(reference_example_table()); }

namespace {

std::vector<Index> parse_m_list(const std::string& s) {
  std::vector<Index> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(',', start);
    const std::string item = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size())
      throw Error(ErrorCode::kInvalidArgument, "--m expects comma-separated integers, got '" + s + "'");
    out.push_back(static_cast<Index>(v));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

void write_output(const CommandOutput& result, const std::string& out_path, std::ostream& out, std::ostream& err) {
  for (const auto& w : result.report.value("warnings", Json::array())) err << "warning: " << w.get<std::string>() << "\n";
  for (const auto& m : result.messages) err << m << "\n";
  const std::string text = emit_json(result.report);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + out_path + "'");
    f << text;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probability-weighted erasure analysis of finite frames and their duals", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string frame_path, prob_path, out_path, measure = "both", m_list = "1,2", method = "barrier";
  double tol = tolerance::kCertificate, gap_tol = 1e-6;
  SearchOptions search;
  SimulateOptions sim;
  std::string sim_m = "1";

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("frame", frame_path, "frame file (JSON)")->required();
    sub->add_option("-p,--probabilities", prob_path, "separate probability file; overrides the frame file");
    sub->add_option("-o,--out", out_path, "write the report here instead of stdout");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--restarts", search.restarts, "random restarts besides the canonical start")->capture_default_str();
    sub->add_option("--seed", search.seed, "seed for the random starts")->capture_default_str();
    sub->add_option("--max-iterations", search.max_iterations, "iteration budget per start")->capture_default_str();
    sub->add_option("--method", method, "barrier or subgradient")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "measures and optimality certificates of the canonical dual");
  add_input(analyze);
  analyze->add_option("--m", m_list, "comma-separated erasure counts")->capture_default_str();
  analyze->add_option("--measure", measure, "spectral, norm or both")->capture_default_str();
  analyze->add_option("--tol", tol, "certificate tolerance")->capture_default_str();
  add_search(analyze);

  auto* search_cmd = app.add_subcommand("search", "search the duals for the smallest one-erasure measure");
  add_input(search_cmd);
  search_cmd->add_option("--measure", measure, "spectral, norm or both")->capture_default_str();
  search_cmd->add_option("--gap-tol", gap_tol, "gap below which the canonical dual counts as optimal")
      ->capture_default_str();
  add_search(search_cmd);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo erasure channel on the canonical dual");
  add_input(simulate);
  simulate->add_option("--m", sim_m, "comma-separated erasure counts")->capture_default_str();
  simulate->add_option("--trials", sim.trials, "number of trials")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  simulate->add_option("--bins", sim.bins, "histogram bins")->capture_default_str();

  auto* examples = app.add_subcommand("examples", "reproduce the built-in reference frames");
  examples->add_option("-o,--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const std::optional<std::string> prob = prob_path.empty() ? std::nullopt : std::optional<std::string>(prob_path);
    CommandOutput result;
    if (examples->parsed()) {
      result = cmd_examples();
    } else {
      search.method = search_method_from_string(method);
      const auto input = load_input(frame_path, prob);
      if (analyze->parsed()) {
        AnalyzeOptions o;
        o.m = parse_m_list(m_list);
        o.measures = measure_selection_from_string(measure);
        o.tolerance = tol;
        o.search = search;
        result = cmd_analyze(input, o);
      } else if (search_cmd->parsed()) {
        SearchCommandOptions o;
        o.measures = measure_selection_from_string(measure);
        o.search = search;
        o.gap_tolerance = gap_tol;
        result = cmd_search(input, o);
      } else {
        sim.m = parse_m_list(sim_m);
        result = cmd_simulate(input, sim);
      }
    }
    write_output(result, out_path, out, err);
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_input_error() ? kExitInput : kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace frame_lab::cli
