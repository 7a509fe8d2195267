#include "nls/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "nls/field_io.hpp"
#include "nls/harness.hpp"

namespace nls {

namespace {

struct Options {
  std::optional<double> gamma;
  double tau = 0x1.0p-12;
  std::optional<int> n_modes;
  double t_final = 1.0;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::optional<int> k_max;
  std::string reference = "fine-tau";
  std::string output;
  std::string format;
  std::string baseline = "none";
  std::vector<double> tau_list{0x1.0p-6, 0x1.0p-7, 0x1.0p-8, 0x1.0p-9, 0x1.0p-10, 0x1.0p-11};
  std::vector<int> n_list{16, 32, 64, 128, 256, 512};
  int n_ref = 0;
  int trials = 20;
  std::string experiment_id;
};

const std::map<std::string, Integrator> kBaselines{{"none", Integrator::kLowRegularity},
                                                   {"lie", Integrator::kLieSplitting}};

// Result sink: the --output file when given, otherwise `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw ConfigurationError("cannot open output file '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void add_common(CLI::App* sub, Options& o) {
  // Consumed by apply_config_file before parsing; registered for the help text.
  sub->add_option("--config", "Flat key=value file with option defaults; command-line flags take precedence");
  sub->add_option("--output,-o", o.output, "Write results to this file instead of stdout");
}

void add_gamma(CLI::App* sub, Options& o) {
  sub->add_option("--gamma", o.gamma, "Sobolev index of the random initial data");
}

void add_seeds(CLI::App* sub, Options& o) {
  sub->add_option("--seed,--seeds", o.seeds, "Random seeds (comma separated)")->delimiter(',');
}

void add_reference(CLI::App* sub, Options& o) {
  sub->add_option("--reference", o.reference, "Reference solution")
      ->check(CLI::IsMember({"fine-tau", "plane-wave"}))
      ->capture_default_str();
}

void add_baseline(CLI::App* sub, Options& o) {
  sub->add_option("--baseline", o.baseline, "Integrator: none (low-regularity scheme) or lie (Lie splitting)")
      ->check(CLI::IsMember({"none", "lie"}))
      ->capture_default_str();
}

void add_format(CLI::App* sub, Options& o, const std::string& fallback) {
  sub->add_option("--format", o.format, "Output format (default " + fallback + ")")
      ->check(CLI::IsMember({"csv", "json"}));
}

double require_gamma(const Options& o, bool needed) {
  if (o.gamma) return *o.gamma;
  if (needed) throw CLI::RequiredError("--gamma");
  return 1.0;
}

ExperimentConfig sweep_config(const Options& o, ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.experiment_id = o.experiment_id;
  c.reference = parse_reference_kind(o.reference);
  c.gamma = require_gamma(o, c.reference == ReferenceKind::kFineTau);
  c.seeds = o.seeds;
  c.t_final = o.t_final;
  c.k_max = o.k_max;
  c.integrator = kBaselines.at(o.baseline);
  if (kind == ExperimentKind::kTemporalSweep) {
    c.tau_list = o.tau_list;
    c.n_modes = o.n_modes.value_or(1024);
    if (c.reference == ReferenceKind::kExactPlaneWave && !o.n_modes) c.n_modes = 64;
  } else {
    c.n_list = o.n_list;
    c.tau = o.tau;
    c.n_ref = o.n_ref;
  }
  return c;
}

void emit_report(const ConvergenceReport& report, const Options& o, std::ostream& out) {
  Sink sink(o.output, out);
  if (o.format == "json") {
    sink.stream() << report_to_json(report).dump(2) << '\n';
  } else {
    write_csv(report, sink.stream());
  }
}

void emit_field(const Field& field, const nlohmann::json& meta, const Options& o, std::ostream& out) {
  Sink sink(o.output, out);
  if (o.format == "csv") {
    sink.stream() << "k,re,im\n";
    for (int k = -field.cutoff(); k <= field.cutoff(); ++k) {
      sink.stream() << k << ',' << nlohmann::json(field[k].real()).dump() << ','
                    << nlohmann::json(field[k].imag()).dump() << '\n';
    }
  } else {
    sink.stream() << meta.dump(2) << '\n';
  }
}

int cmd_run(const Options& o, std::ostream& out) {
  const ReferenceKind reference = parse_reference_kind(o.reference);
  const int n = o.n_modes.value_or(1024);
  const SchemeParams params{o.tau, n, o.t_final};
  params.validate();
  if (o.seeds.empty()) throw ConfigurationError("seed list is empty");

  ExperimentConfig c;
  c.kind = ExperimentKind::kSingleRun;
  c.reference = reference;
  c.gamma = require_gamma(o, false);
  const int k_max = o.k_max.value_or(2 * n);
  const Field u0 = project_initial(sweep_initial_data(c, o.seeds.front(), k_max), n);

  EvolveOptions options;
  options.integrator = kBaselines.at(o.baseline);
  const auto start = std::chrono::steady_clock::now();
  const Field u = evolve(u0, params, options).final_state;
  const double runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json meta{{"tau", o.tau},
                      {"n_modes", n},
                      {"t_final", o.t_final},
                      {"gamma", c.gamma},
                      {"seed", o.seeds.front()},
                      {"k_max", k_max},
                      {"reference", to_string(reference)},
                      {"integrator", o.baseline},
                      {"mass_initial", norm_l2(u0)},
                      {"mass_final", norm_l2(u)},
                      {"runtime_ms", runtime_ms},
                      {"final_state", field_to_json(u)}};
  if (reference == ReferenceKind::kExactPlaneWave) {
    meta["error_l2"] = error_l2(u, plane_wave_at(c.plane_wave, o.t_final));
  }
  emit_field(u, meta, o, out);
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const int n = o.n_modes.value_or(8);
  if (o.seeds.empty()) throw ConfigurationError("seed list is empty");
  const OracleCheckSummary s = oracle_check(n, o.trials, o.seeds.front());
  Sink sink(o.output, out);
  if (o.format == "json") {
    sink.stream() << nlohmann::json{{"n_modes", s.n_modes},
                                    {"trials", s.trials},
                                    {"max_relative_diff", s.max_relative_diff},
                                    {"tolerance", OracleCheckSummary::kTolerance},
                                    {"runtime_ms", s.runtime_ms},
                                    {"passed", s.passed}}
                         .dump(2)
                  << '\n';
  } else {
    sink.stream() << (s.passed ? "PASS" : "FAIL") << " oracle-check N=" << s.n_modes << " trials=" << s.trials
                  << " max_relative_diff=" << s.max_relative_diff << " tolerance=" << OracleCheckSummary::kTolerance
                  << '\n';
  }
  return s.passed ? kExitOk : kExitCheckFailed;
}

int cmd_dump_initial(const Options& o, std::ostream& out) {
  if (o.seeds.empty()) throw ConfigurationError("seed list is empty");
  ExperimentConfig c;
  c.reference = parse_reference_kind(o.reference);
  c.gamma = require_gamma(o, c.reference == ReferenceKind::kFineTau);
  const int k_max = o.k_max.value_or(o.n_modes ? 2 * *o.n_modes : 64);
  const RegularityParams params{c.gamma, o.seeds.front(), k_max};
  Field u0 = sweep_initial_data(c, params.seed, k_max);
  if (o.n_modes) u0 = project_initial(u0, *o.n_modes);
  nlohmann::json meta = initial_data_to_json(u0, params);
  if (o.n_modes) meta["n_modes"] = *o.n_modes;
  emit_field(u0, meta, o, out);
  return kExitOk;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool flag_given(const std::vector<std::string>& args, const CLI::Option& opt) {
  for (const auto& name : opt.get_lnames()) {
    const std::string flag = "--" + name;
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
  }
  return false;
}

// Removes --config <path> from args and appends the file's key=value pairs
// as flags, skipping keys whose flag is already on the command line.
void apply_config_file(std::vector<std::string>& args, const CLI::App& app) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + long(i));
      break;
    }
  }
  if (path.empty()) return;
  if (args.size() < 2) throw CLI::RequiredError("subcommand");
  const CLI::App* sub = app.get_subcommand_no_throw(args[1]);
  if (sub == nullptr) throw CLI::ValidationError("--config", "unknown subcommand '" + args[1] + "'");

  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config file '" + path + "'");
  std::vector<std::string> extra;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigurationError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw ConfigurationError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "' for " + args[1]);
    }
    if (flag_given(args, *opt)) continue;
    extra.push_back("--" + key);
    extra.push_back(trim(line.substr(eq + 1)));
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-regularity integrator for cubic NLS on the torus: runs, convergence sweeps and oracle checks"};
  app.name(args.empty() ? "nls" : args.front());
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Evolve one initial datum to t_final");
  add_common(run, o);
  add_gamma(run, o);
  run->add_option("--tau", o.tau, "Step size")->capture_default_str();
  run->add_option("--n-modes", o.n_modes, "Mode cutoff N (default 1024)");
  run->add_option("--t-final", o.t_final, "Final time")->capture_default_str();
  add_seeds(run, o);
  run->add_option("--k-max", o.k_max, "Cutoff of the random series (default 2N)");
  add_reference(run, o);
  add_baseline(run, o);
  add_format(run, o, "json");

  auto* time = app.add_subcommand("converge-time", "Temporal convergence sweep at fixed N");
  add_common(time, o);
  add_gamma(time, o);
  time->add_option("--tau-list", o.tau_list, "Swept step sizes")->delimiter(',')->capture_default_str();
  time->add_option("--n-modes", o.n_modes, "Mode cutoff N (default 1024, 64 for plane-wave)");
  time->add_option("--t-final", o.t_final, "Final time")->capture_default_str();
  add_seeds(time, o);
  time->add_option("--k-max", o.k_max, "Cutoff of the random series (default 2N)");
  add_reference(time, o);
  add_baseline(time, o);
  time->add_option("--experiment-id", o.experiment_id, "Label written to the report");
  add_format(time, o, "csv");

  auto* space = app.add_subcommand("converge-space", "Spatial convergence sweep at fixed tau");
  add_common(space, o);
  add_gamma(space, o);
  space->add_option("--n-list", o.n_list, "Swept mode cutoffs")->delimiter(',')->capture_default_str();
  space->add_option("--n-ref", o.n_ref, "Reference cutoff (default 4 max N)");
  space->add_option("--tau", o.tau, "Step size")->capture_default_str();
  space->add_option("--t-final", o.t_final, "Final time")->capture_default_str();
  add_seeds(space, o);
  space->add_option("--k-max", o.k_max, "Cutoff of the random series (default 2 N_ref)");
  add_reference(space, o);
  add_baseline(space, o);
  space->add_option("--experiment-id", o.experiment_id, "Label written to the report");
  add_format(space, o, "csv");

  auto* oracle = app.add_subcommand("oracle-check", "Compare the FFT step with the direct-sum oracle");
  add_common(oracle, o);
  oracle->add_option("--n-modes", o.n_modes, "Mode cutoff N <= 32 (default 8)");
  oracle->add_option("--trials", o.trials, "Number of random fields")->capture_default_str();
  add_seeds(oracle, o);
  add_format(oracle, o, "csv");

  auto* dump = app.add_subcommand("dump-initial", "Write seeded random initial data as JSON");
  add_common(dump, o);
  add_gamma(dump, o);
  add_seeds(dump, o);
  dump->add_option("--k-max", o.k_max, "Cutoff of the random series (default 2N, or 64)");
  dump->add_option("--n-modes", o.n_modes, "Also apply the projection P_N I_2N");
  add_reference(dump, o);
  add_format(dump, o, "json");

  try {
    std::vector<std::string> full = args;
    apply_config_file(full, app);
    std::vector<std::string> reversed(full.rbegin(), full.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
    if (o.format.empty()) o.format = (run->parsed() || dump->parsed()) ? "json" : "csv";
    if (o.gamma && !RegularityParams{*o.gamma, 0, 1}.in_convergence_range()) {
      err << "warning: gamma = " << *o.gamma << " lies outside (1/2, 1], where the convergence rates apply\n";
    }

    if (run->parsed()) return cmd_run(o, out);
    if (time->parsed()) {
      emit_report(temporal_sweep(sweep_config(o, ExperimentKind::kTemporalSweep)), o, out);
      return kExitOk;
    }
    if (space->parsed()) {
      emit_report(spatial_sweep(sweep_config(o, ExperimentKind::kSpatialSweep)), o, out);
      return kExitOk;
    }
    if (oracle->parsed()) return cmd_oracle(o, out);
    return cmd_dump_initial(o, out);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace nls
