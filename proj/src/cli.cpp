#include "structctl/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "structctl/bench.hpp"
#include "structctl/digraph.hpp"
#include "structctl/generate.hpp"
#include "structctl/io.hpp"
#include "structctl/oracle.hpp"
#include "structctl/placement.hpp"
#include "structctl/report.hpp"

namespace structctl {

namespace {

// Thrown for invalid command-line or file input; maps to kExitInputError.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string input_format;
  std::string file;
  std::string second_file;
  bool all = false;
  bool emit = false;
  std::size_t limit = 10000;
  std::size_t numeric_trials = 0;
  std::uint64_t seed = 1;
  std::string model;
  std::size_t n = 0;
  double p_edge = 0.1;
  std::size_t degree = 2;
  std::size_t bandwidth = 1;
  std::string output_format = "edgelist";
  std::string output_path;
  std::vector<std::size_t> sizes{1000, 10000, 50000};
  double average_degree = 5.0;
};

class Stopwatch {
 public:
  explicit Stopwatch(AnalysisReport& report) : report_(report) {}

  template <typename F>
  auto operator()(const std::string& stage, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    auto value = body();
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    report_.timings.push_back({stage, elapsed.count()});
    return value;
  }

 private:
  AnalysisReport& report_;
};

PatternFormat input_format_for(const Options& opts, const std::string& path) {
  return opts.input_format.empty() ? format_from_path(path) : format_from_name(opts.input_format);
}

StructPattern load(const Options& opts, const std::string& path, const ParseOptions& parse,
                   AnalysisReport& report) {
  auto parsed = parse_pattern(path, input_format_for(opts, path), parse);
  for (auto& w : parsed.warnings) report.warnings.push_back(path + ": " + w);
  return std::move(parsed.pattern);
}

StructPattern load_state_matrix(const Options& opts, AnalysisReport& report) {
  Stopwatch time(report);
  auto pattern = time("parse", [&] { return load(opts, opts.file, {}, report); });
  if (!pattern.is_square()) {
    throw InputError(opts.file + ": state matrix must be square, got " +
                     std::to_string(pattern.n_rows()) + "x" + std::to_string(pattern.n_cols()));
  }
  if (pattern.n_rows() == 0) throw InputError(opts.file + ": empty system");
  return pattern;
}

void describe_instance(AnalysisReport& report, const SystemDigraph& g, const Condensation& cond) {
  report.n = g.size();
  report.edge_count = g.edge_count();
  report.scc_count = cond.scc_count();
}

void emit(const Options& opts, const AnalysisReport& report, std::ostream& out, std::ostream& err) {
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  if (opts.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << to_text(report);
  }
}

// analyze, design-inputs, design-outputs and enumerate share this pipeline.
void run_design(const Options& opts, AnalysisReport& report, bool outputs, bool partitions,
                bool single, bool all) {
  Stopwatch time(report);
  const auto a = load_state_matrix(opts, report);
  report.mode = outputs ? "outputs" : "inputs";
  const auto original = time("digraph", [&] { return build_digraph(a); });
  const auto g = outputs ? time("transpose", [&] { return build_digraph(a.transposed()); }) : original;
  auto summary = time("summary", [&] { return min_dedicated_inputs(g); });
  describe_instance(report, original, summary.condensation);
  if (partitions || single || all) {
    auto parts = time("partitions", [&] { return natural_partitions(g, summary); });
    if (single) {
      report.configuration = time("generate", [&] { return generate_configuration(g, summary, parts); });
    }
    if (all) {
      auto result = time("enumerate", [&] {
        return enumerate_configurations(g, summary, parts, opts.limit);
      });
      report.configurations = std::move(result.configurations);
      report.truncated = result.truncated;
      report.limit = opts.limit;
      if (result.truncated) {
        report.warnings.push_back("enumeration stopped at the limit of " + std::to_string(opts.limit) +
                                  "; more configurations exist (raise --limit)");
      }
    }
    if (partitions) report.partitions = std::move(parts);
  }
  if (opts.emit) {
    auto matrix = [&](const InputConfiguration& c) {
      return outputs ? emit_output_matrix(c, g.size()) : emit_input_matrix(c, g.size());
    };
    if (report.configurations) {
      for (const auto& c : *report.configurations) report.emitted.push_back(matrix(c));
    } else if (report.configuration) {
      report.emitted.push_back(matrix(*report.configuration));
    }
  }
  report.summary = std::move(summary);
}

int run_verify(const Options& opts, AnalysisReport& report) {
  Stopwatch time(report);
  const auto a = load_state_matrix(opts, report);
  ParseOptions b_options;
  b_options.square = false;
  b_options.rows = a.n_rows();
  const auto b = time("parse-b", [&] { return load(opts, opts.second_file, b_options, report); });
  if (b.n_rows() != a.n_rows()) {
    throw InputError(opts.second_file + ": input matrix has " + std::to_string(b.n_rows()) +
                     " rows, state matrix has " + std::to_string(a.n_rows()));
  }
  const auto g = build_digraph(a);
  describe_instance(report, g, strongly_connected_components(g));
  report.verdict = time("oracle", [&] { return oracle::is_structurally_controllable(a, b); });
  if (opts.numeric_trials > 0) {
    report.numeric = time("numeric", [&] {
      return oracle::numeric_rank_check(a, b, opts.numeric_trials, opts.seed);
    });
  }
  return report.verdict->controllable ? kExitOk : kExitInfeasible;
}

void run_gen(const Options& opts, std::ostream& out) {
  GenParams params;
  params.model = model_from_name(opts.model);
  params.n = opts.n;
  params.p_edge = opts.p_edge;
  params.degree = opts.degree;
  params.bandwidth = opts.bandwidth;
  params.seed = opts.seed;
  const auto generated = gen_random(params);
  const auto text = write_pattern(generated.pattern, format_from_name(opts.output_format),
                                  generated.provenance);
  if (opts.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opts.output_path);
  if (!file) throw InputError("cannot write '" + opts.output_path + "'");
  file << text;
}

void run_bench_command(const Options& opts, std::ostream& out) {
  const auto result = run_bench(opts.sizes, opts.average_degree, opts.seed);
  if (opts.format == "json") {
    nlohmann::json doc;
    doc["schema"] = "structctl.bench";
    doc["version"] = kReportVersion;
    doc["average_degree"] = opts.average_degree;
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : result.rows) {
      doc["rows"].push_back({{"n", r.n},
                             {"edges", r.edges},
                             {"seconds", r.seconds},
                             {"repeats", r.repeats},
                             {"m", r.m},
                             {"beta", r.beta},
                             {"alpha", r.alpha},
                             {"p", r.p}});
    }
    if (result.rows.size() >= 2) doc["exponent"] = result.exponent;
    out << doc.dump(2) << '\n';
    return;
  }
  out << std::setw(10) << "n" << std::setw(10) << "edges" << std::setw(14) << "seconds"
      << std::setw(9) << "repeats" << std::setw(9) << "m" << std::setw(9) << "beta"
      << std::setw(9) << "alpha" << std::setw(9) << "p" << '\n';
  for (const auto& r : result.rows) {
    out << std::setw(10) << r.n << std::setw(10) << r.edges << std::setw(14) << std::setprecision(6)
        << r.seconds << std::setw(9) << r.repeats << std::setw(9) << r.m << std::setw(9) << r.beta
        << std::setw(9) << r.alpha << std::setw(9) << r.p << '\n';
  }
  if (result.rows.size() >= 2) {
    out << "fitted exponent: " << std::setprecision(3) << result.exponent << '\n';
  }
}

void add_format(CLI::App* cmd, Options& opts) {
  cmd->add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"text", "json"}));
}

void add_input_format(CLI::App* cmd, Options& opts) {
  cmd->add_option("--input-format", opts.input_format,
                  "edgelist, pattern-json or mtx-pattern (default: from the file extension)")
      ->check(CLI::IsMember({"edgelist", "pattern-json", "mtx-pattern"}));
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Dedicated input and output placement for structural controllability", "structctl"};
  app.require_subcommand(1);
  app.fallthrough();
  add_format(&app, opts);

  auto* analyze = app.add_subcommand("analyze", "Report m, beta, alpha and p");
  analyze->add_option("file", opts.file, "State matrix pattern")->required();

  auto* inputs = app.add_subcommand("design-inputs", "Place a minimum set of dedicated inputs");
  inputs->add_option("file", opts.file, "State matrix pattern")->required();
  inputs->add_flag("--all", opts.all, "List every minimum configuration");
  inputs->add_flag("--emit-b", opts.emit, "Print the input matrix pattern");

  auto* outputs = app.add_subcommand("design-outputs", "Place a minimum set of dedicated outputs");
  outputs->add_option("file", opts.file, "State matrix pattern")->required();
  outputs->add_flag("--all", opts.all, "List every minimum configuration");
  outputs->add_flag("--emit-c", opts.emit, "Print the output matrix pattern");

  auto* verify = app.add_subcommand("verify", "Check structural controllability of (A, B)");
  verify->add_option("a-file", opts.file, "State matrix pattern")->required();
  verify->add_option("b-file", opts.second_file, "Input matrix pattern")->required();
  verify->add_option("--numeric-trials", opts.numeric_trials,
                     "Also run a randomized Kalman rank test with this many trials");
  verify->add_option("--seed", opts.seed, "Seed for the numeric test");

  auto* enumerate = app.add_subcommand("enumerate", "List minimum input configurations");
  enumerate->add_option("file", opts.file, "State matrix pattern")->required();

  for (auto* cmd : {inputs, outputs, enumerate}) {
    cmd->add_option("--limit", opts.limit, "Maximum number of configurations to list")
        ->check(CLI::PositiveNumber);
  }
  for (auto* cmd : {analyze, inputs, outputs, verify, enumerate}) {
    add_format(cmd, opts);
    add_input_format(cmd, opts);
  }

  auto* gen = app.add_subcommand("gen", "Generate a random state matrix pattern");
  gen->add_option("model", opts.model, "erdos, scalefree or banded")
      ->required()
      ->check(CLI::IsMember({"erdos", "scalefree", "banded"}));
  gen->add_option("n", opts.n, "Number of states")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", opts.seed, "Random seed");
  gen->add_option("--p-edge", opts.p_edge, "Edge probability (erdos, banded)")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--degree", opts.degree, "Links per new state (scalefree)");
  gen->add_option("--bandwidth", opts.bandwidth, "Band half-width (banded)");
  gen->add_option("--output-format", opts.output_format, "Pattern format")
      ->check(CLI::IsMember({"edgelist", "pattern-json", "mtx-pattern"}));
  gen->add_option("-o,--output", opts.output_path, "Write to a file instead of stdout");

  auto* bench = app.add_subcommand("bench", "Time the analysis on random instances");
  bench->add_option("--sizes", opts.sizes, "State counts")->delimiter(',')->check(CLI::Range(2, 100000000));
  bench->add_option("--degree", opts.average_degree, "Average out-degree")->check(CLI::PositiveNumber);
  bench->add_option("--seed", opts.seed, "Random seed");
  add_format(bench, opts);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    CLI::App* failed = &app;
    for (auto* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return kExitInputError;
  }

  AnalysisReport report;
  try {
    int status = kExitOk;
    if (*analyze) {
      report.command = "analyze";
      run_design(opts, report, false, false, false, false);
    } else if (*inputs) {
      report.command = "design-inputs";
      run_design(opts, report, false, true, true, opts.all);
    } else if (*outputs) {
      report.command = "design-outputs";
      run_design(opts, report, true, true, true, opts.all);
    } else if (*enumerate) {
      report.command = "enumerate";
      run_design(opts, report, false, false, false, true);
    } else if (*verify) {
      report.command = "verify";
      status = run_verify(opts, report);
    } else if (*gen) {
      run_gen(opts, out);
      return kExitOk;
    } else if (*bench) {
      run_bench_command(opts, out);
      return kExitOk;
    }
    emit(opts, report, out, err);
    return status;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {  // ParseError, InputError
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace structctl
