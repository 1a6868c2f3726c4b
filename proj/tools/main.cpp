// faidlab command line: BSC frame-error-rate simulation, guaranteed-error
// certification, trace audits, structural verification, and alist tooling.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "faidlab/alphabet.hpp"
#include "faidlab/analysis.hpp"
#include "faidlab/decoder.hpp"
#include "faidlab/sim.hpp"
#include "faidlab/tanner_graph.hpp"

namespace {

using namespace faidlab;

constexpr int kExitOk = 0;
constexpr int kExitAnalysisFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << content;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

TannerGraph load_code(const std::string& spec) {
  if (spec == "tanner155") return construct_tanner_155();
  const std::string text = read_file(spec);
  if (ends_with(spec, ".json")) return graph_from_json_text(text);
  return parse_alist(text);
}

// Flags shared across subcommands.
struct CommonOpts {
  std::string code = "tanner155";
  std::string decoder = "faid";
  int nd = 1;
  int max_iters = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  bool json = false;
  std::string rules_path;

  DecodeRules rules() const {
    return rules_path.empty() ? default_rules() : rules_from_file(rules_path);
  }
  DfaidConfig cfg() const {
    DfaidConfig cfg{nd, 3, max_iters};
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_decoder = true) {
  cmd->add_option("--code", opts.code, "Code: 'tanner155' or a path to an alist/json file");
  if (with_decoder) {
    cmd->add_option("--decoder", opts.decoder, "Decoder: faid, dfaid or bp")
        ->check(CLI::IsMember({"faid", "dfaid", "bp"}));
  }
  cmd->add_option("--nd", opts.nd, "Decimation rounds for dfaid");
  cmd->add_option("--max-iters", opts.max_iters, "Total iteration budget");
  cmd->add_option("--seed", opts.seed, "RNG seed");
  cmd->add_option("--threads", opts.threads, "Worker threads");
  cmd->add_option("--out", opts.out, "Output path (default: stdout)");
  cmd->add_flag("--json", opts.json, "Emit JSON instead of text");
  cmd->add_option("--rules", opts.rules_path, "JSON override for the update tables");
}

int cmd_fer(const CommonOpts& opts, const std::vector<double>& alphas,
            std::uint64_t max_frames, std::uint64_t min_errors, bool random_codewords) {
  const auto g = load_code(opts.code);
  FerOptions options;
  options.cfg = opts.cfg();
  options.seed = opts.seed;
  options.stop = {min_errors, max_frames};
  options.threads = opts.threads;
  options.random_codewords = random_codewords;
  options.rules = opts.rules();
  const auto records = fer_simulate(g, decoder_kind_from_name(opts.decoder), alphas, options);
  if (opts.json) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      char buf[512];
      std::snprintf(buf, sizeof(buf),
                    "  {\"alpha\": %.6g, \"decoder\": \"%s\", \"frames\": %llu, "
                    "\"frame_errors\": %llu, \"bit_errors\": %llu, \"fer\": %.6g, "
                    "\"avg_iters\": %.6g, \"seed\": %llu}%s\n",
                    r.alpha, decoder_kind_name(r.decoder),
                    static_cast<unsigned long long>(r.frames),
                    static_cast<unsigned long long>(r.frame_errors),
                    static_cast<unsigned long long>(r.bit_errors), r.fer, r.avg_iterations,
                    static_cast<unsigned long long>(r.seed),
                    i + 1 < records.size() ? "," : "");
      out += buf;
    }
    out += "]\n";
    write_output(opts.out, out);
  } else {
    write_output(opts.out, fer_to_csv(records));
  }
  return kExitOk;
}

int cmd_certify(const CommonOpts& opts, int weight, bool exhaustive, std::uint64_t samples,
                std::uint64_t budget, std::uint64_t start_rank) {
  const auto g = load_code(opts.code);
  CertifyMode mode;
  if (exhaustive) {
    mode = CertifyMode::Exhaustive(budget);
    mode.start_rank = start_rank;
  } else {
    if (samples == 0) throw CLI::ValidationError("certify", "--samples required without --exhaustive");
    mode = CertifyMode::Sampled(opts.seed, samples);
  }
  CertifyProgress progress = [&](const CertificationReport& partial) {
    std::fprintf(stderr, "certify: %llu patterns tested, %zu failures\n",
                 static_cast<unsigned long long>(partial.patterns_tested),
                 partial.failures.size());
    if (!opts.out.empty()) {
      write_file(opts.out + ".ckpt", certification_report_to_json(partial));
    }
  };
  const auto report = certify(g, decoder_kind_from_name(opts.decoder), opts.cfg(), weight,
                              mode, opts.threads, progress, opts.rules());
  if (opts.json || !opts.out.empty()) {
    write_output(opts.out, certification_report_to_json(report));
  }
  std::printf("weight %d: %llu patterns tested, %zu failures, max iterations %d%s\n",
              report.weight, static_cast<unsigned long long>(report.patterns_tested),
              report.failures.size(), report.max_iterations_observed,
              report.complete ? "" : " (partial)");
  if (!report.failures.empty()) {
    std::printf("failing supports:\n%s", failure_supports_to_text(report).c_str());
    return kExitAnalysisFailure;
  }
  return kExitOk;
}

int cmd_audit(const CommonOpts& opts, int weight, std::uint64_t samples) {
  const auto g = load_code(opts.code);
  Decoder dec(g, opts.rules());
  const auto cfg = opts.cfg();
  const int n = g.variable_count();
  std::vector<AuditViolation> all;
  std::uint64_t events = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto support = sample_support(opts.seed, s, n, weight);
    const ErrorPattern pattern{support};
    std::vector<std::uint8_t> word(n, 0);
    for (int v : support) word[v] = 1;
    DecodeTrace trace;
    trace.kind = DecoderKind::Dfaid;
    trace.config = cfg;
    const auto result = dec.dfaid(word, cfg, {}, &trace);
    events += result.decimation_events.size();
    for (auto&& v : audit_lemma1(trace, pattern)) all.push_back(std::move(v));
    for (auto&& v : audit_lemma2(trace, pattern)) all.push_back(std::move(v));
    for (auto&& v : audit_rule_consistency(trace, pattern, g, opts.rules())) {
      all.push_back(std::move(v));
    }
  }
  if (opts.json || !opts.out.empty()) write_output(opts.out, violations_to_json(all));
  std::printf("audited %llu weight-%d traces (%llu decimation events): %zu violations\n",
              static_cast<unsigned long long>(samples), weight,
              static_cast<unsigned long long>(events), all.size());
  return all.empty() ? kExitOk : kExitAnalysisFailure;
}

int cmd_verify(const CommonOpts& opts, int theorem, long long limit, int weight,
               std::uint64_t samples, bool per_cycle) {
  const auto g = load_code(opts.code);
  if (theorem == 1) {
    DfaidConfig cfg{opts.nd, 3, opts.max_iters};
    cfg.validate();
    const auto report = verify_theorem1(g, limit, cfg, opts.rules());
    if (opts.json || !opts.out.empty()) {
      write_output(opts.out, theorem1_report_to_json(report, per_cycle));
    }
    std::printf("8-cycles: %llu, condition true: %llu, error-node decimations: %llu\n",
                static_cast<unsigned long long>(report.cycles_enumerated),
                static_cast<unsigned long long>(report.condition_true),
                static_cast<unsigned long long>(report.violations));
    if (per_cycle && !opts.json && opts.out.empty()) {
      for (const auto& o : report.outcomes) {
        std::printf("cycle v=(%d,%d,%d,%d) condition=%d decimated=%d converged=%d iters=%d\n",
                    o.cycle.vnodes[0], o.cycle.vnodes[1], o.cycle.vnodes[2], o.cycle.vnodes[3],
                    o.condition, o.error_node_decimated, o.converged, o.iterations_used);
      }
    }
    return report.violations == 0 ? kExitOk : kExitAnalysisFailure;
  }
  if (theorem == 2) {
    const int n = g.variable_count();
    const auto cfg = opts.cfg();
    std::uint64_t hypothesis_true = 0, hypothesis_false = 0, conclusion_failures = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
      const auto support = sample_support(opts.seed, s, n, weight);
      std::vector<std::uint8_t> word(n, 0);
      for (int v : support) word[v] = 1;
      const auto [faid_res, faid_trace] =
          run_with_trace(DecoderKind::Faid, g, word, cfg, 0.01, opts.rules());
      const auto [dfaid_res, dfaid_trace] =
          run_with_trace(DecoderKind::Dfaid, g, word, cfg, 0.01, opts.rules());
      const auto report = monitor_theorem2(g, faid_trace, dfaid_trace, ErrorPattern{support});
      if (report.hypothesis_holds) {
        ++hypothesis_true;
        if (report.conclusion_checked && !report.conclusion_holds) ++conclusion_failures;
      } else {
        ++hypothesis_false;
      }
    }
    std::printf(
        "weight-%d samples: %llu; hypothesis true: %llu, false: %llu; conclusion failures: %llu\n",
        weight, static_cast<unsigned long long>(samples),
        static_cast<unsigned long long>(hypothesis_true),
        static_cast<unsigned long long>(hypothesis_false),
        static_cast<unsigned long long>(conclusion_failures));
    return conclusion_failures == 0 ? kExitOk : kExitAnalysisFailure;
  }
  throw CLI::ValidationError("verify", "--theorem must be 1 or 2");
}

int cmd_cycles(const CommonOpts& opts, long long limit) {
  const auto g = load_code(opts.code);
  const auto cycles = enumerate_8cycles(g, limit);
  std::string out;
  if (opts.json) {
    out = "[\n";
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      const auto& c = cycles[i];
      char buf[256];
      std::snprintf(buf, sizeof(buf),
                    "  {\"vnodes\": [%d, %d, %d, %d], \"cnodes\": [%d, %d, %d, %d]}%s\n",
                    c.vnodes[0], c.vnodes[1], c.vnodes[2], c.vnodes[3], c.cnodes[0],
                    c.cnodes[1], c.cnodes[2], c.cnodes[3], i + 1 < cycles.size() ? "," : "");
      out += buf;
    }
    out += "]\n";
  } else {
    for (const auto& c : cycles) {
      char buf[256];
      std::snprintf(buf, sizeof(buf), "v %d %d %d %d c %d %d %d %d\n", c.vnodes[0], c.vnodes[1],
                    c.vnodes[2], c.vnodes[3], c.cnodes[0], c.cnodes[1], c.cnodes[2],
                    c.cnodes[3]);
      out += buf;
    }
  }
  write_output(opts.out, out);
  std::fprintf(stderr, "%zu 8-cycles\n", cycles.size());
  return kExitOk;
}

int cmd_convert(const std::string& in_path, const std::string& out_path) {
  const std::string text = read_file(in_path);
  const TannerGraph g =
      ends_with(in_path, ".json") ? graph_from_json_text(text) : parse_alist(text);
  const std::string out =
      ends_with(out_path, ".json") ? graph_to_json_text(g) : serialize_alist(g);
  write_file(out_path, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"7-level finite-alphabet iterative decoding laboratory"};
  app.require_subcommand(1);

  // fer
  CommonOpts fer_opts;
  std::vector<double> alphas;
  std::uint64_t max_frames = 1000000, min_errors = 100;
  bool random_codewords = false;
  auto* fer = app.add_subcommand("fer", "Monte-Carlo frame-error-rate sweep");
  add_common(fer, fer_opts);
  fer->add_option("--alpha", alphas, "Crossover probabilities")
      ->required()
      ->delimiter(',');
  fer->add_option("--frames", max_frames, "Maximum frames per alpha point");
  fer->add_option("--min-errors", min_errors, "Stop after this many frame errors");
  fer->add_flag("--random-codewords", random_codewords,
                "Transmit random codewords instead of the all-zero word");

  // certify
  CommonOpts cert_opts;
  int cert_weight = 1;
  bool exhaustive = false;
  std::uint64_t samples = 0, budget = UINT64_MAX, start_rank = 0;
  auto* cert = app.add_subcommand("certify", "Guaranteed-correction certification");
  add_common(cert, cert_opts);
  cert->add_option("--weight", cert_weight, "Error-pattern weight")->required();
  cert->add_flag("--exhaustive", exhaustive, "Visit every weight-k pattern");
  cert->add_option("--samples", samples, "Number of sampled patterns");
  cert->add_option("--budget", budget, "Exhaustive pattern budget");
  cert->add_option("--start-rank", start_rank, "Resume exhaustive run at this rank");

  // audit
  CommonOpts audit_opts;
  int audit_weight = 5;
  std::uint64_t audit_samples = 10000;
  auto* audit = app.add_subcommand("audit", "Decimation-soundness audits over traced runs");
  add_common(audit, audit_opts, false);
  audit->add_option("--weight", audit_weight, "Error-pattern weight");
  audit->add_option("--samples", audit_samples, "Number of sampled patterns");

  // verify
  CommonOpts verify_opts;
  verify_opts.nd = 4;
  int theorem = 1, verify_weight = 5;
  long long verify_limit = -1;
  std::uint64_t verify_samples = 1000;
  bool per_cycle = false;
  auto* verify = app.add_subcommand("verify", "Structural property verification");
  add_common(verify, verify_opts, false);
  verify->add_option("--theorem", theorem, "1: 8-cycle decimation safety; 2: iteration bound")
      ->required();
  verify->add_option("--limit", verify_limit, "Maximum 8-cycles (theorem 1)");
  verify->add_option("--weight", verify_weight, "Pattern weight (theorem 2)");
  verify->add_option("--samples", verify_samples, "Sampled patterns (theorem 2)");
  verify->add_flag("--per-cycle", per_cycle, "Report every cycle outcome");

  // cycles
  CommonOpts cycles_opts;
  long long cycles_limit = -1;
  auto* cycles = app.add_subcommand("cycles", "Enumerate 8-cycles");
  add_common(cycles, cycles_opts, false);
  cycles->add_option("--limit", cycles_limit, "Maximum number of cycles");

  // convert
  std::string conv_in, conv_out;
  auto* convert = app.add_subcommand("convert", "Convert between alist and adjacency JSON");
  convert->add_option("--in", conv_in, "Input path (.json or alist)")->required();
  convert->add_option("--out", conv_out, "Output path (.json or alist)")->required();

  // tanner155
  CommonOpts tanner_opts;
  auto* tanner = app.add_subcommand("tanner155", "Emit the built-in (155,93) code as alist");
  tanner->add_option("--out", tanner_opts.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (fer->parsed()) return cmd_fer(fer_opts, alphas, max_frames, min_errors, random_codewords);
    if (cert->parsed()) {
      return cmd_certify(cert_opts, cert_weight, exhaustive, samples, budget, start_rank);
    }
    if (audit->parsed()) return cmd_audit(audit_opts, audit_weight, audit_samples);
    if (verify->parsed()) {
      return cmd_verify(verify_opts, theorem, verify_limit, verify_weight, verify_samples,
                        per_cycle);
    }
    if (cycles->parsed()) return cmd_cycles(cycles_opts, cycles_limit);
    if (convert->parsed()) return cmd_convert(conv_in, conv_out);
    if (tanner->parsed()) {
      write_output(tanner_opts.out, serialize_alist(construct_tanner_155()));
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
