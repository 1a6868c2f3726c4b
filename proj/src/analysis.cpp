#include "faidlab/analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

#include "faidlab/sim.hpp"
#include "json.hpp"

namespace faidlab {

std::vector<std::uint8_t> ErrorPattern::to_word(int n) const {
  std::vector<std::uint8_t> word(n, 0);
  for (int v : support) {
    if (v < 0 || v >= n) throw std::invalid_argument("support index out of range");
    word[v] ^= 1;
  }
  return word;
}

bool ErrorPattern::contains(int v) const {
  return std::find(support.begin(), support.end(), v) != support.end();
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    if (result > UINT64_MAX / factor) return UINT64_MAX;  // saturate
    result = result * factor / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::vector<int> combination_unrank(int n, int k, std::uint64_t rank) {
  std::vector<int> support;
  support.reserve(k);
  int start = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = start; v < n; ++v) {
      const std::uint64_t below = binomial(n - v - 1, k - i - 1);
      if (rank < below) {
        support.push_back(v);
        start = v + 1;
        break;
      }
      rank -= below;
    }
  }
  if (static_cast<int>(support.size()) != k) {
    throw std::invalid_argument("combination rank out of range");
  }
  return support;
}

namespace {

// Advances a sorted support to its lexicographic successor; false at the end.
bool next_combination(std::vector<int>& support, int n) {
  const int k = static_cast<int>(support.size());
  for (int i = k - 1; i >= 0; --i) {
    if (support[i] < n - k + i) {
      ++support[i];
      for (int j = i + 1; j < k; ++j) support[j] = support[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct PatternOutcome {
  bool failed = false;
  CertFailure failure;
  int iterations = 0;
};

PatternOutcome run_pattern(Decoder& dec, DecoderKind kind, const DfaidConfig& cfg,
                           const std::vector<int>& support) {
  const int n = dec.graph().variable_count();
  std::vector<std::uint8_t> word(n, 0);
  for (int v : support) word[v] = 1;
  DecodeResult result;
  switch (kind) {
    case DecoderKind::Faid:
      result = dec.faid(word, cfg.max_iters);
      break;
    case DecoderKind::Dfaid:
      result = dec.dfaid(word, cfg);
      break;
    case DecoderKind::Bp:
      // The certification channel is pattern-driven; use a nominal crossover
      // for the LLR magnitudes.
      result = dec.bp(word, 0.01, cfg.max_iters);
      break;
  }
  PatternOutcome out;
  out.iterations = result.iterations_used;
  if (!result.residual_errors.empty()) {
    out.failed = true;
    out.failure = {ErrorPattern{support}, result.residual_errors, result.iterations_used};
  }
  return out;
}

struct ChunkResult {
  std::vector<CertFailure> failures;
  int max_iterations = 0;
  std::uint64_t tested = 0;
};

ChunkResult certify_ranks(const TannerGraph& g, DecoderKind kind, const DfaidConfig& cfg,
                          const DecodeRules& rules, int weight, std::uint64_t first,
                          std::uint64_t last) {
  Decoder dec(g, rules);
  ChunkResult out;
  if (first >= last) return out;
  std::vector<int> support = combination_unrank(g.variable_count(), weight, first);
  for (std::uint64_t r = first; r < last; ++r) {
    const auto res = run_pattern(dec, kind, cfg, support);
    ++out.tested;
    out.max_iterations = std::max(out.max_iterations, res.iterations);
    if (res.failed) out.failures.push_back(res.failure);
    if (r + 1 < last) next_combination(support, g.variable_count());
  }
  return out;
}

ChunkResult certify_list(const TannerGraph& g, DecoderKind kind, const DfaidConfig& cfg,
                         const DecodeRules& rules, const std::vector<std::vector<int>>& supports,
                         std::size_t first, std::size_t last) {
  Decoder dec(g, rules);
  ChunkResult out;
  for (std::size_t i = first; i < last; ++i) {
    const auto res = run_pattern(dec, kind, cfg, supports[i]);
    ++out.tested;
    out.max_iterations = std::max(out.max_iterations, res.iterations);
    if (res.failed) out.failures.push_back(res.failure);
  }
  return out;
}

}  // namespace

CertificationReport certify(const TannerGraph& g, DecoderKind decoder, const DfaidConfig& cfg,
                            int weight, const CertifyMode& mode, int threads,
                            const CertifyProgress& progress, const DecodeRules& rules) {
  cfg.validate();
  if (weight < 0 || weight > g.variable_count()) {
    throw std::invalid_argument("weight out of range");
  }
  const int workers = std::max(1, threads);
  constexpr std::uint64_t kCheckpoint = 1000000;

  CertificationReport report;
  report.weight = weight;
  report.exhaustive = mode.exhaustive;
  report.seed = mode.seed;

  auto merge = [&report](std::vector<ChunkResult> parts) {
    for (auto& part : parts) {
      report.patterns_tested += part.tested;
      report.max_iterations_observed =
          std::max(report.max_iterations_observed, part.max_iterations);
      report.failures.insert(report.failures.end(),
                             std::make_move_iterator(part.failures.begin()),
                             std::make_move_iterator(part.failures.end()));
    }
  };

  if (mode.exhaustive) {
    const std::uint64_t total = binomial(g.variable_count(), weight);
    report.requested = total;
    if (mode.start_rank > total) throw std::invalid_argument("start rank beyond C(n,k)");
    const std::uint64_t end =
        (total - mode.start_rank > mode.max_patterns) ? mode.start_rank + mode.max_patterns
                                                      : total;
    report.complete = end == total && mode.start_rank == 0;
    std::uint64_t done = mode.start_rank;
    while (done < end) {
      const std::uint64_t chunk_end = std::min(end, done + kCheckpoint);
      if (workers == 1) {
        merge({certify_ranks(g, decoder, cfg, rules, weight, done, chunk_end)});
      } else {
        const std::uint64_t span = chunk_end - done;
        const int w_count = static_cast<int>(
            std::min<std::uint64_t>(span, static_cast<std::uint64_t>(workers)));
        std::vector<ChunkResult> parts(w_count);
        std::vector<std::thread> pool;
        for (int w = 0; w < w_count; ++w) {
          const std::uint64_t lo = done + span * w / w_count;
          const std::uint64_t hi = done + span * (w + 1) / w_count;
          pool.emplace_back([&, w, lo, hi] {
            parts[w] = certify_ranks(g, decoder, cfg, rules, weight, lo, hi);
          });
        }
        for (auto& t : pool) t.join();
        merge(std::move(parts));
      }
      done = chunk_end;
      if (progress && done < end) progress(report);
    }
  } else {
    // Draw distinct supports up front so the set is independent of the
    // worker count; duplicates are rejected and redrawn.
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> supports;
    supports.reserve(mode.samples);
    std::uint64_t counter = 0;
    while (supports.size() < mode.samples) {
      auto support = sample_support(mode.seed, counter++, g.variable_count(), weight);
      if (seen.insert(support).second) supports.push_back(std::move(support));
    }
    report.requested = mode.samples;
    std::size_t done = 0;
    while (done < supports.size()) {
      const std::size_t chunk_end =
          std::min(supports.size(), done + static_cast<std::size_t>(kCheckpoint));
      if (workers == 1) {
        merge({certify_list(g, decoder, cfg, rules, supports, done, chunk_end)});
      } else {
        const std::size_t span = chunk_end - done;
        const int w_count =
            static_cast<int>(std::min<std::size_t>(span, static_cast<std::size_t>(workers)));
        std::vector<ChunkResult> parts(w_count);
        std::vector<std::thread> pool;
        for (int w = 0; w < w_count; ++w) {
          const std::size_t lo = done + span * w / w_count;
          const std::size_t hi = done + span * (w + 1) / w_count;
          pool.emplace_back([&, w, lo, hi] {
            parts[w] = certify_list(g, decoder, cfg, rules, supports, lo, hi);
          });
        }
        for (auto& t : pool) t.join();
        merge(std::move(parts));
      }
      done = chunk_end;
      if (progress && done < supports.size()) progress(report);
    }
  }
  return report;
}

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Lemma1:
      return "lemma1";
    case ViolationKind::Lemma2:
      return "lemma2";
    case ViolationKind::Theorem2Condition:
      return "theorem2-condition";
    case ViolationKind::RuleConsistency:
      return "rule-consistency";
  }
  return "?";
}

std::vector<AuditViolation> audit_lemma1(const DecodeTrace& trace, const ErrorPattern& pattern) {
  std::vector<AuditViolation> violations;
  for (const auto& rec : trace.records) {
    for (const auto& ev : rec.new_decimations) {
      const bool in_error = pattern.contains(ev.node);
      if (!in_error && ev.flag == -1) {
        violations.push_back({ViolationKind::Lemma1, pattern, ev.iteration, ev.node,
                              "initially correct node pinned to 1"});
      } else if (in_error && ev.flag == 1) {
        violations.push_back({ViolationKind::Lemma1, pattern, ev.iteration, ev.node,
                              "initially erroneous node pinned to 0"});
      }
    }
  }
  return violations;
}

std::vector<AuditViolation> audit_lemma2(const DecodeTrace& trace, const ErrorPattern& pattern) {
  const int first_pass_iter = trace.config.round_iters;
  bool support_decimated_in_round1 = false;
  for (const auto& rec : trace.records) {
    if (rec.iter != first_pass_iter) continue;
    for (const auto& ev : rec.new_decimations) {
      if (pattern.contains(ev.node)) support_decimated_in_round1 = true;
    }
  }
  std::vector<AuditViolation> violations;
  if (support_decimated_in_round1) return violations;  // premise does not hold
  for (const auto& rec : trace.records) {
    if (rec.iter <= first_pass_iter) continue;
    for (const auto& ev : rec.new_decimations) {
      if (pattern.contains(ev.node)) {
        violations.push_back({ViolationKind::Lemma2, pattern, ev.iteration, ev.node,
                              "error node decimated after a clean first round"});
      }
    }
  }
  return violations;
}

std::vector<AuditViolation> audit_rule_consistency(const DecodeTrace& trace,
                                                   const ErrorPattern& pattern,
                                                   const TannerGraph& g,
                                                   const DecodeRules& rules) {
  std::vector<AuditViolation> violations;
  for (const auto& rec : trace.records) {
    if (rec.new_decimations.empty()) continue;
    if (rec.c2v.size() != static_cast<std::size_t>(g.edge_count())) {
      violations.push_back({ViolationKind::RuleConsistency, pattern, rec.iter, -1,
                            "trace record lacks messages"});
      continue;
    }
    for (const auto& ev : rec.new_decimations) {
      const auto edges = g.var_edges(ev.node);
      const ChannelValue y = pattern.contains(ev.node) ? ChannelValue::MinusC : ChannelValue::PlusC;
      const DecimationFlag expect =
          rules.beta.decide(rec.c2v[edges[0]], rec.c2v[edges[1]], rec.c2v[edges[2]], y);
      if (expect != ev.flag) {
        violations.push_back({ViolationKind::RuleConsistency, pattern, ev.iteration, ev.node,
                              "committed flag disagrees with the decimation rule"});
      }
    }
  }
  return violations;
}

Theorem1Report verify_theorem1(const TannerGraph& g, long long limit, const DfaidConfig& cfg,
                               const DecodeRules& rules) {
  const auto gth = girth(g);
  if (!gth || *gth < 8) {
    throw std::invalid_argument("theorem 1 verification requires girth >= 8");
  }
  const auto cycles = enumerate_8cycles(g, limit);
  Theorem1Report report;
  report.cycles_enumerated = cycles.size();
  Decoder dec(g, rules);
  const int n = g.variable_count();
  std::vector<std::uint8_t> word(n);
  for (const auto& cycle : cycles) {
    CycleOutcome outcome;
    outcome.cycle = cycle;
    outcome.condition = theorem1_condition(g, cycle, gth);
    if (outcome.condition) {
      ++report.condition_true;
      std::fill(word.begin(), word.end(), std::uint8_t{0});
      for (int v : cycle.vnodes) word[v] = 1;
      DecodeTrace trace;
      trace.kind = DecoderKind::Dfaid;
      trace.config = cfg;
      const auto result = dec.dfaid(word, cfg, {}, &trace);
      outcome.converged = result.converged;
      outcome.iterations_used = result.iterations_used;
      for (const auto& ev : result.decimation_events) {
        if (std::find(cycle.vnodes.begin(), cycle.vnodes.end(), ev.node) !=
            cycle.vnodes.end()) {
          outcome.error_node_decimated = true;
        }
      }
      if (outcome.error_node_decimated) ++report.violations;
    }
    report.outcomes.push_back(outcome);
  }
  return report;
}

Theorem2Report monitor_theorem2(const TannerGraph& g, const DecodeTrace& trace_faid,
                                const DecodeTrace& trace_dfaid, const ErrorPattern& pattern) {
  Theorem2Report report;

  auto syndrome_zero = [&g](const std::vector<std::uint8_t>& decisions) {
    for (int c = 0; c < g.check_count(); ++c) {
      int parity = 0;
      for (int v : g.check_vars(c)) parity ^= decisions[v];
      if (parity) return false;
    }
    return true;
  };

  report.faid_iterations = static_cast<int>(trace_faid.records.size());
  report.faid_converged =
      !trace_faid.records.empty() && syndrome_zero(trace_faid.records.back().decisions);

  // Hypothesis: once a node is decimated, no check adjacent to any decimated
  // node emits a negative message in a later iteration.
  std::vector<int> commit_iter(g.variable_count(), -1);
  for (const auto& rec : trace_dfaid.records) {
    for (const auto& ev : rec.new_decimations) commit_iter[ev.node] = ev.iteration;
  }
  std::vector<int> check_watch_from(g.check_count(), -1);  // first iteration to watch
  for (int v = 0; v < g.variable_count(); ++v) {
    if (commit_iter[v] < 0) continue;
    for (int c : g.var_checks(v)) {
      if (check_watch_from[c] < 0 || commit_iter[v] + 1 < check_watch_from[c]) {
        check_watch_from[c] = commit_iter[v] + 1;
      }
    }
  }
  report.hypothesis_holds = true;
  for (const auto& rec : trace_dfaid.records) {
    if (rec.c2v.size() != static_cast<std::size_t>(g.edge_count())) continue;
    for (int c = 0; c < g.check_count() && report.hypothesis_holds; ++c) {
      if (check_watch_from[c] < 0 || rec.iter < check_watch_from[c]) continue;
      for (int e : g.check_edges(c)) {
        if (rec.c2v[e] < 0) {
          report.hypothesis_holds = false;
          report.detail = "check " + std::to_string(c) + " sent a negative message at iteration " +
                          std::to_string(rec.iter);
          break;
        }
      }
    }
    if (!report.hypothesis_holds) break;
  }

  report.dfaid_iterations = static_cast<int>(trace_dfaid.records.size());
  const bool dfaid_converged =
      !trace_dfaid.records.empty() && syndrome_zero(trace_dfaid.records.back().decisions);
  report.iteration_budget =
      trace_dfaid.config.decimation_rounds * trace_dfaid.config.round_iters +
      report.faid_iterations;

  if (report.hypothesis_holds && report.faid_converged) {
    report.conclusion_checked = true;
    report.conclusion_holds =
        dfaid_converged && report.dfaid_iterations <= report.iteration_budget;
    if (!report.conclusion_holds) {
      report.violations.push_back(
          {ViolationKind::Theorem2Condition, pattern, report.dfaid_iterations, -1,
           dfaid_converged ? "decimated run exceeded the iteration budget"
                           : "decimated run failed where the plain run converged"});
    }
  }
  return report;
}

namespace {

nlohmann::json pattern_json(const ErrorPattern& pattern) {
  return nlohmann::json(pattern.support);
}

}  // namespace

std::string certification_report_to_json(const CertificationReport& report) {
  nlohmann::json j;
  j["weight"] = report.weight;
  j["patterns_tested"] = report.patterns_tested;
  j["max_iterations_observed"] = report.max_iterations_observed;
  j["mode"] = report.exhaustive
                  ? nlohmann::json{{"kind", "exhaustive"}}
                  : nlohmann::json{{"kind", "sampled"}, {"seed", report.seed},
                                   {"count", report.requested}};
  j["complete"] = report.complete;
  auto failures = nlohmann::json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"support", pattern_json(f.pattern)},
                        {"residual_errors", f.residual_errors},
                        {"iterations_used", f.iterations_used}});
  }
  j["failures"] = std::move(failures);
  return j.dump(2) + "\n";
}

std::string violations_to_json(const std::vector<AuditViolation>& violations) {
  auto arr = nlohmann::json::array();
  for (const auto& v : violations) {
    arr.push_back({{"kind", violation_kind_name(v.kind)},
                   {"pattern", pattern_json(v.pattern)},
                   {"iteration", v.iteration},
                   {"node", v.node},
                   {"detail", v.detail}});
  }
  return arr.dump(2) + "\n";
}

std::string theorem1_report_to_json(const Theorem1Report& report, bool include_outcomes) {
  nlohmann::json j;
  j["cycles_enumerated"] = report.cycles_enumerated;
  j["condition_true"] = report.condition_true;
  j["violations"] = report.violations;
  if (include_outcomes) {
    auto arr = nlohmann::json::array();
    for (const auto& o : report.outcomes) {
      arr.push_back({{"vnodes", o.cycle.vnodes},
                     {"cnodes", o.cycle.cnodes},
                     {"condition", o.condition},
                     {"error_node_decimated", o.error_node_decimated},
                     {"converged", o.converged},
                     {"iterations_used", o.iterations_used}});
    }
    j["outcomes"] = std::move(arr);
  }
  return j.dump(2) + "\n";
}

std::string theorem2_report_to_json(const Theorem2Report& report) {
  nlohmann::json j;
  j["faid_converged"] = report.faid_converged;
  j["faid_iterations"] = report.faid_iterations;
  j["hypothesis_holds"] = report.hypothesis_holds;
  j["conclusion_checked"] = report.conclusion_checked;
  j["conclusion_holds"] = report.conclusion_holds;
  j["dfaid_iterations"] = report.dfaid_iterations;
  j["iteration_budget"] = report.iteration_budget;
  j["detail"] = report.detail;
  return j.dump(2) + "\n";
}

std::string failure_supports_to_text(const CertificationReport& report) {
  std::string out;
  for (const auto& f : report.failures) {
    for (std::size_t i = 0; i < f.pattern.support.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(f.pattern.support[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace faidlab
