#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "faidlab/decoder.hpp"
#include "faidlab/tanner_graph.hpp"

namespace faidlab {

// Set of variable indices flipped relative to the all-zero codeword.
struct ErrorPattern {
  std::vector<int> support;

  std::vector<std::uint8_t> to_word(int n) const;
  bool contains(int v) const;
};

struct CertFailure {
  ErrorPattern pattern;
  std::vector<int> residual_errors;
  int iterations_used = 0;
};

struct CertificationReport {
  int weight = 0;
  std::uint64_t patterns_tested = 0;
  std::vector<CertFailure> failures;
  int max_iterations_observed = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;       // sampled mode
  std::uint64_t requested = 0;  // sampled: sample count; exhaustive: C(n,k)
  bool complete = true;         // false when the pattern budget ran out
};

struct CertifyMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // Exhaustive-mode pattern budget; exceeding it yields a partial report
  // with complete=false.
  std::uint64_t max_patterns = UINT64_MAX;
  std::uint64_t start_rank = 0;  // resume point in lexicographic order

  static CertifyMode Exhaustive(std::uint64_t budget = UINT64_MAX) {
    return {true, 0, 0, budget, 0};
  }
  static CertifyMode Sampled(std::uint64_t seed, std::uint64_t count) {
    return {false, count, seed, UINT64_MAX, 0};
  }
};

using CertifyProgress = std::function<void(const CertificationReport& partial)>;

// Decodes every weight-k pattern (or `mode.samples` seeded distinct ones)
// under the all-zero codeword and reports the failures. Exhaustive order is
// lexicographic over supports; the progress callback fires every 10^6
// patterns with a snapshot of the running report.
CertificationReport certify(const TannerGraph& g, DecoderKind decoder,
                            const DfaidConfig& cfg, int weight, const CertifyMode& mode,
                            int threads = 1, const CertifyProgress& progress = nullptr,
                            const DecodeRules& rules = default_rules());

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

// Support of lexicographic combination number `rank` among weight-k subsets.
std::vector<int> combination_unrank(int n, int k, std::uint64_t rank);

enum class ViolationKind { Lemma1, Lemma2, Theorem2Condition, RuleConsistency };

const char* violation_kind_name(ViolationKind kind);

struct AuditViolation {
  ViolationKind kind = ViolationKind::Lemma1;
  ErrorPattern pattern;
  int iteration = 0;
  int node = -1;
  std::string detail;
};

// A decimation event must never pin an initially-correct node to 1 or an
// initially-wrong node to 0.
std::vector<AuditViolation> audit_lemma1(const DecodeTrace& trace, const ErrorPattern& pattern);

// If no support node is decimated in the first decimation pass, none may be
// decimated later.
std::vector<AuditViolation> audit_lemma2(const DecodeTrace& trace, const ErrorPattern& pattern);

// Every committed flag must equal the decimation rule applied to the
// incoming messages and channel value recorded at that iteration.
std::vector<AuditViolation> audit_rule_consistency(const DecodeTrace& trace,
                                                   const ErrorPattern& pattern,
                                                   const TannerGraph& g,
                                                   const DecodeRules& rules = default_rules());

struct CycleOutcome {
  EightCycle cycle;
  bool condition = false;          // structural condition held
  bool error_node_decimated = false;  // only meaningful when condition is true
  bool converged = false;
  int iterations_used = 0;
};

struct Theorem1Report {
  std::uint64_t cycles_enumerated = 0;
  std::uint64_t condition_true = 0;
  std::uint64_t violations = 0;  // condition-true cycles that decimated an error node
  std::vector<CycleOutcome> outcomes;
};

// For every enumerated 8-cycle whose structural condition holds, injects the
// 4-error pattern on its variables and asserts that no error node is ever
// decimated. Requires girth >= 8.
Theorem1Report verify_theorem1(const TannerGraph& g, long long limit = -1,
                               const DfaidConfig& cfg = {4, 3, 100},
                               const DecodeRules& rules = default_rules());

struct Theorem2Report {
  bool faid_converged = false;
  int faid_iterations = 0;     // I
  bool hypothesis_holds = false;   // no check adjacent to a decimated node went negative
  bool conclusion_checked = false; // hypothesis held and the FAID run converged
  bool conclusion_holds = false;   // DFAID total iterations <= rounds*round_iters + I
  int dfaid_iterations = 0;
  int iteration_budget = 0;
  std::vector<AuditViolation> violations;  // conclusion failures
  std::string detail;
};

// Audits the two traces of one pattern: when no decimated node's adjacent
// check ever emits a negative message, the decimated run must finish within
// its decimation overhead plus the plain run's iteration count.
Theorem2Report monitor_theorem2(const TannerGraph& g, const DecodeTrace& trace_faid,
                                const DecodeTrace& trace_dfaid, const ErrorPattern& pattern);

// JSON renderings for the CLI and file export.
std::string certification_report_to_json(const CertificationReport& report);
std::string violations_to_json(const std::vector<AuditViolation>& violations);
std::string theorem1_report_to_json(const Theorem1Report& report, bool include_outcomes);
std::string theorem2_report_to_json(const Theorem2Report& report);

// One support per line, space-separated indices (replay format).
std::string failure_supports_to_text(const CertificationReport& report);

}  // namespace faidlab
