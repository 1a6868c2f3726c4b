#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "faidlab/analysis.hpp"
#include "faidlab/sim.hpp"
#include "support.hpp"

using namespace faidlab;
using namespace testsupport;

namespace {

std::vector<std::uint8_t> word_of(int n, const std::vector<int>& support) {
  std::vector<std::uint8_t> word(n, 0);
  for (int v : support) word[v] ^= 1;
  return word;
}

DecodeTrace synthetic_trace(int round_iters, const std::vector<DecimationEvent>& events) {
  DecodeTrace trace;
  trace.kind = DecoderKind::Dfaid;
  trace.config = DfaidConfig{4, round_iters, 100};
  int max_iter = round_iters;
  for (const auto& ev : events) max_iter = std::max(max_iter, ev.iteration);
  for (int iter = 1; iter <= max_iter; ++iter) {
    IterationRecord rec;
    rec.iter = iter;
    for (const auto& ev : events) {
      if (ev.iteration == iter) rec.new_decimations.push_back(ev);
    }
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

}  // namespace

TEST_CASE("binomial and combination unranking") {
  CHECK(binomial(155, 1) == 155);
  CHECK(binomial(155, 2) == 11935);
  CHECK(binomial(155, 3) == 608685);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);  // saturates

  std::vector<std::vector<int>> all;
  for (std::uint64_t r = 0; r < binomial(8, 3); ++r) all.push_back(combination_unrank(8, 3, r));
  CHECK(all.size() == 56);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);  // lexicographic
  CHECK(all.front() == std::vector<int>{0, 1, 2});
  CHECK(all.back() == std::vector<int>{5, 6, 7});
  CHECK_THROWS_AS(combination_unrank(8, 3, 56), std::invalid_argument);
}

TEST_CASE("exhaustive weight-1 certification on the tanner code") {
  const auto g = construct_tanner_155();
  const auto report =
      certify(g, DecoderKind::Faid, DfaidConfig{0, 3, 100}, 1, CertifyMode::Exhaustive());
  CHECK(report.patterns_tested == 155);
  CHECK(report.requested == 155);
  CHECK(report.failures.empty());
  CHECK(report.complete);
  CHECK(report.max_iterations_observed <= 5);
}

TEST_CASE("certification is thread-count invariant") {
  const auto g = construct_tanner_155();
  const auto a =
      certify(g, DecoderKind::Dfaid, DfaidConfig{1, 3, 100}, 1, CertifyMode::Exhaustive(), 1);
  const auto b =
      certify(g, DecoderKind::Dfaid, DfaidConfig{1, 3, 100}, 1, CertifyMode::Exhaustive(), 3);
  CHECK(a.patterns_tested == b.patterns_tested);
  CHECK(a.failures.size() == b.failures.size());
  CHECK(a.max_iterations_observed == b.max_iterations_observed);
}

TEST_CASE("certification budget yields a partial report") {
  const auto g = construct_tanner_155();
  auto mode = CertifyMode::Exhaustive(500);
  const auto report = certify(g, DecoderKind::Faid, DfaidConfig{0, 3, 20}, 2, mode);
  CHECK(report.patterns_tested == 500);
  CHECK(!report.complete);

  mode = CertifyMode::Exhaustive();
  mode.start_rank = 150;
  const auto tail = certify(g, DecoderKind::Faid, DfaidConfig{0, 3, 20}, 1, mode);
  CHECK(tail.patterns_tested == 5);
  CHECK(!tail.complete);
}

TEST_CASE("sampled certification draws distinct seeded supports") {
  const auto g = construct_tanner_155();
  const auto a = certify(g, DecoderKind::Faid, DfaidConfig{0, 3, 100}, 5,
                         CertifyMode::Sampled(123, 500));
  CHECK(a.patterns_tested == 500);
  CHECK(a.failures.empty());
  const auto b = certify(g, DecoderKind::Faid, DfaidConfig{0, 3, 100}, 5,
                         CertifyMode::Sampled(123, 500), 2);
  CHECK(b.patterns_tested == a.patterns_tested);
  CHECK(b.max_iterations_observed == a.max_iterations_observed);
}

TEST_CASE("lemma-1 audit flags wrong-direction pins") {
  const ErrorPattern pattern{{1, 2}};
  // A correct node pinned to 1 and an error node pinned to 0.
  auto trace = synthetic_trace(3, {{3, 5, -1}, {3, 1, 1}});
  const auto violations = audit_lemma1(trace, pattern);
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].kind == ViolationKind::Lemma1);
  CHECK(violations[0].node == 5);
  CHECK(violations[1].node == 1);

  // Correct-direction pins pass.
  trace = synthetic_trace(3, {{3, 5, 1}, {3, 1, -1}});
  CHECK(audit_lemma1(trace, pattern).empty());
}

TEST_CASE("lemma-2 audit keys on the first decimation pass") {
  const ErrorPattern pattern{{7}};
  // Clean first round, support node decimated later: violation.
  auto trace = synthetic_trace(3, {{3, 1, 1}, {6, 7, -1}});
  const auto violations = audit_lemma2(trace, pattern);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == ViolationKind::Lemma2);
  CHECK(violations[0].iteration == 6);

  // Support node decimated in round 1: the implication says nothing.
  trace = synthetic_trace(3, {{3, 7, -1}, {6, 7, -1}});
  CHECK(audit_lemma2(trace, pattern).empty());
}

TEST_CASE("rule-consistency audit accepts real traces and catches tampering") {
  const auto g = construct_tanner_155();
  const auto cycle = enumerate_8cycles(g, 1).front();
  const std::vector<int> support(cycle.vnodes.begin(), cycle.vnodes.end());
  const ErrorPattern pattern{support};
  auto [result, trace] = run_with_trace(DecoderKind::Dfaid, g, word_of(155, support),
                                        DfaidConfig{1, 3, 100});
  REQUIRE(!result.decimation_events.empty());
  CHECK(audit_rule_consistency(trace, pattern, g).empty());

  for (auto& rec : trace.records) {
    if (!rec.new_decimations.empty()) {
      rec.new_decimations.front().flag = -rec.new_decimations.front().flag;
      break;
    }
  }
  CHECK(audit_rule_consistency(trace, pattern, g).size() == 1);
}

TEST_CASE("seeded decimation traces audit clean") {
  const auto g = construct_tanner_155();
  Decoder dec(g);
  std::uint64_t events = 0;
  for (std::uint64_t s = 0; s < 1500; ++s) {
    const int weight = 1 + static_cast<int>(s % 5);
    const auto support = sample_support(77, s, 155, weight);
    const ErrorPattern pattern{support};
    DecodeTrace trace;
    trace.kind = DecoderKind::Dfaid;
    const DfaidConfig cfg{s % 2 ? 4 : 1, 3, 100};
    trace.config = cfg;
    const auto result = dec.dfaid(word_of(155, support), cfg, {}, &trace);
    events += result.decimation_events.size();
    CHECK(audit_lemma1(trace, pattern).empty());
    CHECK(audit_lemma2(trace, pattern).empty());
    CHECK(audit_rule_consistency(trace, pattern, g).empty());
  }
  CHECK(events > 0);
}

TEST_CASE("cycle safety verification on hand-built graphs") {
  const auto deep_report = verify_theorem1(fig1_deep(), -1, DfaidConfig{1, 3, 100});
  CHECK(deep_report.cycles_enumerated == 53);
  CHECK(deep_report.condition_true == 53);
  CHECK(deep_report.violations == 0);
  bool core_seen = false;
  for (const auto& o : deep_report.outcomes) {
    if (o.cycle.vnodes == std::array<int, 4>{0, 1, 2, 3}) {
      core_seen = true;
      CHECK(o.condition);
      CHECK(o.converged);  // the supported shell corrects the pattern
      CHECK(!o.error_node_decimated);
    }
  }
  CHECK(core_seen);

  // Stuck-but-safe shell: no convergence on the core cycle, still no
  // error-node decimation anywhere.
  const auto tree_report = verify_theorem1(fig1_tree(), -1, DfaidConfig{4, 3, 60});
  CHECK(tree_report.violations == 0);
  CHECK(tree_report.condition_true == tree_report.cycles_enumerated);

  CHECK_THROWS_AS(verify_theorem1(small_code_6x10()), std::invalid_argument);  // girth 4
}

TEST_CASE("cycle safety verification on the tanner code") {
  const auto report = verify_theorem1(construct_tanner_155(), -1, DfaidConfig{4, 3, 100});
  CHECK(report.cycles_enumerated == 465);
  CHECK(report.condition_true == 465);
  CHECK(report.violations == 0);
  for (const auto& o : report.outcomes) CHECK(o.converged);
}

TEST_CASE("iteration-bound monitor separates hypothesis from conclusion") {
  const auto g = construct_tanner_155();
  std::uint64_t hypothesis_true = 0, hypothesis_false = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto support = sample_support(5150, s, 155, 5);
    const auto word = word_of(155, support);
    const DfaidConfig cfg{1, 3, 100};
    const auto [faid_res, faid_trace] = run_with_trace(DecoderKind::Faid, g, word, cfg);
    const auto [dfaid_res, dfaid_trace] = run_with_trace(DecoderKind::Dfaid, g, word, cfg);
    const auto report = monitor_theorem2(g, faid_trace, dfaid_trace, ErrorPattern{support});
    CHECK(report.faid_converged);
    if (report.hypothesis_holds) {
      ++hypothesis_true;
      REQUIRE(report.conclusion_checked);
      CHECK(report.conclusion_holds);
      CHECK(report.violations.empty());
      CHECK(report.dfaid_iterations <= report.iteration_budget);
    } else {
      ++hypothesis_false;
      CHECK(!report.conclusion_checked);
      CHECK(!report.detail.empty());
    }
  }
  CHECK(hypothesis_true + hypothesis_false == 1000);
  CHECK(hypothesis_true > 0);
}

TEST_CASE("monitor detects a planted bad message") {
  const auto g = tutte_coxeter();
  DecodeTrace faid_trace;
  faid_trace.kind = DecoderKind::Faid;
  faid_trace.config = DfaidConfig{0, 3, 100};
  IterationRecord good;
  good.iter = 1;
  good.decisions.assign(15, 0);  // all-zero: syndrome holds
  faid_trace.records.push_back(good);

  DecodeTrace dfaid_trace;
  dfaid_trace.kind = DecoderKind::Dfaid;
  dfaid_trace.config = DfaidConfig{1, 3, 100};
  for (int iter = 1; iter <= 4; ++iter) {
    IterationRecord rec;
    rec.iter = iter;
    rec.decisions.assign(15, 0);
    rec.v2c.assign(g.edge_count(), 0);
    rec.c2v.assign(g.edge_count(), 0);
    if (iter == 3) rec.new_decimations.push_back({3, 0, 1});
    if (iter == 4) {
      const int check = g.var_checks(0)[0];
      rec.c2v[g.check_edges(check)[0]] = -1;  // bad message from an adjacent check
    }
    dfaid_trace.records.push_back(std::move(rec));
  }
  const auto report = monitor_theorem2(g, faid_trace, dfaid_trace, ErrorPattern{{}});
  CHECK(!report.hypothesis_holds);
  CHECK(!report.conclusion_checked);
  CHECK(report.detail.find("negative message") != std::string::npos);
}

TEST_CASE("report serialization") {
  CertificationReport report;
  report.weight = 4;
  report.patterns_tested = 2;
  report.failures.push_back({ErrorPattern{{3, 1, 4, 100}}, {3, 1}, 100});
  const auto text = failure_supports_to_text(report);
  CHECK(text == "3 1 4 100\n");
  const auto json = certification_report_to_json(report);
  CHECK(json.find("\"patterns_tested\": 2") != std::string::npos);

  const auto violations_json =
      violations_to_json({{ViolationKind::Lemma2, ErrorPattern{{9}}, 6, 9, "detail"}});
  CHECK(violations_json.find("lemma2") != std::string::npos);
}
