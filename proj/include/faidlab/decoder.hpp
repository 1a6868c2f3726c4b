#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "faidlab/alphabet.hpp"
#include "faidlab/tanner_graph.hpp"

namespace faidlab {

enum class DecoderKind { Faid, Dfaid, Bp };

const char* decoder_kind_name(DecoderKind kind);
DecoderKind decoder_kind_from_name(const std::string& name);

// Decimation schedule: `decimation_rounds` rounds of `round_iters` iterations
// each, a decimation pass and restart at the end of every round, then free
// running until `max_iters` total iterations.
struct DfaidConfig {
  int decimation_rounds = 1;
  int round_iters = 3;
  int max_iters = 100;

  void validate() const;
};

struct DecimationEvent {
  int iteration = 0;
  int node = 0;
  DecimationFlag flag = 0;

  friend bool operator==(const DecimationEvent&, const DecimationEvent&) = default;
};

struct DecodeResult {
  bool converged = false;  // syndrome of `codeword` is all-zero
  int iterations_used = 0;
  std::vector<std::uint8_t> codeword;
  std::vector<DecimationEvent> decimation_events;
  std::vector<int> residual_errors;  // vs the reference word (all-zero default)
};

// End-of-iteration snapshot. Message vectors are indexed by edge id and are
// empty for the floating-point decoder.
struct IterationRecord {
  int iter = 0;
  std::vector<MessageLevel> v2c;
  std::vector<MessageLevel> c2v;
  std::vector<std::uint8_t> decisions;
  std::vector<DecimationEvent> new_decimations;
};

struct DecodeTrace {
  DecoderKind kind = DecoderKind::Faid;
  DfaidConfig config;
  double bp_alpha = 0.0;
  std::vector<IterationRecord> records;
};

// Line-delimited JSON, one record per iteration:
// {"iter":k,"v2c":[...],"c2v":[...],"decisions":[...],"new_decimations":[[node,flag],...]}
std::string trace_to_jsonl(const DecodeTrace& trace);

// Reusable decoding workspace bound to one graph. Requires a 3-left-regular
// graph with minimum check degree 2 for the finite-alphabet decoders; the
// same check-degree requirement is applied to the BP baseline.
class Decoder {
 public:
  explicit Decoder(const TannerGraph& g, const DecodeRules& rules = default_rules());

  DecodeResult faid(std::span<const std::uint8_t> received, int max_iters,
                    std::span<const std::uint8_t> reference = {},
                    DecodeTrace* trace = nullptr);

  DecodeResult dfaid(std::span<const std::uint8_t> received, const DfaidConfig& cfg,
                     std::span<const std::uint8_t> reference = {},
                     DecodeTrace* trace = nullptr);

  DecodeResult bp(std::span<const std::uint8_t> received, double alpha, int max_iters,
                  std::span<const std::uint8_t> reference = {},
                  DecodeTrace* trace = nullptr);

  const TannerGraph& graph() const { return g_; }

 private:
  void load_channel(std::span<const std::uint8_t> received);
  void vn_pass();
  void cn_pass();
  void decide_pass();
  bool syndrome_zero() const;
  void record(DecodeTrace* trace, int iter, std::vector<DecimationEvent> events) const;
  std::vector<DecimationEvent> decimation_pass(int iter);
  DecodeResult finish(bool converged, int iters, std::vector<DecimationEvent> events,
                      std::span<const std::uint8_t> reference) const;

  const TannerGraph& g_;
  DecodeRules rules_;
  std::vector<std::int8_t> channel_;  // +1 / -1 per variable
  std::vector<MessageLevel> v2c_, c2v_;
  std::vector<DecimationFlag> flags_;
  std::vector<std::uint8_t> decisions_;
  // BP workspace.
  std::vector<double> bp_v2c_, bp_c2v_, bp_tanh_;
  std::vector<double> bp_llr_;
};

// One-shot wrappers.
DecodeResult faid_decode(const TannerGraph& g, std::span<const std::uint8_t> received,
                         int max_iters, const DecodeRules& rules = default_rules(),
                         std::span<const std::uint8_t> reference = {});

DecodeResult dfaid_decode(const TannerGraph& g, std::span<const std::uint8_t> received,
                          const DfaidConfig& cfg, const DecodeRules& rules = default_rules(),
                          std::span<const std::uint8_t> reference = {});

DecodeResult bp_decode(const TannerGraph& g, std::span<const std::uint8_t> received,
                       double alpha, int max_iters,
                       std::span<const std::uint8_t> reference = {});

// Runs the selected decoder with full tracing; decisions are identical to an
// untraced run. `cfg.max_iters` bounds every decoder kind; `bp_alpha` is only
// used by the BP baseline.
std::pair<DecodeResult, DecodeTrace> run_with_trace(
    DecoderKind kind, const TannerGraph& g, std::span<const std::uint8_t> received,
    const DfaidConfig& cfg, double bp_alpha = 0.01,
    const DecodeRules& rules = default_rules(),
    std::span<const std::uint8_t> reference = {});

}  // namespace faidlab
