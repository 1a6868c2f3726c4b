#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "faidlab/decoder.hpp"
#include "faidlab/tanner_graph.hpp"

namespace faidlab {

// splitmix64: the per-stream generator behind all sampling. Streams are keyed
// by (seed, counter) so any frame or sample is reproducible in isolation.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound);
};

// Independent stream for a (seed, counter) pair.
SplitMix64 keyed_stream(std::uint64_t seed, std::uint64_t counter);

struct BscChannel {
  double alpha = 0.0;   // crossover probability, in (0, 0.5) for simulation
  std::uint64_t seed = 0;
};

// Support of the flips applied to frame `frame_index`: each bit independently
// with probability alpha, deterministic in (seed, frame_index, bit index).
std::vector<int> bsc_sample(const BscChannel& channel, std::uint64_t frame_index, int n);

// Uniform weight-k support over n positions for sample index `sample_index`.
std::vector<int> sample_support(std::uint64_t seed, std::uint64_t sample_index, int n, int k);

struct StopRule {
  std::uint64_t min_frame_errors = 100;
  std::uint64_t max_frames = 1000000;
};

struct FerRecord {
  double alpha = 0.0;
  DecoderKind decoder = DecoderKind::Faid;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t bit_errors = 0;
  double fer = 0.0;
  double avg_iterations = 0.0;
  std::uint64_t seed = 0;
};

struct FerOptions {
  DfaidConfig cfg;            // max_iters bounds every decoder kind
  std::uint64_t seed = 0;
  StopRule stop;
  int threads = 1;
  bool random_codewords = false;  // transmit random codewords instead of all-zero
  DecodeRules rules;
};

// Monte-Carlo frame-error-rate sweep. All-zero transmission by default; the
// outcome is a deterministic function of (graph, decoder, options) and does
// not depend on the thread count.
std::vector<FerRecord> fer_simulate(const TannerGraph& g, DecoderKind decoder,
                                    const std::vector<double>& alphas,
                                    const FerOptions& options);

// CSV with header alpha,decoder,frames,frame_errors,bit_errors,fer,avg_iters,seed.
std::string fer_to_csv(const std::vector<FerRecord>& records);

}  // namespace faidlab
