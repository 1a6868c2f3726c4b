#include "faidlab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace faidlab {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  // Rejection below the largest multiple of bound.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  for (;;) {
    const std::uint64_t u = next();
    if (u < limit) return u % bound;
  }
}

SplitMix64 keyed_stream(std::uint64_t seed, std::uint64_t counter) {
  // Full avalanche over (seed, counter) so streams of nearby counters are
  // unrelated sequences, not shifted copies of one another.
  SplitMix64 a{seed};
  SplitMix64 b{a.next() ^ (counter * 0x9E3779B97F4A7C15ULL)};
  return SplitMix64{b.next()};
}

std::vector<int> bsc_sample(const BscChannel& channel, std::uint64_t frame_index, int n) {
  if (!(channel.alpha >= 0.0 && channel.alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1)");
  }
  // Per-bit draws share the stream, so a support at alpha is a superset of
  // the same frame's support at any smaller alpha.
  const auto threshold =
      static_cast<std::uint64_t>(channel.alpha * 18446744073709551616.0 /* 2^64 */);
  SplitMix64 stream = keyed_stream(channel.seed, frame_index);
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (stream.next() < threshold) support.push_back(i);
  }
  return support;
}

std::vector<int> sample_support(std::uint64_t seed, std::uint64_t sample_index, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("weight out of range");
  SplitMix64 stream = keyed_stream(seed, sample_index);
  std::vector<int> support;
  support.reserve(k);
  while (static_cast<int>(support.size()) < k) {
    const int idx = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n)));
    if (std::find(support.begin(), support.end(), idx) == support.end()) {
      support.push_back(idx);
    }
  }
  std::sort(support.begin(), support.end());
  return support;
}

namespace {

struct FrameTally {
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t iteration_sum = 0;

  void merge(const FrameTally& other) {
    frames += other.frames;
    frame_errors += other.frame_errors;
    bit_errors += other.bit_errors;
    iteration_sum += other.iteration_sum;
  }
};

// Decodes frames [first, last) of one alpha point.
FrameTally run_frames(const TannerGraph& g, DecoderKind kind, const FerOptions& opt,
                      double alpha, std::uint64_t first, std::uint64_t last,
                      const std::vector<std::vector<std::uint8_t>>& basis) {
  Decoder dec(g, opt.rules);
  const int n = g.variable_count();
  const BscChannel channel{alpha, opt.seed};
  std::vector<std::uint8_t> word(n), reference;
  FrameTally tally;
  for (std::uint64_t f = first; f < last; ++f) {
    const auto support = bsc_sample(channel, f, n);
    if (opt.random_codewords) {
      reference.assign(n, 0);
      // Codeword = random combination of basis rows, drawn from a stream
      // salted away from the flip stream.
      SplitMix64 stream = keyed_stream(opt.seed ^ 0x636f646577ULL, f);
      for (const auto& row : basis) {
        if (stream.next() & 1) {
          for (int i = 0; i < n; ++i) reference[i] ^= row[i];
        }
      }
      word = reference;
    } else {
      std::fill(word.begin(), word.end(), std::uint8_t{0});
      reference.assign(n, 0);
    }
    for (int i : support) word[i] ^= 1;

    DecodeResult result;
    switch (kind) {
      case DecoderKind::Faid:
        result = dec.faid(word, opt.cfg.max_iters, reference);
        break;
      case DecoderKind::Dfaid:
        result = dec.dfaid(word, opt.cfg, reference);
        break;
      case DecoderKind::Bp:
        result = dec.bp(word, alpha, opt.cfg.max_iters, reference);
        break;
    }
    ++tally.frames;
    tally.iteration_sum += static_cast<std::uint64_t>(result.iterations_used);
    if (!result.residual_errors.empty()) {
      ++tally.frame_errors;
      tally.bit_errors += result.residual_errors.size();
    }
  }
  return tally;
}

}  // namespace

std::vector<FerRecord> fer_simulate(const TannerGraph& g, DecoderKind decoder,
                                    const std::vector<double>& alphas,
                                    const FerOptions& options) {
  options.cfg.validate();
  if (options.stop.max_frames == 0) throw std::invalid_argument("max_frames must be > 0");
  const int threads = std::max(1, options.threads);

  std::vector<std::vector<std::uint8_t>> basis;
  if (options.random_codewords) basis = gf2_nullspace_basis(g);

  // Frames are consumed in fixed-size blocks and the stop rule is evaluated
  // on block boundaries, so the processed frame set does not depend on the
  // thread count.
  constexpr std::uint64_t kBlock = 1024;

  std::vector<FerRecord> records;
  for (double alpha : alphas) {
    if (decoder == DecoderKind::Bp && !(alpha > 0.0 && alpha < 0.5)) {
      throw std::invalid_argument("alpha must lie in (0, 0.5)");
    }
    FrameTally total;
    std::uint64_t next_frame = 0;
    while (next_frame < options.stop.max_frames &&
           total.frame_errors < options.stop.min_frame_errors) {
      const std::uint64_t block_end =
          std::min(options.stop.max_frames, next_frame + kBlock);
      if (threads == 1 || block_end - next_frame < 2) {
        total.merge(run_frames(g, decoder, options, alpha, next_frame, block_end, basis));
      } else {
        const std::uint64_t span = block_end - next_frame;
        const int workers = static_cast<int>(
            std::min<std::uint64_t>(span, static_cast<std::uint64_t>(threads)));
        std::vector<FrameTally> parts(workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
          const std::uint64_t lo = next_frame + span * w / workers;
          const std::uint64_t hi = next_frame + span * (w + 1) / workers;
          pool.emplace_back([&, w, lo, hi] {
            parts[w] = run_frames(g, decoder, options, alpha, lo, hi, basis);
          });
        }
        for (auto& t : pool) t.join();
        for (const auto& part : parts) total.merge(part);
      }
      next_frame = block_end;
    }

    FerRecord rec;
    rec.alpha = alpha;
    rec.decoder = decoder;
    rec.frames = total.frames;
    rec.frame_errors = total.frame_errors;
    rec.bit_errors = total.bit_errors;
    rec.fer = total.frames ? static_cast<double>(total.frame_errors) / total.frames : 0.0;
    rec.avg_iterations =
        total.frames ? static_cast<double>(total.iteration_sum) / total.frames : 0.0;
    rec.seed = options.seed;
    records.push_back(rec);
  }
  return records;
}

std::string fer_to_csv(const std::vector<FerRecord>& records) {
  std::string out = "alpha,decoder,frames,frame_errors,bit_errors,fer,avg_iters,seed\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%.6g,%s,%llu,%llu,%llu,%.6g,%.6g,%llu\n", r.alpha,
                  decoder_kind_name(r.decoder), static_cast<unsigned long long>(r.frames),
                  static_cast<unsigned long long>(r.frame_errors),
                  static_cast<unsigned long long>(r.bit_errors), r.fer, r.avg_iterations,
                  static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

}  // namespace faidlab
