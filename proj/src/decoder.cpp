#include "faidlab/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace faidlab {

const char* decoder_kind_name(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::Faid:
      return "faid";
    case DecoderKind::Dfaid:
      return "dfaid";
    case DecoderKind::Bp:
      return "bp";
  }
  return "?";
}

DecoderKind decoder_kind_from_name(const std::string& name) {
  if (name == "faid") return DecoderKind::Faid;
  if (name == "dfaid") return DecoderKind::Dfaid;
  if (name == "bp") return DecoderKind::Bp;
  throw std::invalid_argument("unknown decoder: " + name);
}

void DfaidConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (round_iters < 1) throw std::invalid_argument("round_iters must be >= 1");
  if (decimation_rounds < 0) throw std::invalid_argument("decimation rounds must be >= 0");
  if (static_cast<long long>(decimation_rounds) * round_iters > max_iters) {
    throw std::invalid_argument("decimation rounds exceed the iteration budget");
  }
}

std::string trace_to_jsonl(const DecodeTrace& trace) {
  std::string out;
  for (const auto& rec : trace.records) {
    nlohmann::json j;
    j["iter"] = rec.iter;
    j["v2c"] = std::vector<int>(rec.v2c.begin(), rec.v2c.end());
    j["c2v"] = std::vector<int>(rec.c2v.begin(), rec.c2v.end());
    j["decisions"] = std::vector<int>(rec.decisions.begin(), rec.decisions.end());
    auto events = nlohmann::json::array();
    for (const auto& ev : rec.new_decimations) {
      events.push_back({ev.node, static_cast<int>(ev.flag)});
    }
    j["new_decimations"] = std::move(events);
    out += j.dump();
    out += '\n';
  }
  return out;
}

Decoder::Decoder(const TannerGraph& g, const DecodeRules& rules) : g_(g), rules_(rules) {
  const auto dv = g.left_degree();
  if (!dv || *dv != 3) {
    throw std::invalid_argument("decoder requires a 3-left-regular graph");
  }
  if (g.min_check_degree() < 2) {
    throw std::invalid_argument("decoder requires every check degree >= 2");
  }
  channel_.resize(g.variable_count());
  v2c_.resize(g.edge_count());
  c2v_.resize(g.edge_count());
  flags_.resize(g.variable_count());
  decisions_.resize(g.variable_count());
}

void Decoder::load_channel(std::span<const std::uint8_t> received) {
  if (static_cast<int>(received.size()) != g_.variable_count()) {
    throw std::invalid_argument("received word length disagrees with the code length");
  }
  for (int v = 0; v < g_.variable_count(); ++v) {
    channel_[v] = received[v] ? -1 : 1;
  }
}

void Decoder::vn_pass() {
  const auto& lut = rules_.lut;
  for (int v = 0; v < g_.variable_count(); ++v) {
    const auto edges = g_.var_edges(v);
    if (flags_[v] != 0) {
      const MessageLevel pinned = static_cast<MessageLevel>(flags_[v] * kLevelMax);
      for (int e : edges) v2c_[e] = pinned;
      continue;
    }
    const ChannelValue y = channel_[v] > 0 ? ChannelValue::PlusC : ChannelValue::MinusC;
    const MessageLevel a = c2v_[edges[0]], b = c2v_[edges[1]], c = c2v_[edges[2]];
    v2c_[edges[0]] = lut.apply(b, c, y);
    v2c_[edges[1]] = lut.apply(a, c, y);
    v2c_[edges[2]] = lut.apply(a, b, y);
  }
}

void Decoder::cn_pass() {
  for (int c = 0; c < g_.check_count(); ++c) {
    const auto edges = g_.check_edges(c);
    int parity = 0;
    int min1 = 100, min2 = 100, min1_edge = -1;
    for (int e : edges) {
      const int m = v2c_[e];
      if (m < 0) parity ^= 1;
      const int mag = m < 0 ? -m : m;
      if (mag < min1) {
        min2 = min1;
        min1 = mag;
        min1_edge = e;
      } else if (mag < min2) {
        min2 = mag;
      }
    }
    for (int e : edges) {
      const int mag = e == min1_edge ? min2 : min1;
      if (mag == 0) {
        c2v_[e] = 0;
        continue;
      }
      const int neg = parity ^ (v2c_[e] < 0 ? 1 : 0);
      c2v_[e] = static_cast<MessageLevel>(neg ? -mag : mag);
    }
  }
}

void Decoder::decide_pass() {
  for (int v = 0; v < g_.variable_count(); ++v) {
    if (flags_[v] != 0) {
      decisions_[v] = flags_[v] > 0 ? 0 : 1;
      continue;
    }
    const auto edges = g_.var_edges(v);
    const int sum = c2v_[edges[0]] + c2v_[edges[1]] + c2v_[edges[2]];
    if (sum > 0) {
      decisions_[v] = 0;
    } else if (sum < 0) {
      decisions_[v] = 1;
    } else {
      decisions_[v] = channel_[v] > 0 ? 0 : 1;
    }
  }
}

bool Decoder::syndrome_zero() const {
  for (int c = 0; c < g_.check_count(); ++c) {
    int parity = 0;
    for (int v : g_.check_vars(c)) parity ^= decisions_[v];
    if (parity) return false;
  }
  return true;
}

void Decoder::record(DecodeTrace* trace, int iter, std::vector<DecimationEvent> events) const {
  if (!trace) return;
  IterationRecord rec;
  rec.iter = iter;
  rec.v2c = v2c_;
  rec.c2v = c2v_;
  rec.decisions = decisions_;
  rec.new_decimations = std::move(events);
  trace->records.push_back(std::move(rec));
}

std::vector<DecimationEvent> Decoder::decimation_pass(int iter) {
  // All nodes are judged against the same end-of-iteration messages; the
  // rule never reads flags, so committing in place is equivalent to a
  // simultaneous commit.
  std::vector<DecimationEvent> events;
  for (int v = 0; v < g_.variable_count(); ++v) {
    if (flags_[v] != 0) continue;
    const auto edges = g_.var_edges(v);
    const ChannelValue y = channel_[v] > 0 ? ChannelValue::PlusC : ChannelValue::MinusC;
    const DecimationFlag f =
        rules_.beta.decide(c2v_[edges[0]], c2v_[edges[1]], c2v_[edges[2]], y);
    if (f != 0) {
      flags_[v] = f;
      events.push_back({iter, v, f});
    }
  }
  return events;
}

DecodeResult Decoder::finish(bool converged, int iters, std::vector<DecimationEvent> events,
                             std::span<const std::uint8_t> reference) const {
  if (!reference.empty() && static_cast<int>(reference.size()) != g_.variable_count()) {
    throw std::invalid_argument("reference word length disagrees with the code length");
  }
  DecodeResult result;
  result.converged = converged;
  result.iterations_used = iters;
  result.codeword = decisions_;
  result.decimation_events = std::move(events);
  for (int v = 0; v < g_.variable_count(); ++v) {
    const std::uint8_t ref = reference.empty() ? 0 : reference[v];
    if (decisions_[v] != ref) result.residual_errors.push_back(v);
  }
  return result;
}

DecodeResult Decoder::faid(std::span<const std::uint8_t> received, int max_iters,
                           std::span<const std::uint8_t> reference, DecodeTrace* trace) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  load_channel(received);
  std::fill(v2c_.begin(), v2c_.end(), MessageLevel{0});
  std::fill(c2v_.begin(), c2v_.end(), MessageLevel{0});
  std::fill(flags_.begin(), flags_.end(), DecimationFlag{0});
  for (int iter = 1; iter <= max_iters; ++iter) {
    vn_pass();
    cn_pass();
    decide_pass();
    record(trace, iter, {});
    if (syndrome_zero()) return finish(true, iter, {}, reference);
  }
  return finish(false, max_iters, {}, reference);
}

DecodeResult Decoder::dfaid(std::span<const std::uint8_t> received, const DfaidConfig& cfg,
                            std::span<const std::uint8_t> reference, DecodeTrace* trace) {
  cfg.validate();
  load_channel(received);
  std::fill(v2c_.begin(), v2c_.end(), MessageLevel{0});
  std::fill(c2v_.begin(), c2v_.end(), MessageLevel{0});
  std::fill(flags_.begin(), flags_.end(), DecimationFlag{0});

  std::vector<DecimationEvent> all_events;
  int iter = 0;
  for (int round = 0; round < cfg.decimation_rounds; ++round) {
    for (int t = 1; t <= cfg.round_iters; ++t) {
      ++iter;
      vn_pass();
      cn_pass();
      decide_pass();
      if (syndrome_zero()) {
        record(trace, iter, {});
        return finish(true, iter, std::move(all_events), reference);
      }
      std::vector<DecimationEvent> events;
      if (t == cfg.round_iters) {
        events = decimation_pass(iter);
        all_events.insert(all_events.end(), events.begin(), events.end());
      }
      record(trace, iter, std::move(events));
    }
    // Restart: every message back to zero; pinned nodes keep sending
    // their strongest message from the next pass on.
    std::fill(v2c_.begin(), v2c_.end(), MessageLevel{0});
    std::fill(c2v_.begin(), c2v_.end(), MessageLevel{0});
  }
  while (iter < cfg.max_iters) {
    ++iter;
    vn_pass();
    cn_pass();
    decide_pass();
    record(trace, iter, {});
    if (syndrome_zero()) return finish(true, iter, std::move(all_events), reference);
  }
  return finish(false, iter, std::move(all_events), reference);
}

DecodeResult Decoder::bp(std::span<const std::uint8_t> received, double alpha, int max_iters,
                         std::span<const std::uint8_t> reference, DecodeTrace* trace) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw std::invalid_argument("alpha must lie in (0, 0.5)");
  }
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  load_channel(received);
  std::fill(flags_.begin(), flags_.end(), DecimationFlag{0});

  constexpr double kClip = 25.0;
  const double llr0 = std::log((1.0 - alpha) / alpha);
  bp_v2c_.assign(g_.edge_count(), 0.0);
  bp_c2v_.assign(g_.edge_count(), 0.0);
  bp_tanh_.assign(g_.edge_count(), 0.0);
  bp_llr_.resize(g_.variable_count());
  for (int v = 0; v < g_.variable_count(); ++v) bp_llr_[v] = channel_[v] * llr0;

  for (int iter = 1; iter <= max_iters; ++iter) {
    for (int v = 0; v < g_.variable_count(); ++v) {
      const auto edges = g_.var_edges(v);
      double total = bp_llr_[v];
      for (int e : edges) total += bp_c2v_[e];
      for (int e : edges) {
        bp_v2c_[e] = std::clamp(total - bp_c2v_[e], -kClip, kClip);
      }
    }
    for (int e = 0; e < g_.edge_count(); ++e) bp_tanh_[e] = std::tanh(0.5 * bp_v2c_[e]);
    for (int c = 0; c < g_.check_count(); ++c) {
      const auto edges = g_.check_edges(c);
      for (int e : edges) {
        double prod = 1.0;
        for (int f : edges) {
          if (f != e) prod *= bp_tanh_[f];
        }
        prod = std::clamp(prod, -1.0 + 1e-15, 1.0 - 1e-15);
        bp_c2v_[e] = std::clamp(2.0 * std::atanh(prod), -kClip, kClip);
      }
    }
    for (int v = 0; v < g_.variable_count(); ++v) {
      const auto edges = g_.var_edges(v);
      double total = bp_llr_[v];
      for (int e : edges) total += bp_c2v_[e];
      if (total > 0.0) {
        decisions_[v] = 0;
      } else if (total < 0.0) {
        decisions_[v] = 1;
      } else {
        decisions_[v] = channel_[v] > 0 ? 0 : 1;
      }
    }
    if (trace) {
      IterationRecord rec;
      rec.iter = iter;
      rec.decisions = decisions_;
      trace->records.push_back(std::move(rec));
    }
    if (syndrome_zero()) return finish(true, iter, {}, reference);
  }
  return finish(false, max_iters, {}, reference);
}

DecodeResult faid_decode(const TannerGraph& g, std::span<const std::uint8_t> received,
                         int max_iters, const DecodeRules& rules,
                         std::span<const std::uint8_t> reference) {
  Decoder dec(g, rules);
  return dec.faid(received, max_iters, reference);
}

DecodeResult dfaid_decode(const TannerGraph& g, std::span<const std::uint8_t> received,
                          const DfaidConfig& cfg, const DecodeRules& rules,
                          std::span<const std::uint8_t> reference) {
  Decoder dec(g, rules);
  return dec.dfaid(received, cfg, reference);
}

DecodeResult bp_decode(const TannerGraph& g, std::span<const std::uint8_t> received,
                       double alpha, int max_iters, std::span<const std::uint8_t> reference) {
  Decoder dec(g);
  return dec.bp(received, alpha, max_iters, reference);
}

std::pair<DecodeResult, DecodeTrace> run_with_trace(
    DecoderKind kind, const TannerGraph& g, std::span<const std::uint8_t> received,
    const DfaidConfig& cfg, double bp_alpha, const DecodeRules& rules,
    std::span<const std::uint8_t> reference) {
  Decoder dec(g, rules);
  DecodeTrace trace;
  trace.kind = kind;
  trace.config = cfg;
  DecodeResult result;
  switch (kind) {
    case DecoderKind::Faid:
      result = dec.faid(received, cfg.max_iters, reference, &trace);
      break;
    case DecoderKind::Dfaid:
      result = dec.dfaid(received, cfg, reference, &trace);
      break;
    case DecoderKind::Bp:
      trace.bp_alpha = bp_alpha;
      result = dec.bp(received, bp_alpha, cfg.max_iters, reference, &trace);
      break;
  }
  return {std::move(result), std::move(trace)};
}

}  // namespace faidlab
