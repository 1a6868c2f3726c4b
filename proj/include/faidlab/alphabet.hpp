#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace faidlab {

// Message levels of the 7-level alphabet {0, +/-L1, +/-L2, +/-L3},
// stored as integers in [-3, 3]. Only sign and magnitude order matter.
using MessageLevel = std::int8_t;

inline constexpr int kLevels = 7;
inline constexpr MessageLevel kLevelMax = 3;

constexpr bool level_in_range(int level) { return level >= -3 && level <= 3; }

// Channel value for the BSC: received bit 0 maps to +C, bit 1 to -C.
enum class ChannelValue : std::int8_t { MinusC = -1, PlusC = 1 };

constexpr ChannelValue channel_from_bit(int bit) {
  return bit == 0 ? ChannelValue::PlusC : ChannelValue::MinusC;
}
constexpr int channel_sign(ChannelValue y) { return static_cast<int>(y); }
constexpr int channel_hard_bit(ChannelValue y) {
  return y == ChannelValue::PlusC ? 0 : 1;
}
constexpr ChannelValue operator-(ChannelValue y) {
  return y == ChannelValue::PlusC ? ChannelValue::MinusC : ChannelValue::PlusC;
}

// Decimation flag: 0 = free, +1 = pinned to bit 0, -1 = pinned to bit 1.
using DecimationFlag = std::int8_t;

// Variable-node update table for channel value +C, indexed by the two
// extrinsic incoming messages. The -C behavior follows by sign symmetry:
// phi(m1, m2, -C) = -phi(-m1, -m2, +C).
class VnLut {
 public:
  VnLut();  // the built-in 7-level table
  explicit VnLut(const std::array<std::array<MessageLevel, 7>, 7>& table);

  MessageLevel apply(MessageLevel m1, MessageLevel m2, ChannelValue y) const {
    if (y == ChannelValue::PlusC) return table_[m1 + 3][m2 + 3];
    return static_cast<MessageLevel>(-table_[3 - m1][3 - m2]);
  }

  // Raw +C entry.
  MessageLevel entry(MessageLevel m1, MessageLevel m2) const {
    return table_[m1 + 3][m2 + 3];
  }

  bool symmetric() const;                // entry(a,b) == entry(b,a)
  bool monotone() const;                 // non-decreasing in each argument
  const std::array<std::array<MessageLevel, 7>, 7>& table() const { return table_; }

 private:
  std::array<std::array<MessageLevel, 7>, 7> table_;
};

// The set of incoming-message triples that trigger decimation under
// channel +C; the -C triples follow by sign symmetry.
class DecimationRule {
 public:
  DecimationRule();  // the built-in rule
  explicit DecimationRule(const std::vector<std::array<int, 3>>& positive_triples);

  DecimationFlag decide(MessageLevel m1, MessageLevel m2, MessageLevel m3,
                        ChannelValue y) const;

  // Triples with beta=+1 under +C, each sorted descending, in lexicographic order.
  std::vector<std::array<int, 3>> positive_sets() const;

  // Strict sign majority, counting the channel as one positive sign and
  // zeros as abstentions, for every stored triple.
  bool majority_property_holds() const;

 private:
  bool positive_sorted(int a, int b, int c) const;  // requires a >= b >= c
  std::array<bool, 343> positive_{};
};

// Lookup tables used by a decoding run; JSON-overridable for rule experiments.
struct DecodeRules {
  VnLut lut;
  DecimationRule beta;
};

const DecodeRules& default_rules();

// Parses {"vn_lut": [[...7x7...]], "decimation": [[a,b,c], ...]} — either key
// may be omitted to keep the built-in table. Throws std::invalid_argument on
// malformed or out-of-range content.
DecodeRules rules_from_json_text(const std::string& text);
DecodeRules rules_from_file(const std::string& path);

// Node-local update functions over the built-in tables.

// Variable-node update on the two extrinsic incoming messages.
MessageLevel vn_update(MessageLevel m1, MessageLevel m2, ChannelValue y);

// Check-node update over the dc-1 extrinsic messages: product of signs times
// minimum magnitude. Throws std::invalid_argument on an empty sequence.
MessageLevel cn_update(std::span<const MessageLevel> extrinsic);

// Variable-node update with decimation: flag 0 defers to vn_update, flag
// +/-1 sends the strongest message of the pinned sign regardless of inputs.
MessageLevel vn_update_decimated(MessageLevel m1, MessageLevel m2,
                                 ChannelValue y, DecimationFlag flag);

// Decimation decision on the dv=3 incoming messages and the channel value.
DecimationFlag decimation_decide(MessageLevel m1, MessageLevel m2,
                                 MessageLevel m3, ChannelValue y);

// Hard decision: pinned nodes keep their pinned bit; otherwise the sign of
// the level sum decides, with ties resolved by the channel value.
int decide_bit(MessageLevel m1, MessageLevel m2, MessageLevel m3,
               ChannelValue y, DecimationFlag flag);

}  // namespace faidlab
