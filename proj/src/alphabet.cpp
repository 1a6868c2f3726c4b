#include "faidlab/alphabet.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace faidlab {

namespace {

// 7-level variable-node table for channel value +C. Rows are the first
// incoming message from -L3 to L3, columns the second.
constexpr std::array<std::array<MessageLevel, 7>, 7> kVnTable7 = {{
    {{-3, -3, -2, -1, -1, -1, 1}},
    {{-3, -1, -1, 0, 1, 1, 3}},
    {{-2, -1, 0, 0, 1, 2, 3}},
    {{-1, 0, 0, 1, 2, 3, 3}},
    {{-1, 1, 1, 2, 2, 3, 3}},
    {{-1, 1, 2, 3, 3, 3, 3}},
    {{1, 3, 3, 3, 3, 3, 3}},
}};

// Incoming-message triples (any order) that pin a node to bit 0 under +C.
constexpr std::array<std::array<int, 3>, 15> kDecimationTriples = {{
    {{3, 3, 3}},
    {{3, 3, 2}},
    {{3, 3, 1}},
    {{3, 3, 0}},
    {{3, 3, -1}},
    {{3, 2, 2}},
    {{3, 2, 1}},
    {{3, 2, 0}},
    {{3, 2, -1}},
    {{3, 1, 1}},
    {{3, 1, 0}},
    {{3, 1, -1}},
    {{3, 0, 0}},
    {{2, 2, 2}},
    {{2, 2, 1}},
}};

void require_level(int level, const char* what) {
  if (!level_in_range(level)) {
    throw std::invalid_argument(std::string(what) + " out of range [-3,3]: " +
                                std::to_string(level));
  }
}

constexpr std::size_t triple_index(int a, int b, int c) {
  return static_cast<std::size_t>((a + 3) * 49 + (b + 3) * 7 + (c + 3));
}

}  // namespace

VnLut::VnLut() : table_(kVnTable7) {}

VnLut::VnLut(const std::array<std::array<MessageLevel, 7>, 7>& table) : table_(table) {
  for (const auto& row : table_) {
    for (MessageLevel v : row) {
      if (!level_in_range(v)) throw std::invalid_argument("vn table entry out of range");
    }
  }
  if (!symmetric()) {
    throw std::invalid_argument("vn table must be symmetric in its two arguments");
  }
}

bool VnLut::symmetric() const {
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < a; ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

bool VnLut::monotone() const {
  for (int a = 0; a < 7; ++a)
    for (int b = 1; b < 7; ++b)
      if (table_[a][b] < table_[a][b - 1] || table_[b][a] < table_[b - 1][a]) return false;
  return true;
}

DecimationRule::DecimationRule() {
  for (const auto& t : kDecimationTriples) {
    std::array<int, 3> s = t;
    std::sort(s.begin(), s.end(), std::greater<int>());
    positive_[triple_index(s[0], s[1], s[2])] = true;
  }
}

DecimationRule::DecimationRule(const std::vector<std::array<int, 3>>& positive_triples) {
  for (const auto& t : positive_triples) {
    for (int v : t) require_level(v, "decimation triple entry");
    std::array<int, 3> s = t;
    std::sort(s.begin(), s.end(), std::greater<int>());
    positive_[triple_index(s[0], s[1], s[2])] = true;
  }
}

bool DecimationRule::positive_sorted(int a, int b, int c) const {
  return positive_[triple_index(a, b, c)];
}

DecimationFlag DecimationRule::decide(MessageLevel m1, MessageLevel m2,
                                      MessageLevel m3, ChannelValue y) const {
  int a = m1, b = m2, c = m3;
  if (y == ChannelValue::MinusC) {
    a = -a;
    b = -b;
    c = -c;
  }
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  if (!positive_sorted(a, b, c)) return 0;
  return y == ChannelValue::PlusC ? DecimationFlag{1} : DecimationFlag{-1};
}

std::vector<std::array<int, 3>> DecimationRule::positive_sets() const {
  std::vector<std::array<int, 3>> out;
  for (int a = 3; a >= -3; --a)
    for (int b = a; b >= -3; --b)
      for (int c = b; c >= -3; --c)
        if (positive_sorted(a, b, c)) out.push_back({a, b, c});
  return out;
}

bool DecimationRule::majority_property_holds() const {
  for (const auto& t : positive_sets()) {
    int pos = 1;  // the channel counts as one positive sign
    int neg = 0;
    for (int v : t) {
      if (v > 0) ++pos;
      if (v < 0) ++neg;
    }
    if (pos <= neg) return false;
  }
  return true;
}

const DecodeRules& default_rules() {
  static const DecodeRules rules{};
  return rules;
}

DecodeRules rules_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("rules JSON parse failure: ") + e.what());
  }
  DecodeRules rules;
  if (j.contains("vn_lut")) {
    const auto& m = j.at("vn_lut");
    if (!m.is_array() || m.size() != 7) {
      throw std::invalid_argument("vn_lut must be a 7x7 integer matrix");
    }
    std::array<std::array<MessageLevel, 7>, 7> table{};
    for (int r = 0; r < 7; ++r) {
      if (!m[r].is_array() || m[r].size() != 7) {
        throw std::invalid_argument("vn_lut must be a 7x7 integer matrix");
      }
      for (int c = 0; c < 7; ++c) {
        int v = m[r][c].get<int>();
        require_level(v, "vn_lut entry");
        table[r][c] = static_cast<MessageLevel>(v);
      }
    }
    rules.lut = VnLut(table);
  }
  if (j.contains("decimation")) {
    std::vector<std::array<int, 3>> triples;
    for (const auto& t : j.at("decimation")) {
      if (!t.is_array() || t.size() != 3) {
        throw std::invalid_argument("decimation entries must be integer triples");
      }
      triples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    rules.beta = DecimationRule(triples);
  }
  return rules;
}

DecodeRules rules_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open rules file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return rules_from_json_text(buf.str());
}

MessageLevel vn_update(MessageLevel m1, MessageLevel m2, ChannelValue y) {
  require_level(m1, "m1");
  require_level(m2, "m2");
  return default_rules().lut.apply(m1, m2, y);
}

MessageLevel cn_update(std::span<const MessageLevel> extrinsic) {
  if (extrinsic.empty()) {
    throw std::invalid_argument("cn_update requires at least one extrinsic message");
  }
  int sign = 1;
  int mag = 3;
  for (MessageLevel m : extrinsic) {
    require_level(m, "check input");
    if (m < 0) sign = -sign;
    int a = m < 0 ? -m : m;
    if (a < mag) mag = a;
  }
  if (mag == 0) return 0;
  return static_cast<MessageLevel>(sign * mag);
}

MessageLevel vn_update_decimated(MessageLevel m1, MessageLevel m2,
                                 ChannelValue y, DecimationFlag flag) {
  if (flag != 0) return static_cast<MessageLevel>(flag * kLevelMax);
  return vn_update(m1, m2, y);
}

DecimationFlag decimation_decide(MessageLevel m1, MessageLevel m2,
                                 MessageLevel m3, ChannelValue y) {
  require_level(m1, "m1");
  require_level(m2, "m2");
  require_level(m3, "m3");
  return default_rules().beta.decide(m1, m2, m3, y);
}

int decide_bit(MessageLevel m1, MessageLevel m2, MessageLevel m3,
               ChannelValue y, DecimationFlag flag) {
  if (flag != 0) return flag > 0 ? 0 : 1;
  require_level(m1, "m1");
  require_level(m2, "m2");
  require_level(m3, "m3");
  const int sum = m1 + m2 + m3;
  if (sum > 0) return 0;
  if (sum < 0) return 1;
  return channel_hard_bit(y);
}

}  // namespace faidlab
