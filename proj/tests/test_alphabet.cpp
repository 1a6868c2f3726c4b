#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <vector>

#include "faidlab/alphabet.hpp"

using namespace faidlab;

namespace {

constexpr ChannelValue kPlus = ChannelValue::PlusC;
constexpr ChannelValue kMinus = ChannelValue::MinusC;

const std::array<MessageLevel, 7> kAllLevels = {-3, -2, -1, 0, 1, 2, 3};

}  // namespace

TEST_CASE("variable-node update matches the published entries") {
  CHECK(vn_update(-2, 1, kPlus) == 1);
  CHECK(vn_update(0, 0, kPlus) == 1);
  CHECK(vn_update(-3, 3, kPlus) == 1);
  CHECK(vn_update(3, 3, kMinus) == 3);  // sign symmetry of the (-3,-3) entry
  CHECK(vn_update(1, 2, kPlus) == 3);
  CHECK(vn_update(-3, -3, kPlus) == -3);
  CHECK(vn_update(-2, -3, kPlus) == -3);
}

TEST_CASE("variable-node update is symmetric in its arguments") {
  for (MessageLevel a : kAllLevels) {
    for (MessageLevel b : kAllLevels) {
      CHECK(vn_update(a, b, kPlus) == vn_update(b, a, kPlus));
      CHECK(vn_update(a, b, kMinus) == vn_update(b, a, kMinus));
    }
  }
}

TEST_CASE("variable-node update has decoder sign symmetry") {
  for (MessageLevel a : kAllLevels) {
    for (MessageLevel b : kAllLevels) {
      CHECK(vn_update(a, b, kMinus) ==
            static_cast<MessageLevel>(-vn_update(static_cast<MessageLevel>(-a),
                                                 static_cast<MessageLevel>(-b), kPlus)));
    }
  }
}

TEST_CASE("variable-node update is monotone in every argument") {
  CHECK(default_rules().lut.monotone());
  for (MessageLevel a : kAllLevels) {
    for (int i = 1; i < 7; ++i) {
      CHECK(vn_update(a, kAllLevels[i], kPlus) >= vn_update(a, kAllLevels[i - 1], kPlus));
      CHECK(vn_update(a, kAllLevels[i], kMinus) >= vn_update(a, kAllLevels[i - 1], kMinus));
    }
  }
  for (MessageLevel a : kAllLevels) {
    for (MessageLevel b : kAllLevels) {
      CHECK(vn_update(a, b, kPlus) >= vn_update(a, b, kMinus));  // monotone in y
    }
  }
}

TEST_CASE("check-node update computes sign product times minimum magnitude") {
  const std::vector<MessageLevel> a = {2, -1, 3, 3};
  CHECK(cn_update(a) == -1);
  const std::vector<MessageLevel> b = {0, 3, 3, 3};
  CHECK(cn_update(b) == 0);
  const std::vector<MessageLevel> c = {-2, -2};
  CHECK(cn_update(c) == 2);
  const std::vector<MessageLevel> single = {-3};
  CHECK(cn_update(single) == -3);
}

TEST_CASE("check-node update is permutation invariant, odd, and magnitude-min") {
  std::vector<MessageLevel> msgs = {-2, 1, 0, 3};
  std::sort(msgs.begin(), msgs.end());
  const MessageLevel base = cn_update(msgs);
  do {
    CHECK(cn_update(msgs) == base);
  } while (std::next_permutation(msgs.begin(), msgs.end()));

  // Oddness and |result| = min |input| over a dense sample of message tuples.
  for (MessageLevel a : kAllLevels) {
    for (MessageLevel b : kAllLevels) {
      for (MessageLevel c : kAllLevels) {
        const std::vector<MessageLevel> in = {a, b, c};
        const std::vector<MessageLevel> neg = {static_cast<MessageLevel>(-a),
                                               static_cast<MessageLevel>(-b),
                                               static_cast<MessageLevel>(-c)};
        CHECK(cn_update(neg) == static_cast<MessageLevel>(-cn_update(in)));
        const int expect_mag = std::min({std::abs(a), std::abs(b), std::abs(c)});
        CHECK(std::abs(cn_update(in)) == expect_mag);
      }
    }
  }
}

TEST_CASE("check-node update rejects an empty extrinsic set") {
  CHECK_THROWS_AS(cn_update({}), std::invalid_argument);
}

TEST_CASE("decimated variable-node update pins the strongest message") {
  CHECK(vn_update_decimated(-3, -3, kMinus, 1) == 3);
  CHECK(vn_update_decimated(1, 2, kPlus, 0) == 3);
  CHECK(vn_update_decimated(0, 0, kPlus, -1) == -3);
  for (MessageLevel a : kAllLevels) {
    for (MessageLevel b : kAllLevels) {
      CHECK(vn_update_decimated(a, b, kPlus, 0) == vn_update(a, b, kPlus));
      CHECK(vn_update_decimated(a, b, kMinus, 1) == 3);
      CHECK(vn_update_decimated(a, b, kPlus, -1) == -3);
    }
  }
}

TEST_CASE("decimation triggers exactly on the listed triples") {
  CHECK(decimation_decide(3, 2, 0, kPlus) == 1);
  CHECK(decimation_decide(-3, -3, 1, kMinus) == -1);
  CHECK(decimation_decide(1, 1, 1, kPlus) == 0);
  CHECK(decimation_decide(3, 3, -2, kPlus) == 0);  // absent despite sign majority
  CHECK(decimation_decide(0, 2, 3, kPlus) == 1);   // order must not matter
  CHECK(decimation_decide(3, 3, 3, kMinus) == 0);
}

TEST_CASE("decimation rule is sign symmetric and channel-sign bound") {
  for (MessageLevel a : kAllLevels) {
    for (MessageLevel b : kAllLevels) {
      for (MessageLevel c : kAllLevels) {
        const DecimationFlag plus = decimation_decide(a, b, c, kPlus);
        const DecimationFlag minus =
            decimation_decide(static_cast<MessageLevel>(-a), static_cast<MessageLevel>(-b),
                              static_cast<MessageLevel>(-c), kMinus);
        CHECK(minus == static_cast<DecimationFlag>(-plus));
        // Never against the channel sign.
        CHECK(plus >= 0);
        CHECK(decimation_decide(a, b, c, kMinus) <= 0);
      }
    }
  }
}

TEST_CASE("every positive decimation triple carries a strict sign majority") {
  const auto& rule = default_rules().beta;
  CHECK(rule.majority_property_holds());
  CHECK(rule.positive_sets().size() == 15);
  for (const auto& t : rule.positive_sets()) {
    int pos = 1, neg = 0;
    for (int v : t) {
      pos += v > 0;
      neg += v < 0;
    }
    CHECK(pos > neg);
  }
}

TEST_CASE("hard decision follows the level sum with channel tie-break") {
  CHECK(decide_bit(1, 2, -3, kPlus, 0) == 0);   // tie -> channel
  CHECK(decide_bit(1, 2, -3, kMinus, 0) == 1);  // tie -> channel
  CHECK(decide_bit(-1, -1, 3, kMinus, 0) == 0);
  CHECK(decide_bit(-3, -3, -3, kPlus, 1) == 0);  // decimation overrides
  CHECK(decide_bit(3, 3, 3, kMinus, -1) == 1);
  CHECK(decide_bit(-1, 0, 0, kPlus, 0) == 1);
}

TEST_CASE("rule overrides load from JSON and are validated") {
  const auto rules = rules_from_json_text(R"({
    "decimation": [[3, 3, 3]]
  })");
  CHECK(rules.beta.positive_sets().size() == 1);
  CHECK(rules.beta.decide(3, 3, 3, kPlus) == 1);
  CHECK(rules.beta.decide(3, 3, 0, kPlus) == 0);
  CHECK(rules.lut.entry(0, 0) == 1);  // lut untouched

  CHECK_THROWS_AS(rules_from_json_text(R"({"vn_lut": [[1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(rules_from_json_text(R"({"decimation": [[9, 0, 0]]})"), std::invalid_argument);
  CHECK_THROWS_AS(rules_from_json_text("not json"), std::invalid_argument);

  // Asymmetric table rejected.
  std::string asym = R"({"vn_lut": [)";
  for (int r = 0; r < 7; ++r) {
    asym += "[";
    for (int c = 0; c < 7; ++c) {
      asym += std::to_string(r == 0 && c == 1 ? 3 : 0);
      if (c < 6) asym += ",";
    }
    asym += r < 6 ? "]," : "]";
  }
  asym += "]}";
  CHECK_THROWS_AS(rules_from_json_text(asym), std::invalid_argument);
}

TEST_CASE("out-of-range levels are rejected") {
  CHECK_THROWS_AS(vn_update(4, 0, kPlus), std::invalid_argument);
  const std::vector<MessageLevel> bad = {5};
  CHECK_THROWS_AS(cn_update(bad), std::invalid_argument);
  CHECK_THROWS_AS(decimation_decide(0, 0, 4, kPlus), std::invalid_argument);
}
