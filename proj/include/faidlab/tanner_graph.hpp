#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace faidlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bipartite graph of n variable nodes and m check nodes. Immutable after
// construction; adjacency order is preserved exactly as supplied so that
// serialization round-trips byte for byte.
class TannerGraph {
 public:
  // Throws std::invalid_argument on inconsistent adjacency, out-of-range
  // indices, or repeated edges.
  TannerGraph(std::vector<std::vector<int>> vn_adj, std::vector<std::vector<int>> cn_adj);

  // Derives the check-side adjacency by scanning variables in order.
  static TannerGraph from_variable_adjacency(int check_count,
                                             std::vector<std::vector<int>> vn_adj);

  int variable_count() const { return static_cast<int>(vn_adj_.size()); }
  int check_count() const { return static_cast<int>(cn_adj_.size()); }
  int edge_count() const { return static_cast<int>(edge_vn_.size()); }

  const std::vector<int>& var_checks(int v) const { return vn_adj_[v]; }
  const std::vector<int>& check_vars(int c) const { return cn_adj_[c]; }
  const std::vector<std::vector<int>>& vn_adjacency() const { return vn_adj_; }
  const std::vector<std::vector<int>>& cn_adjacency() const { return cn_adj_; }

  // Flat directed-edge indexing for message storage. Edge ids are assigned in
  // (variable, adjacency position) order.
  std::span<const int> var_edges(int v) const {
    return {edge_ids_by_var_.data() + var_edge_offset_[v],
            static_cast<std::size_t>(var_edge_offset_[v + 1] - var_edge_offset_[v])};
  }
  std::span<const int> check_edges(int c) const {
    return {edge_ids_by_check_.data() + check_edge_offset_[c],
            static_cast<std::size_t>(check_edge_offset_[c + 1] - check_edge_offset_[c])};
  }
  int edge_variable(int e) const { return edge_vn_[e]; }
  int edge_check(int e) const { return edge_cn_[e]; }

  int var_degree(int v) const { return static_cast<int>(vn_adj_[v].size()); }
  int check_degree(int c) const { return static_cast<int>(cn_adj_[c].size()); }

  // dv when every variable node has the same degree.
  std::optional<int> left_degree() const;
  int max_var_degree() const;
  int max_check_degree() const;
  int min_check_degree() const;

  bool has_edge(int v, int c) const;

 private:
  std::vector<std::vector<int>> vn_adj_;
  std::vector<std::vector<int>> cn_adj_;
  std::vector<int> edge_vn_, edge_cn_;
  std::vector<int> var_edge_offset_, check_edge_offset_;
  std::vector<int> edge_ids_by_var_, edge_ids_by_check_;
};

// alist text format: "n m" / "max_vn_deg max_cn_deg" / n variable degrees /
// m check degrees / n rows of 1-based check indices (zero-padded to the max
// degree) / m rows of 1-based variable indices. Errors carry the offending
// line number.
TannerGraph parse_alist(std::string_view text);
std::string serialize_alist(const TannerGraph& g);

// The (155,93) quasi-cyclic code: a 3x5 array of 31x31 circulant permutation
// blocks with shift exponents (5^i * 2^j) mod 31.
TannerGraph construct_tanner_155();

// Length of the shortest cycle; nullopt for acyclic graphs.
std::optional<int> girth(const TannerGraph& g);

// An 8-cycle v0-c0-v1-c1-v2-c2-v3-c3-v0, stored in canonical orientation
// (lexicographically smallest rotation/reflection of the node sequence).
struct EightCycle {
  std::array<int, 4> vnodes;
  std::array<int, 4> cnodes;
};

// Distinct 8-cycles in deterministic (canonical lexicographic) order, at most
// `limit` of them. limit < 0 means no limit.
std::vector<EightCycle> enumerate_8cycles(const TannerGraph& g, long long limit = -1);

// Checks adjacent to exactly one / exactly two of a chordless 8-cycle's four
// variable nodes.
struct InducedCheckSet {
  std::vector<int> deg1;
  std::vector<int> deg2;
};

// Throws StructuralError when the variables do not induce a chordless
// 8-cycle or some induced check has degree >= 3.
InducedCheckSet induced_check_set(const TannerGraph& g, const std::array<int, 4>& vnodes);

// True iff the graph has girth >= 8 and no variable node outside the cycle is
// adjacent to 3 or more of the eight induced checks. `known_girth` skips the
// girth recomputation when the caller already holds it.
bool theorem1_condition(const TannerGraph& g, const EightCycle& cycle,
                        std::optional<int> known_girth = std::nullopt);

// GF(2) rank of the parity-check matrix.
int gf2_rank(const TannerGraph& g);

// Basis of the code (nullspace of the parity-check matrix) as 0/1 rows of
// length n; size is n - gf2_rank(g).
std::vector<std::vector<std::uint8_t>> gf2_nullspace_basis(const TannerGraph& g);

// Adjacency JSON {"n":..,"m":..,"vn_adj":[[check indices]...]} used by the
// CLI convert subcommand.
TannerGraph graph_from_json_text(const std::string& text);
std::string graph_to_json_text(const TannerGraph& g);

}  // namespace faidlab
