#include "faidlab/tanner_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace faidlab {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  // Trailing blank lines are tolerated.
  while (!lines.empty() && lines.back().find_first_not_of(" \t\r") == std::string_view::npos) {
    lines.pop_back();
  }
  return lines;
}

std::vector<long long> parse_ints(std::string_view line, int line_no) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc() || ptr != line.data() + j) {
      throw ParseError(line_no, "expected integer, got '" + std::string(line.substr(i, j - i)) + "'");
    }
    out.push_back(value);
    i = j;
  }
  return out;
}

}  // namespace

TannerGraph::TannerGraph(std::vector<std::vector<int>> vn_adj,
                         std::vector<std::vector<int>> cn_adj)
    : vn_adj_(std::move(vn_adj)), cn_adj_(std::move(cn_adj)) {
  const int n = variable_count();
  const int m = check_count();

  std::vector<std::pair<int, int>> from_vars, from_checks;
  for (int v = 0; v < n; ++v) {
    for (int c : vn_adj_[v]) {
      if (c < 0 || c >= m) throw std::invalid_argument("check index out of range");
      from_vars.emplace_back(v, c);
    }
  }
  for (int c = 0; c < m; ++c) {
    for (int v : cn_adj_[c]) {
      if (v < 0 || v >= n) throw std::invalid_argument("variable index out of range");
      from_checks.emplace_back(v, c);
    }
  }
  auto sorted = [](std::vector<std::pair<int, int>> e) {
    std::sort(e.begin(), e.end());
    return e;
  };
  auto a = sorted(from_vars);
  auto b = sorted(from_checks);
  if (a != b) throw std::invalid_argument("variable and check adjacency disagree");
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
    throw std::invalid_argument("repeated edge");
  }

  // Flat edge ids in (variable, position) order.
  var_edge_offset_.assign(n + 1, 0);
  check_edge_offset_.assign(m + 1, 0);
  for (int v = 0; v < n; ++v) var_edge_offset_[v + 1] = var_edge_offset_[v] + static_cast<int>(vn_adj_[v].size());
  const int e_total = var_edge_offset_[n];
  edge_vn_.resize(e_total);
  edge_cn_.resize(e_total);
  edge_ids_by_var_.resize(e_total);
  int e = 0;
  for (int v = 0; v < n; ++v) {
    for (int c : vn_adj_[v]) {
      edge_vn_[e] = v;
      edge_cn_[e] = c;
      edge_ids_by_var_[e] = e;
      ++e;
    }
  }
  for (int id = 0; id < e_total; ++id) ++check_edge_offset_[edge_cn_[id] + 1];
  for (int c = 0; c < m; ++c) check_edge_offset_[c + 1] += check_edge_offset_[c];
  edge_ids_by_check_.resize(e_total);
  std::vector<int> fill(check_edge_offset_.begin(), check_edge_offset_.end() - 1);
  for (int id = 0; id < e_total; ++id) edge_ids_by_check_[fill[edge_cn_[id]]++] = id;
}

TannerGraph TannerGraph::from_variable_adjacency(int check_count,
                                                 std::vector<std::vector<int>> vn_adj) {
  std::vector<std::vector<int>> cn_adj(check_count);
  for (int v = 0; v < static_cast<int>(vn_adj.size()); ++v) {
    for (int c : vn_adj[v]) {
      if (c < 0 || c >= check_count) throw std::invalid_argument("check index out of range");
      cn_adj[c].push_back(v);
    }
  }
  return TannerGraph(std::move(vn_adj), std::move(cn_adj));
}

std::optional<int> TannerGraph::left_degree() const {
  if (vn_adj_.empty()) return std::nullopt;
  const int d = static_cast<int>(vn_adj_[0].size());
  for (const auto& row : vn_adj_) {
    if (static_cast<int>(row.size()) != d) return std::nullopt;
  }
  return d;
}

int TannerGraph::max_var_degree() const {
  int d = 0;
  for (const auto& row : vn_adj_) d = std::max<int>(d, static_cast<int>(row.size()));
  return d;
}

int TannerGraph::max_check_degree() const {
  int d = 0;
  for (const auto& row : cn_adj_) d = std::max<int>(d, static_cast<int>(row.size()));
  return d;
}

int TannerGraph::min_check_degree() const {
  int d = variable_count() + 1;
  for (const auto& row : cn_adj_) d = std::min<int>(d, static_cast<int>(row.size()));
  return cn_adj_.empty() ? 0 : d;
}

bool TannerGraph::has_edge(int v, int c) const {
  const auto& row = vn_adj_[v];
  return std::find(row.begin(), row.end(), c) != row.end();
}

TannerGraph parse_alist(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 4) throw ParseError(static_cast<int>(lines.size()), "truncated alist header");

  auto header = parse_ints(lines[0], 1);
  if (header.size() != 2) throw ParseError(1, "expected 'n m'");
  const long long n = header[0], m = header[1];
  if (n <= 0 || m <= 0) throw ParseError(1, "n and m must be positive");

  auto maxima = parse_ints(lines[1], 2);
  if (maxima.size() != 2) throw ParseError(2, "expected 'max_vn_deg max_cn_deg'");
  const long long maxv = maxima[0], maxc = maxima[1];
  if (maxv < 1 || maxc < 1) throw ParseError(2, "maximum degrees must be >= 1");

  if (static_cast<long long>(lines.size()) != 4 + n + m) {
    throw ParseError(static_cast<int>(lines.size()),
                     "expected " + std::to_string(4 + n + m) + " lines, got " +
                         std::to_string(lines.size()));
  }

  auto vdeg = parse_ints(lines[2], 3);
  if (static_cast<long long>(vdeg.size()) != n) {
    throw ParseError(3, "expected " + std::to_string(n) + " variable degrees, got " +
                            std::to_string(vdeg.size()));
  }
  auto cdeg = parse_ints(lines[3], 4);
  if (static_cast<long long>(cdeg.size()) != m) {
    throw ParseError(4, "expected " + std::to_string(m) + " check degrees, got " +
                            std::to_string(cdeg.size()));
  }
  for (long long i = 0; i < n; ++i) {
    if (vdeg[i] < 0 || vdeg[i] > maxv) throw ParseError(3, "variable degree out of range");
  }
  for (long long i = 0; i < m; ++i) {
    if (cdeg[i] < 0 || cdeg[i] > maxc) throw ParseError(4, "check degree out of range");
  }

  auto read_rows = [&](long long count, long long offset, long long max_deg,
                       const std::vector<long long>& degs, long long other_count) {
    std::vector<std::vector<int>> adj(count);
    for (long long i = 0; i < count; ++i) {
      const int line_no = static_cast<int>(offset + i + 1);
      auto row = parse_ints(lines[offset + i], line_no);
      if (static_cast<long long>(row.size()) != degs[i] &&
          static_cast<long long>(row.size()) != max_deg) {
        throw ParseError(line_no, "expected " + std::to_string(degs[i]) + " (or zero-padded " +
                                      std::to_string(max_deg) + ") entries, got " +
                                      std::to_string(row.size()));
      }
      for (long long k = 0; k < static_cast<long long>(row.size()); ++k) {
        const long long idx = row[k];
        if (k < degs[i]) {
          if (idx < 1 || idx > other_count) {
            throw ParseError(line_no, "index " + std::to_string(idx) + " out of range [1," +
                                          std::to_string(other_count) + "]");
          }
          adj[i].push_back(static_cast<int>(idx - 1));
        } else if (idx != 0) {
          throw ParseError(line_no, "nonzero entry beyond declared degree");
        }
      }
      auto sorted_row = adj[i];
      std::sort(sorted_row.begin(), sorted_row.end());
      if (std::adjacent_find(sorted_row.begin(), sorted_row.end()) != sorted_row.end()) {
        throw ParseError(line_no, "repeated index in adjacency row");
      }
    }
    return adj;
  };

  auto vn_adj = read_rows(n, 4, maxv, vdeg, m);
  auto cn_adj = read_rows(m, 4 + n, maxc, cdeg, n);

  // Cross-check the two sections edge by edge.
  std::vector<std::vector<int>> derived(m);
  for (long long v = 0; v < n; ++v) {
    for (int c : vn_adj[v]) derived[c].push_back(static_cast<int>(v));
  }
  for (long long c = 0; c < m; ++c) {
    auto got = cn_adj[c];
    std::sort(got.begin(), got.end());
    std::sort(derived[c].begin(), derived[c].end());
    if (got != derived[c]) {
      throw ParseError(static_cast<int>(4 + n + c + 1),
                       "check row disagrees with the variable section");
    }
  }

  return TannerGraph(std::move(vn_adj), std::move(cn_adj));
}

std::string serialize_alist(const TannerGraph& g) {
  const int n = g.variable_count();
  const int m = g.check_count();
  const int maxv = std::max(1, g.max_var_degree());
  const int maxc = std::max(1, g.max_check_degree());
  std::string out;
  auto emit_row = [&out](const std::vector<int>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(values[i]);
    }
    out += '\n';
  };
  out += std::to_string(n) + " " + std::to_string(m) + "\n";
  out += std::to_string(maxv) + " " + std::to_string(maxc) + "\n";
  std::vector<int> degs(n);
  for (int v = 0; v < n; ++v) degs[v] = g.var_degree(v);
  emit_row(degs);
  degs.resize(m);
  for (int c = 0; c < m; ++c) degs[c] = g.check_degree(c);
  emit_row(degs);
  std::vector<int> row;
  for (int v = 0; v < n; ++v) {
    row.clear();
    for (int c : g.var_checks(v)) row.push_back(c + 1);
    row.resize(maxv, 0);
    emit_row(row);
  }
  for (int c = 0; c < m; ++c) {
    row.clear();
    for (int v : g.check_vars(c)) row.push_back(v + 1);
    row.resize(maxc, 0);
    emit_row(row);
  }
  return out;
}

TannerGraph construct_tanner_155() {
  constexpr int p = 31;
  int shift[3][5];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 5; ++j) {
      long long e = 1;
      for (int k = 0; k < i; ++k) e = (e * 5) % p;
      for (int k = 0; k < j; ++k) e = (e * 2) % p;
      shift[i][j] = static_cast<int>(e);
    }
  }
  std::vector<std::vector<int>> vn_adj(5 * p), cn_adj(3 * p);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int r = 0; r < p; ++r) {
        const int v = p * j + (r + shift[i][j]) % p;
        const int c = p * i + r;
        vn_adj[v].push_back(c);
        cn_adj[c].push_back(v);
      }
    }
  }
  return TannerGraph(std::move(vn_adj), std::move(cn_adj));
}

namespace {

// Unified node ids: variables first, then checks.
struct NodeView {
  const TannerGraph& g;
  int n, total;
  explicit NodeView(const TannerGraph& graph)
      : g(graph), n(graph.variable_count()), total(graph.variable_count() + graph.check_count()) {}
  template <typename F>
  void neighbors(int u, F&& f) const {
    if (u < n) {
      for (int c : g.var_checks(u)) f(n + c);
    } else {
      for (int v : g.check_vars(u - n)) f(v);
    }
  }
};

}  // namespace

std::optional<int> girth(const TannerGraph& g) {
  const NodeView view(g);
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(view.total), parent(view.total);
  std::deque<int> queue;
  for (int root = 0; root < view.total; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    dist[root] = 0;
    parent[root] = -1;
    queue.push_back(root);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (2 * dist[u] + 1 >= best) break;
      view.neighbors(u, [&](int w) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      });
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

namespace {

std::array<int, 8> canonical_cycle(const std::array<int, 8>& seq) {
  // Positions 0,2,4,6 are variables, 1,3,5,7 checks; rotations go by pairs.
  std::array<int, 8> best = seq;
  for (int rot = 0; rot < 4; ++rot) {
    std::array<int, 8> fwd{}, rev{};
    for (int k = 0; k < 8; ++k) fwd[k] = seq[(2 * rot + k) % 8];
    rev[0] = fwd[0];
    for (int k = 1; k < 8; ++k) rev[k] = fwd[8 - k];
    best = std::min(best, fwd);
    best = std::min(best, rev);
  }
  return best;
}

}  // namespace

std::vector<EightCycle> enumerate_8cycles(const TannerGraph& g, long long limit) {
  std::set<std::array<int, 8>> canon;
  const int n = g.variable_count();
  std::vector<char> on_cycle(n, 0);
  for (int v0 = 0; v0 < n; ++v0) {
    const auto& checks0 = g.var_checks(v0);
    for (std::size_t a = 0; a < checks0.size(); ++a) {
      for (std::size_t b = a + 1; b < checks0.size(); ++b) {
        const int ca = checks0[a], cb = checks0[b];
        for (int v1 : g.check_vars(ca)) {
          if (v1 == v0) continue;
          for (int v3 : g.check_vars(cb)) {
            if (v3 == v0 || v3 == v1) continue;
            for (int cc : g.var_checks(v1)) {
              if (cc == ca || cc == cb) continue;
              for (int cd : g.var_checks(v3)) {
                if (cd == cb || cd == ca || cd == cc) continue;
                for (int v2 : g.check_vars(cc)) {
                  if (v2 == v0 || v2 == v1 || v2 == v3) continue;
                  if (!g.has_edge(v2, cd)) continue;
                  canon.insert(canonical_cycle({v0, ca, v1, cc, v2, cd, v3, cb}));
                }
              }
            }
          }
        }
      }
    }
  }
  std::vector<EightCycle> out;
  out.reserve(canon.size());
  for (const auto& seq : canon) {
    if (limit >= 0 && static_cast<long long>(out.size()) >= limit) break;
    out.push_back(EightCycle{{seq[0], seq[2], seq[4], seq[6]}, {seq[1], seq[3], seq[5], seq[7]}});
  }
  return out;
}

InducedCheckSet induced_check_set(const TannerGraph& g, const std::array<int, 4>& vnodes) {
  std::set<int> distinct(vnodes.begin(), vnodes.end());
  if (distinct.size() != 4) throw StructuralError("variable nodes are not distinct");
  for (int v : vnodes) {
    if (v < 0 || v >= g.variable_count()) throw StructuralError("variable index out of range");
  }

  std::map<int, std::vector<int>> induced;  // check -> incident cycle variables
  for (int v : vnodes) {
    for (int c : g.var_checks(v)) induced[c].push_back(v);
  }

  InducedCheckSet result;
  std::map<int, std::vector<int>> link;  // variable -> neighbors via degree-2 checks
  for (const auto& [c, vs] : induced) {
    if (vs.size() >= 3) {
      throw StructuralError("check " + std::to_string(c) + " touches " +
                            std::to_string(vs.size()) + " of the four variables");
    }
    if (vs.size() == 2) {
      result.deg2.push_back(c);
      link[vs[0]].push_back(vs[1]);
      link[vs[1]].push_back(vs[0]);
    } else {
      result.deg1.push_back(c);
    }
  }
  if (result.deg2.size() != 4) {
    throw StructuralError("variables do not induce an 8-cycle (found " +
                          std::to_string(result.deg2.size()) + " degree-2 checks)");
  }
  for (int v : vnodes) {
    if (link[v].size() != 2) throw StructuralError("variables do not induce an 8-cycle");
  }
  // The degree-2 checks must form one closed tour over all four variables.
  int prev = vnodes[0];
  int cur = link[prev][0];
  int visited = 1;
  while (cur != vnodes[0] && visited < 8) {
    const auto& next = link[cur];
    const int step = next[0] == prev ? next[1] : next[0];
    prev = cur;
    cur = step;
    ++visited;
  }
  if (visited != 4) throw StructuralError("degree-2 checks do not form a single 8-cycle");

  return result;
}

bool theorem1_condition(const TannerGraph& g, const EightCycle& cycle,
                        std::optional<int> known_girth) {
  const auto induced = induced_check_set(g, cycle.vnodes);
  const auto gth = known_girth ? known_girth : girth(g);
  if (!gth || *gth < 8) return false;

  std::vector<char> marked(g.check_count(), 0);
  for (int c : induced.deg1) marked[c] = 1;
  for (int c : induced.deg2) marked[c] = 1;
  std::vector<char> inside(g.variable_count(), 0);
  for (int v : cycle.vnodes) inside[v] = 1;

  for (int v = 0; v < g.variable_count(); ++v) {
    if (inside[v]) continue;
    int hits = 0;
    for (int c : g.var_checks(v)) hits += marked[c];
    if (hits >= 3) return false;
  }
  return true;
}

namespace {

// Parity-check rows packed into 64-bit words, reduced in place.
struct PackedRows {
  int n, words;
  std::vector<std::uint64_t> rows;  // m x words
  explicit PackedRows(const TannerGraph& g)
      : n(g.variable_count()), words((g.variable_count() + 63) / 64) {
    rows.assign(static_cast<std::size_t>(g.check_count()) * words, 0);
    for (int c = 0; c < g.check_count(); ++c) {
      for (int v : g.check_vars(c)) {
        rows[static_cast<std::size_t>(c) * words + v / 64] ^= 1ULL << (v % 64);
      }
    }
  }
  bool bit(int r, int col) const {
    return (rows[static_cast<std::size_t>(r) * words + col / 64] >> (col % 64)) & 1;
  }
  void xor_rows(int dst, int src) {
    for (int w = 0; w < words; ++w) {
      rows[static_cast<std::size_t>(dst) * words + w] ^=
          rows[static_cast<std::size_t>(src) * words + w];
    }
  }
  void swap_rows(int a, int b) {
    for (int w = 0; w < words; ++w) {
      std::swap(rows[static_cast<std::size_t>(a) * words + w],
                rows[static_cast<std::size_t>(b) * words + w]);
    }
  }
};

}  // namespace

int gf2_rank(const TannerGraph& g) {
  PackedRows h(g);
  const int m = g.check_count();
  int rank = 0;
  for (int col = 0; col < h.n && rank < m; ++col) {
    int pivot = -1;
    for (int r = rank; r < m; ++r) {
      if (h.bit(r, col)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    h.swap_rows(rank, pivot);
    for (int r = 0; r < m; ++r) {
      if (r != rank && h.bit(r, col)) h.xor_rows(r, rank);
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<std::uint8_t>> gf2_nullspace_basis(const TannerGraph& g) {
  PackedRows h(g);
  const int m = g.check_count();
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < h.n && rank < m; ++col) {
    int pivot = -1;
    for (int r = rank; r < m; ++r) {
      if (h.bit(r, col)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    h.swap_rows(rank, pivot);
    for (int r = 0; r < m; ++r) {
      if (r != rank && h.bit(r, col)) h.xor_rows(r, rank);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<char> is_pivot(h.n, 0);
  for (int c : pivot_col) is_pivot[c] = 1;

  std::vector<std::vector<std::uint8_t>> basis;
  for (int free_col = 0; free_col < h.n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<std::uint8_t> x(h.n, 0);
    x[free_col] = 1;
    for (int r = 0; r < rank; ++r) {
      if (h.bit(r, free_col)) x[pivot_col[r]] = 1;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

TannerGraph graph_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("graph JSON parse failure: ") + e.what());
  }
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  auto adj = j.at("vn_adj").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(adj.size()) != n) {
    throw std::invalid_argument("vn_adj length disagrees with n");
  }
  return TannerGraph::from_variable_adjacency(m, std::move(adj));
}

std::string graph_to_json_text(const TannerGraph& g) {
  nlohmann::json j;
  j["n"] = g.variable_count();
  j["m"] = g.check_count();
  j["vn_adj"] = g.vn_adjacency();
  return j.dump(2) + "\n";
}

}  // namespace faidlab
