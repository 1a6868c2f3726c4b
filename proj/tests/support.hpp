// Test-only graphs and independent oracles. The oracles deliberately use
// different algorithms from the library (edge-removal girth, non-backtracking
// walk counting, byte-matrix elimination) so they can cross-check it.
#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "faidlab/tanner_graph.hpp"

namespace testsupport {

using faidlab::TannerGraph;

// k variable nodes and k check nodes in a single 2k-cycle (dv = 2).
inline TannerGraph ring_graph(int k) {
  std::vector<std::vector<int>> vn(k);
  for (int i = 0; i < k; ++i) {
    vn[i] = {i, (i + k - 1) % k};
    std::sort(vn[i].begin(), vn[i].end());
  }
  return TannerGraph::from_variable_adjacency(k, std::move(vn));
}

// Levi graph of the generalized quadrangle of order two, via its LCF notation
// [-13,-9,7,-7,9,13]^5: (3,3)-regular, bipartite, girth 8, 15+15 nodes.
inline TannerGraph tutte_coxeter() {
  const int lcf[6] = {-13, -9, 7, -7, 9, 13};
  std::vector<std::vector<int>> vn(15);
  auto add = [&vn](int a, int b) {
    const int v = (a % 2 == 0) ? a / 2 : b / 2;
    const int c = (a % 2 == 0) ? (b - 1) / 2 : (a - 1) / 2;
    if (std::find(vn[v].begin(), vn[v].end(), c) == vn[v].end()) vn[v].push_back(c);
  };
  for (int i = 0; i < 30; ++i) {
    add(i, (i + 1) % 30);
    add(i, ((i + lcf[i % 6]) % 30 + 30) % 30);
  }
  for (auto& row : vn) std::sort(row.begin(), row.end());
  return TannerGraph::from_variable_adjacency(15, std::move(vn));
}

// Four variable nodes on an 8-cycle through checks 0..3, with one pendant
// degree-1 check per variable (checks 4..7). Graph-query tests only; the
// pendant checks make it undecodable by design.
inline TannerGraph fig1_core() {
  std::vector<std::vector<int>> vn(4);
  for (int i = 0; i < 4; ++i) {
    vn[i] = {i, (i + 3) % 4, 4 + i};
    std::sort(vn[i].begin(), vn[i].end());
  }
  return TannerGraph::from_variable_adjacency(8, std::move(vn));
}

// fig1 core plus a thin shell: each former pendant check gains two outer
// variables, closed through degree-2 checks. Girth 8, (3, <=3)-regular,
// decodable; the 4-error core pattern is a stable failure for both
// finite-alphabet decoders (nothing ever decimates).
inline TannerGraph fig1_tree() {
  std::vector<std::vector<int>> vn(12);
  for (int i = 0; i < 4; ++i) {
    vn[i] = {i, (i + 3) % 4, 4 + i};
    std::sort(vn[i].begin(), vn[i].end());
  }
  for (int j = 0; j < 8; ++j) {
    vn[4 + j] = {4 + j / 2, 8 + j, 8 + (j + 5) % 8};
    std::sort(vn[4 + j].begin(), vn[4 + j].end());
  }
  return TannerGraph::from_variable_adjacency(16, std::move(vn));
}

// fig1 core with a two-level support shell (8 mid variables, 16 outer
// variables closed through degree-4 checks in a K(4,4) pattern). Girth 8;
// the 4-error core pattern is corrected.
inline TannerGraph fig1_deep() {
  std::vector<std::vector<int>> vn;
  for (int i = 0; i < 4; ++i) {
    std::vector<int> row = {i, (i + 3) % 4, 4 + i};
    std::sort(row.begin(), row.end());
    vn.push_back(row);
  }
  for (int j = 0; j < 8; ++j) {
    vn.push_back({4 + j / 2, 8 + 2 * j, 8 + 2 * j + 1});
    std::sort(vn.back().begin(), vn.back().end());
  }
  for (int k = 0; k < 16; ++k) {
    vn.push_back({8 + k, 24 + k % 4, 28 + (k % 4 + k / 4) % 4});
    std::sort(vn.back().begin(), vn.back().end());
  }
  return TannerGraph::from_variable_adjacency(32, std::move(vn));
}

// fig1_tree plus one extra variable adjacent to three of the core's induced
// checks (4, 5, 6): the structural sharing condition fails.
inline TannerGraph fig1_with_sharing() {
  const TannerGraph base = fig1_tree();
  std::vector<std::vector<int>> vn = base.vn_adjacency();
  vn.push_back({4, 5, 6});
  return TannerGraph::from_variable_adjacency(base.check_count(), std::move(vn));
}

// Dense little (3,5)-regular-ish code with enumerable codewords (girth 4;
// used for algebraic properties, not decoding quality).
inline TannerGraph small_code_6x10() {
  const int cols[10][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                           {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
  std::vector<std::vector<int>> vn(10);
  for (int v = 0; v < 10; ++v) vn[v] = {cols[v][0], cols[v][1], cols[v][2]};
  return TannerGraph::from_variable_adjacency(6, std::move(vn));
}

// Girth oracle: for every edge, remove it and find the shortest remaining
// path between its endpoints.
inline std::optional<int> oracle_girth(const TannerGraph& g) {
  const int n = g.variable_count();
  const int total = n + g.check_count();
  int best = INT_MAX;
  std::vector<int> dist(total);
  for (int v = 0; v < n; ++v) {
    for (int c : g.var_checks(v)) {
      const int target = n + c;
      std::fill(dist.begin(), dist.end(), -1);
      std::deque<int> queue;
      dist[v] = 0;
      queue.push_back(v);
      while (!queue.empty() && dist[target] < 0) {
        const int u = queue.front();
        queue.pop_front();
        if (dist[u] + 1 >= best) break;
        auto visit = [&](int w) {
          if ((u == v && w == target) || (u == target && w == v)) return;  // removed edge
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            queue.push_back(w);
          }
        };
        if (u < n) {
          for (int cc : g.var_checks(u)) visit(n + cc);
        } else {
          for (int vv : g.check_vars(u - n)) visit(vv);
        }
      }
      if (dist[target] >= 0) best = std::min(best, dist[target] + 1);
    }
  }
  if (best == INT_MAX) return std::nullopt;
  return best;
}

// 8-cycle count oracle for girth-8 graphs: cyclically non-backtracking closed
// walks of length 8 over directed edges, divided by 16 (8 rotations times 2
// directions per cycle).
inline std::uint64_t oracle_count_8cycles(const TannerGraph& g) {
  const int e_total = g.edge_count();
  const int d_total = 2 * e_total;  // 2e = var->check, 2e+1 = check->var
  std::vector<std::vector<int>> succ(d_total);
  for (int e = 0; e < e_total; ++e) {
    const int v = g.edge_variable(e);
    const int c = g.edge_check(e);
    for (int e2 : g.check_edges(c)) {
      if (g.edge_variable(e2) != v) succ[2 * e].push_back(2 * e2 + 1);
    }
    for (int e2 : g.var_edges(v)) {
      if (g.edge_check(e2) != c) succ[2 * e + 1].push_back(2 * e2);
    }
  }
  std::uint64_t trace = 0;
  std::vector<std::uint64_t> cnt(d_total), nxt(d_total);
  for (int start = 0; start < d_total; ++start) {
    std::fill(cnt.begin(), cnt.end(), 0);
    cnt[start] = 1;
    for (int step = 0; step < 8; ++step) {
      std::fill(nxt.begin(), nxt.end(), 0);
      for (int d = 0; d < d_total; ++d) {
        if (!cnt[d]) continue;
        for (int f : succ[d]) nxt[f] += cnt[d];
      }
      cnt.swap(nxt);
    }
    trace += cnt[start];
  }
  return trace / 16;
}

// Rank oracle: plain byte-matrix elimination.
inline int oracle_gf2_rank(const TannerGraph& g) {
  const int n = g.variable_count();
  const int m = g.check_count();
  std::vector<std::vector<std::uint8_t>> h(m, std::vector<std::uint8_t>(n, 0));
  for (int c = 0; c < m; ++c) {
    for (int v : g.check_vars(c)) h[c][v] = 1;
  }
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int pivot = -1;
    for (int r = rank; r < m; ++r) {
      if (h[r][col]) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(h[rank], h[pivot]);
    for (int r = 0; r < m; ++r) {
      if (r != rank && h[r][col]) {
        for (int k = 0; k < n; ++k) h[r][k] ^= h[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

inline bool word_in_code(const TannerGraph& g, const std::vector<std::uint8_t>& word) {
  for (int c = 0; c < g.check_count(); ++c) {
    int parity = 0;
    for (int v : g.check_vars(c)) parity ^= word[v];
    if (parity) return false;
  }
  return true;
}

}  // namespace testsupport
