#ifndef QBD_TESTS_ORACLES_HPP
#define QBD_TESTS_ORACLES_HPP

// Test-side referees. None of these call into the library's algorithms
// beyond the plain data types, so a shared bug cannot pass vacuously.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qbd/matrix.hpp"
#include "qbd/poly.hpp"

namespace oracle {

using EdgeList = std::vector<std::pair<int, int>>;
using Adjacency = std::vector<std::vector<int>>;

inline Adjacency adjacency(int n, const EdgeList& edges) {
  Adjacency adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

// Every perfect matching, by trying all edge subsets.
inline std::vector<EdgeList> perfect_matchings(int n, const EdgeList& edges) {
  std::vector<EdgeList> found;
  if (n % 2 != 0) return found;
  const std::size_t m = edges.size();
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    if (__builtin_popcountl(mask) != n / 2) continue;
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    EdgeList chosen;
    bool ok = true;
    for (std::size_t e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1UL)) continue;
      auto [u, v] = edges[e];
      ok = !used[static_cast<std::size_t>(u)] && !used[static_cast<std::size_t>(v)];
      used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
      chosen.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (ok) found.push_back(chosen);
  }
  return found;
}

// Calls f on the edge list of every labeled tree on n >= 2 vertices.
inline void for_each_prufer_tree(int n, const std::function<void(const EdgeList&)>& f) {
  if (n == 2) {
    f({{0, 1}});
    return;
  }
  const int len = n - 2;
  std::vector<int> seq(static_cast<std::size_t>(len), 0);
  std::vector<int> degree(static_cast<std::size_t>(n));
  EdgeList edges(static_cast<std::size_t>(n - 1));
  while (true) {
    std::fill(degree.begin(), degree.end(), 1);
    for (int x : seq) ++degree[static_cast<std::size_t>(x)];
    int ptr = 0;
    while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
    int leaf = ptr;
    std::size_t k = 0;
    for (int x : seq) {
      edges[k++] = {leaf, x};
      if (--degree[static_cast<std::size_t>(x)] == 1 && x < ptr) {
        leaf = x;
      } else {
        ++ptr;
        while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
        leaf = ptr;
      }
    }
    edges[k] = {leaf, n - 1};
    f(edges);
    int pos = len - 1;
    while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1) seq[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return;
    ++seq[static_cast<std::size_t>(pos)];
  }
}

// Calls f on one representative edge list per rooted tree on n vertices,
// via canonical level sequences (Beyer-Hedetniemi successor rule).
inline void for_each_rooted_tree(int n, const std::function<void(const EdgeList&)>& f) {
  std::vector<int> level(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) level[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    EdgeList edges;
    for (int i = 1; i < n; ++i) {
      int j = i - 1;
      while (level[static_cast<std::size_t>(j)] != level[static_cast<std::size_t>(i)] - 1) --j;
      edges.emplace_back(j, i);
    }
    f(edges);
    int p = n - 1;
    while (p > 0 && level[static_cast<std::size_t>(p)] <= 2) --p;
    if (p == 0) return;
    int q = p - 1;
    while (level[static_cast<std::size_t>(q)] != level[static_cast<std::size_t>(p)] - 1) --q;
    for (int i = p; i < n; ++i) level[static_cast<std::size_t>(i)] = level[static_cast<std::size_t>(i - (p - q))];
  }
}

inline std::string rooted_code(const Adjacency& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[static_cast<std::size_t>(v)])
    if (w != parent) kids.push_back(rooted_code(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "0";
  for (const auto& k : kids) out += k;
  return out + "1";
}

// Isomorphism-invariant code: rooted at the center(s) found by peeling
// leaves, taking the smaller string for a bicentral tree.
inline std::string free_code(int n, const EdgeList& edges) {
  const Adjacency adj = adjacency(n, edges);
  if (n == 1) return "01";
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    if (deg[static_cast<std::size_t>(v)] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer) {
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (--deg[static_cast<std::size_t>(w)] == 1) next.push_back(w);
      }
    }
    layer = next;
  }
  std::string best;
  for (int c : layer) {
    std::string code = rooted_code(adj, c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

inline bool has_perfect_matching(int n, const EdgeList& edges) { return !perfect_matchings(n, edges).empty(); }

// Bottom-up DP from root 0: a vertex with one unmatched child must take it,
// two unmatched children make a perfect matching impossible.
inline bool matchable_dp(int n, const EdgeList& edges) {
  if (n % 2 != 0) return false;
  const Adjacency adj = adjacency(n, edges);
  // state[v]: 0 = subtree perfectly matched, 1 = only v left free
  std::vector<int> order;
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (parent[static_cast<std::size_t>(w)] != -1) continue;
      parent[static_cast<std::size_t>(w)] = v;
      stack.push_back(w);
    }
  }
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    int free_children = 0;
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (v != 0 && w == parent[static_cast<std::size_t>(v)]) continue;
      free_children += state[static_cast<std::size_t>(w)];
    }
    if (free_children > 1) return false;
    state[static_cast<std::size_t>(v)] = free_children == 1 ? 0 : 1;
  }
  return state[0] == 0;
}

// Counts isomorphism classes of trees on n vertices (optionally only those
// with a perfect matching) from all labeled trees.
inline std::size_t prufer_class_count(int n, bool nonsingular_only) {
  std::set<std::string> codes;
  for_each_prufer_tree(n, [&](const EdgeList& e) {
    if (nonsingular_only && !matchable_dp(n, e)) return;
    codes.insert(free_code(n, e));
  });
  return codes.size();
}

inline std::size_t rooted_class_count(int n, bool nonsingular_only) {
  std::set<std::string> codes;
  for_each_rooted_tree(n, [&](const EdgeList& e) {
    if (nonsingular_only && !matchable_dp(n, e)) return;
    codes.insert(free_code(n, e));
  });
  return codes.size();
}

// The vertex path from u to v.
inline std::vector<int> tree_path(const Adjacency& adj, int u, int v) {
  std::vector<int> parent(adj.size(), -1);
  std::vector<int> queue{u};
  parent[static_cast<std::size_t>(u)] = u;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (int w : adj[static_cast<std::size_t>(queue[h])]) {
      if (parent[static_cast<std::size_t>(w)] != -1) continue;
      parent[static_cast<std::size_t>(w)] = queue[h];
      queue.push_back(w);
    }
  }
  std::vector<int> path{v};
  while (path.back() != u) path.push_back(parent[static_cast<std::size_t>(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

// 0 = not alternating, 1 = odd, 2 = even, from the explicit path.
inline int alternation(const Adjacency& adj, const std::vector<int>& partner, int u, int v) {
  const auto path = tree_path(adj, u, v);
  const std::size_t len = path.size() - 1;
  if (len % 2 == 0) return 0;
  int matched = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const bool is_matching = partner[static_cast<std::size_t>(path[i])] == path[i + 1];
    if (is_matching != (i % 2 == 0)) return 0;
    matched += is_matching ? 1 : 0;
  }
  return matched % 2 == 1 ? 1 : 2;
}

template <class T>
T det_cofactor(const qbd::Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return qbd::one<T>();
  if (n == 1) return m(0, 0);
  T total{};
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == T{}) continue;
    qbd::Matrix<T> minor(n - 1, n - 1);
    for (std::size_t a = 1; a < n; ++a)
      for (std::size_t b = 0, c = 0; b < n; ++b)
        if (b != j) minor(a - 1, c++) = m(a, b);
    T term = m(0, j) * det_cofactor(minor);
    if (j % 2 == 0) {
      total += term;
    } else {
      total = total - term;
    }
  }
  return total;
}

}  // namespace oracle

#endif  // QBD_TESTS_ORACLES_HPP
