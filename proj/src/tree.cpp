#include "qbd/tree.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <utility>

#include "qbd/error.hpp"

namespace qbd {

namespace {

std::string edge_str(const Edge& e) {
  return "[" + std::to_string(e.first) + "," + std::to_string(e.second) + "]";
}

}  // namespace

Tree Tree::from_edges(int n, std::vector<Edge> edges) {
  if (n < 1) throw Error(ErrorCode::NotATree, "a tree needs at least one vertex");
  if (static_cast<int>(edges.size()) != n - 1) {
    throw Error(ErrorCode::NotATree, std::to_string(edges.size()) + " edges on " +
                                         std::to_string(n) + " vertices");
  }
  Tree t;
  t.adjacency_.assign(static_cast<std::size_t>(n), {});
  for (auto& e : edges) {
    if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n) {
      throw Error(ErrorCode::NotATree, "vertex id out of range in edge " + edge_str(e));
    }
    if (e.first == e.second) throw Error(ErrorCode::NotATree, "self-loop " + edge_str(e));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw Error(ErrorCode::NotATree, "duplicate edge " + edge_str(*dup));
  }
  for (const auto& [u, v] : edges) {
    t.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    t.adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : t.adjacency_) std::sort(nb.begin(), nb.end());
  t.edges_ = std::move(edges);

  // n - 1 edges plus connectivity means acyclic.
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : t.neighbors(x)) {
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != n) throw Error(ErrorCode::NotATree, "graph is disconnected");
  return t;
}

Tree Tree::from_edges(std::vector<Edge> edges) {
  int n = 1;
  for (const auto& [u, v] : edges) n = std::max({n, u + 1, v + 1});
  return from_edges(n, std::move(edges));
}

Tree Tree::path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_edges(n, std::move(edges));
}

bool Tree::adjacent(Vertex u, Vertex v) const {
  const auto& nb = adjacency_[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

Tree Tree::with_leaf(Vertex v) const {
  auto edges = edges_;
  edges.emplace_back(v, size());
  return from_edges(size() + 1, std::move(edges));
}

Tree Tree::permuted(std::span<const Vertex> perm) const {
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& [u, v] : edges_) {
    edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  }
  return from_edges(size(), std::move(edges));
}

Tree parse_tree(const std::vector<Edge>& edges) { return Tree::from_edges(edges); }

DistanceTable::DistanceTable(const Tree& t)
    : n_(t.size()), d_(static_cast<std::size_t>(n_ * n_), -1) {
  std::vector<Vertex> queue(static_cast<std::size_t>(n_));
  for (Vertex s = 0; s < n_; ++s) {
    int* row = &d_[static_cast<std::size_t>(s * n_)];
    row[s] = 0;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      Vertex x = queue[head++];
      for (Vertex y : t.neighbors(x)) {
        if (row[y] < 0) {
          row[y] = row[x] + 1;
          queue[tail++] = y;
        }
      }
    }
  }
}

int DistanceTable::diameter() const { return *std::max_element(d_.begin(), d_.end()); }

DistanceTable distances(const Tree& t) { return DistanceTable(t); }

std::vector<Edge> perfect_matching(const Tree& t) {
  const int n = t.size();
  if (n % 2 != 0) {
    throw Error(ErrorCode::NotNonsingular, "odd vertex count " + std::to_string(n));
  }
  std::vector<int> live_degree(static_cast<std::size_t>(n));
  std::vector<Vertex> mate(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v) {
    live_degree[static_cast<std::size_t>(v)] = t.degree(v);
    if (t.degree(v) == 1) leaves.push_back(v);
  }
  auto fail = [](Vertex v) {
    throw Error(ErrorCode::NotNonsingular, "vertex " + std::to_string(v) + " cannot be matched");
  };
  while (!leaves.empty()) {
    Vertex x = leaves.back();
    leaves.pop_back();
    if (mate[static_cast<std::size_t>(x)] >= 0) continue;
    Vertex y = -1;
    for (Vertex z : t.neighbors(x)) {
      if (mate[static_cast<std::size_t>(z)] < 0) {
        y = z;
        break;
      }
    }
    if (y < 0) fail(x);
    // A leaf is forced onto its only live neighbour.
    mate[static_cast<std::size_t>(x)] = y;
    mate[static_cast<std::size_t>(y)] = x;
    for (Vertex z : t.neighbors(y)) {
      if (mate[static_cast<std::size_t>(z)] >= 0) continue;
      int& dz = live_degree[static_cast<std::size_t>(z)];
      --dz;
      if (dz == 1) leaves.push_back(z);
      if (dz == 0) fail(z);
    }
  }
  std::vector<Edge> matching;
  for (Vertex v = 0; v < n; ++v) {
    Vertex m = mate[static_cast<std::size_t>(v)];
    if (m < 0) fail(v);
    if (v < m) matching.emplace_back(v, m);
  }
  return matching;
}

bool has_perfect_matching(const Tree& t) {
  try {
    perfect_matching(t);
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotNonsingular) throw;
    return false;
  }
}

MatchedTree::MatchedTree(Tree tree, std::vector<Vertex> l, std::vector<Vertex> r)
    : tree_(std::move(tree)), l_(std::move(l)), r_(std::move(r)) {
  labels_.assign(static_cast<std::size_t>(tree_.size()), Label{Side::L, -1});
  for (int i = 0; i < p(); ++i) {
    labels_[static_cast<std::size_t>(l_[static_cast<std::size_t>(i)])] = {Side::L, i};
    labels_[static_cast<std::size_t>(r_[static_cast<std::size_t>(i)])] = {Side::R, i};
  }
}

MatchedTree MatchedTree::from_labels(Tree tree, std::vector<Vertex> l, std::vector<Vertex> r) {
  const int n = tree.size();
  if (l.size() != r.size() || static_cast<int>(2 * l.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "labels must cover all " + std::to_string(n) +
                                                " vertices in matched pairs");
  }
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (Vertex v : {l[i], r[i]}) {
      if (v < 0 || v >= n || used[static_cast<std::size_t>(v)]) {
        throw Error(ErrorCode::InvalidArgument, "labels are not a partition of the vertex set");
      }
      used[static_cast<std::size_t>(v)] = 1;
    }
    if (!tree.adjacent(l[i], r[i])) {
      throw Error(ErrorCode::NotNonsingular,
                  "pair " + std::to_string(i + 1) + " is not an edge: " + edge_str({l[i], r[i]}));
    }
  }
  MatchedTree mt(std::move(tree), std::move(l), std::move(r));
  for (const auto& [u, v] : mt.tree_.edges()) {
    if (mt.side(u) == mt.side(v)) {
      throw Error(ErrorCode::InvalidArgument, "(L,R) is not a proper 2-colouring at edge " +
                                                  edge_str({u, v}));
    }
  }
  return mt;
}

Vertex MatchedTree::partner(Vertex v) const {
  const Label lab = label_of(v);
  return lab.side == Side::L ? r(lab.index) : l(lab.index);
}

std::vector<Edge> MatchedTree::matching() const {
  std::vector<Edge> m;
  for (int i = 0; i < p(); ++i) m.emplace_back(std::min(l(i), r(i)), std::max(l(i), r(i)));
  std::sort(m.begin(), m.end());
  return m;
}

MatchedTree MatchedTree::relabeled(std::span<const int> pair_perm, bool swap_sides) const {
  std::vector<Vertex> nl(l_.size());
  std::vector<Vertex> nr(r_.size());
  for (std::size_t i = 0; i < l_.size(); ++i) {
    auto j = static_cast<std::size_t>(pair_perm[i]);
    nl.at(j) = swap_sides ? r_[i] : l_[i];
    nr.at(j) = swap_sides ? l_[i] : r_[i];
  }
  return from_labels(tree_, std::move(nl), std::move(nr));
}

MatchedTree standard_labeling(const Tree& t, const std::vector<Edge>& matching) {
  const int n = t.size();
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> stack{0};
  colour[0] = 0;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : t.neighbors(x)) {
      if (colour[static_cast<std::size_t>(y)] < 0) {
        colour[static_cast<std::size_t>(y)] = 1 - colour[static_cast<std::size_t>(x)];
        stack.push_back(y);
      }
    }
  }
  std::vector<Edge> pairs;  // (l, r)
  for (const auto& [u, v] : matching) {
    if (colour[static_cast<std::size_t>(u)] == 0) {
      pairs.emplace_back(u, v);
    } else {
      pairs.emplace_back(v, u);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<Vertex> l;
  std::vector<Vertex> r;
  for (const auto& [a, b] : pairs) {
    l.push_back(a);
    r.push_back(b);
  }
  return MatchedTree::from_labels(t, std::move(l), std::move(r));
}

MatchedTree match(const Tree& t) { return standard_labeling(t, perfect_matching(t)); }

std::vector<PathClass> classify_paths_from(const MatchedTree& mt, Vertex source) {
  const Tree& t = mt.tree();
  std::vector<PathClass> out(static_cast<std::size_t>(t.size()));
  const Vertex mate = mt.partner(source);
  for (Vertex y : t.neighbors(source)) {
    out[static_cast<std::size_t>(y)].adjacent = true;
    out[static_cast<std::size_t>(y)].matching_edge = (y == mate);
  }
  // Only extensions that keep alternating are followed: from a vertex reached
  // by a matching edge, step along a non-matching edge and then the matching
  // edge at the far end.
  struct Frame {
    Vertex at;
    Vertex from;
    int matched;
  };
  out[static_cast<std::size_t>(mate)].kind = Alternation::OddAlternating;
  std::vector<Frame> stack{{mate, source, 1}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    for (Vertex z : t.neighbors(f.at)) {
      if (z == f.from) continue;
      const Vertex w = mt.partner(z);
      const int matched = f.matched + 1;
      out[static_cast<std::size_t>(w)].kind =
          matched % 2 == 1 ? Alternation::OddAlternating : Alternation::EvenAlternating;
      stack.push_back({w, z, matched});
    }
  }
  return out;
}

PathClass classify_path(const MatchedTree& mt, Vertex u, Vertex v) {
  if (u == v) throw Error(ErrorCode::InvalidArgument, "classify_path needs distinct endpoints");
  return classify_paths_from(mt, u)[static_cast<std::size_t>(v)];
}

int diff(const MatchedTree& mt, Vertex v) {
  int d = 0;
  for (const auto& pc : classify_paths_from(mt, v)) {
    if (pc.kind == Alternation::EvenAlternating) ++d;
    if (pc.kind == Alternation::OddAlternating) --d;
  }
  return d;
}

std::vector<int> diffs(const MatchedTree& mt) {
  std::vector<int> out(static_cast<std::size_t>(mt.size()));
  for (Vertex v = 0; v < mt.size(); ++v) out[static_cast<std::size_t>(v)] = diff(mt, v);
  return out;
}

MatchedTree attach_p2(const MatchedTree& mt, Vertex v) {
  if (v < 0 || v >= mt.size()) {
    throw Error(ErrorCode::InvalidArgument, "attachment vertex " + std::to_string(v) + " not in tree");
  }
  const Vertex u = mt.size();
  const Vertex w = u + 1;
  auto edges = mt.tree().edges();
  edges.emplace_back(v, u);
  edges.emplace_back(u, w);
  auto l = mt.left();
  auto r = mt.right();
  if (mt.side(v) == Side::L) {
    r.push_back(u);
    l.push_back(w);
  } else {
    l.push_back(u);
    r.push_back(w);
  }
  return MatchedTree::from_labels(Tree::from_edges(w + 1, std::move(edges)), std::move(l),
                                  std::move(r));
}

Detachment detach_p2(const MatchedTree& mt) {
  if (mt.p() < 2) throw Error(ErrorCode::InvalidArgument, "detach_p2 requires p >= 2");
  const Tree& t = mt.tree();
  for (int i = mt.p() - 1; i >= 0; --i) {
    for (auto [leaf, inner] : {Edge{mt.l(i), mt.r(i)}, Edge{mt.r(i), mt.l(i)}}) {
      if (t.degree(leaf) != 1 || t.degree(inner) != 2) continue;
      Vertex site = t.neighbors(inner)[0] == leaf ? t.neighbors(inner)[1] : t.neighbors(inner)[0];
      std::vector<Vertex> new_id(static_cast<std::size_t>(t.size()), -1);
      Vertex next = 0;
      for (Vertex x = 0; x < t.size(); ++x) {
        if (x != leaf && x != inner) new_id[static_cast<std::size_t>(x)] = next++;
      }
      std::vector<Edge> edges;
      for (const auto& [a, b] : t.edges()) {
        if (a == leaf || a == inner || b == leaf || b == inner) continue;
        edges.emplace_back(new_id[static_cast<std::size_t>(a)], new_id[static_cast<std::size_t>(b)]);
      }
      std::vector<Vertex> l;
      std::vector<Vertex> r;
      for (int j = 0; j < mt.p(); ++j) {
        if (j == i) continue;
        l.push_back(new_id[static_cast<std::size_t>(mt.l(j))]);
        r.push_back(new_id[static_cast<std::size_t>(mt.r(j))]);
      }
      auto smaller = MatchedTree::from_labels(Tree::from_edges(next, std::move(edges)),
                                              std::move(l), std::move(r));
      return Detachment{std::move(smaller), new_id[static_cast<std::size_t>(site)], i, leaf, inner};
    }
  }
  // Unreachable for a nonsingular tree: the end of a longest path qualifies.
  throw Error(ErrorCode::InvalidArgument, "no pendant P2 found");
}

namespace {

std::vector<Vertex> centroids(const Tree& t) {
  const int n = t.size();
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<Vertex> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (Vertex y : t.neighbors(x)) {
      if (parent[static_cast<std::size_t>(y)] < 0) {
        parent[static_cast<std::size_t>(y)] = x;
        stack.push_back(y);
      }
    }
  }
  std::vector<int> sub(static_cast<std::size_t>(n), 1);
  std::vector<int> heaviest(static_cast<std::size_t>(n), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex x = *it;
    if (x == 0) continue;
    Vertex px = parent[static_cast<std::size_t>(x)];
    sub[static_cast<std::size_t>(px)] += sub[static_cast<std::size_t>(x)];
    heaviest[static_cast<std::size_t>(px)] =
        std::max(heaviest[static_cast<std::size_t>(px)], sub[static_cast<std::size_t>(x)]);
  }
  int best = std::numeric_limits<int>::max();
  std::vector<Vertex> out;
  for (Vertex x = 0; x < n; ++x) {
    int worst = std::max(heaviest[static_cast<std::size_t>(x)], n - sub[static_cast<std::size_t>(x)]);
    if (worst < best) {
      best = worst;
      out.clear();
    }
    if (worst == best) out.push_back(x);
  }
  return out;
}

// AHU codes of every vertex for the tree rooted at root, plus the parent map.
struct RootedCodes {
  std::vector<std::string> code;
  std::vector<Vertex> parent;
};

RootedCodes rooted_codes(const Tree& t, Vertex root) {
  const int n = t.size();
  RootedCodes rc{std::vector<std::string>(static_cast<std::size_t>(n)),
                 std::vector<Vertex>(static_cast<std::size_t>(n), -1)};
  std::vector<Vertex> order;
  std::vector<Vertex> stack{root};
  rc.parent[static_cast<std::size_t>(root)] = root;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (Vertex y : t.neighbors(x)) {
      if (rc.parent[static_cast<std::size_t>(y)] < 0) {
        rc.parent[static_cast<std::size_t>(y)] = x;
        stack.push_back(y);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex x = *it;
    std::vector<const std::string*> kids;
    for (Vertex y : t.neighbors(x)) {
      // parent[root] == root, which is never a neighbour.
      if (y != rc.parent[static_cast<std::size_t>(x)]) kids.push_back(&rc.code[static_cast<std::size_t>(y)]);
    }
    std::sort(kids.begin(), kids.end(), [](const auto* a, const auto* b) { return *a < *b; });
    std::string s = "(";
    for (const auto* k : kids) s += *k;
    s += ")";
    rc.code[static_cast<std::size_t>(x)] = std::move(s);
  }
  return rc;
}

std::pair<Vertex, RootedCodes> canonical_root(const Tree& t) {
  auto cs = centroids(t);
  Vertex best_root = cs[0];
  RootedCodes best = rooted_codes(t, cs[0]);
  for (std::size_t i = 1; i < cs.size(); ++i) {
    RootedCodes other = rooted_codes(t, cs[i]);
    if (other.code[static_cast<std::size_t>(cs[i])] < best.code[static_cast<std::size_t>(best_root)]) {
      best_root = cs[i];
      best = std::move(other);
    }
  }
  return {best_root, std::move(best)};
}

}  // namespace

std::string canonical_code(const Tree& t) {
  auto [root, rc] = canonical_root(t);
  return rc.code[static_cast<std::size_t>(root)];
}

Tree canonical_form(const Tree& t) {
  auto [root, rc] = canonical_root(t);
  const int n = t.size();
  std::vector<Vertex> new_id(static_cast<std::size_t>(n), -1);
  Vertex next = 0;
  std::vector<Vertex> stack{root};
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    new_id[static_cast<std::size_t>(x)] = next++;
    std::vector<Vertex> kids;
    for (Vertex y : t.neighbors(x)) {
      if (y != rc.parent[static_cast<std::size_t>(x)]) kids.push_back(y);
    }
    // Visit children in ascending code order; push in reverse for preorder.
    std::stable_sort(kids.begin(), kids.end(), [&](Vertex a, Vertex b) {
      return rc.code[static_cast<std::size_t>(a)] < rc.code[static_cast<std::size_t>(b)];
    });
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return t.permuted(new_id);
}

std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4U]);
    out.push_back(kDigits[c & 15U]);
  }
  return out;
}

std::vector<MatchedTree> enumerate_nonsingular(int p, int max_p) {
  if (p < 1 || p > max_p) {
    throw Error(ErrorCode::InvalidArgument,
                "p must lie in [1, " + std::to_string(max_p) + "], got " + std::to_string(p));
  }
  std::vector<MatchedTree> level{match(Tree::path(2))};
  for (int k = 1; k < p; ++k) {
    std::map<std::string, Tree> classes;
    for (const auto& mt : level) {
      for (Vertex v = 0; v < mt.size(); ++v) {
        Tree grown = attach_p2(mt, v).tree();
        std::string code = canonical_code(grown);
        if (!classes.contains(code)) classes.emplace(std::move(code), std::move(grown));
      }
    }
    level.clear();
    for (const auto& [code, tree] : classes) level.push_back(match(canonical_form(tree)));
  }
  return level;
}

std::vector<Tree> enumerate_trees(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::vector<Tree> level{Tree::from_edges(1, {})};
  for (int k = 1; k < n; ++k) {
    std::map<std::string, Tree> classes;
    for (const auto& t : level) {
      for (Vertex v = 0; v < t.size(); ++v) {
        Tree grown = t.with_leaf(v);
        std::string code = canonical_code(grown);
        if (!classes.contains(code)) classes.emplace(std::move(code), std::move(grown));
      }
    }
    level.clear();
    for (const auto& [code, tree] : classes) level.push_back(canonical_form(tree));
  }
  return level;
}

MatchedTree random_nonsingular(int p, std::uint64_t seed) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "p must be positive");
  std::mt19937_64 rng(seed);
  // Rejection sampling keeps the choice unbiased and independent of the
  // standard library's distribution implementation.
  auto uniform = [&rng](std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
  };
  MatchedTree mt = MatchedTree::from_labels(Tree::path(2), {0}, {1});
  for (int k = 1; k < p; ++k) {
    mt = attach_p2(mt, static_cast<Vertex>(uniform(static_cast<std::uint64_t>(mt.size()))));
  }
  return mt;
}

bool is_corona(const MatchedTree& mt) {
  for (int i = 0; i < mt.p(); ++i) {
    if (mt.degree(mt.l(i)) != 1 && mt.degree(mt.r(i)) != 1) return false;
  }
  return true;
}

}  // namespace qbd
