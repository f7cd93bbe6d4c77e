#ifndef QBD_TREE_HPP
#define QBD_TREE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qbd {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Finite tree on vertices 0..n-1. Edges are stored normalised (u < v) and
/// sorted lexicographically.
class Tree {
 public:
  // Validates connectivity, acyclicity and vertex ids; throws NotATree.
  static Tree from_edges(int n, std::vector<Edge> edges);
  // n is inferred as max id + 1 (a single vertex when edges is empty).
  static Tree from_edges(std::vector<Edge> edges);
  static Tree path(int n);

  int size() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
  bool adjacent(Vertex u, Vertex v) const;

  // The tree with a new leaf attached at v (new vertex id = size()).
  Tree with_leaf(Vertex v) const;
  // Relabels vertex v as perm[v].
  Tree permuted(std::span<const Vertex> perm) const;

 private:
  Tree() = default;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

Tree parse_tree(const std::vector<Edge>& edges);

// All-pairs distances, row-major n x n, by breadth-first search.
class DistanceTable {
 public:
  explicit DistanceTable(const Tree& t);
  int operator()(Vertex u, Vertex v) const { return d_[static_cast<std::size_t>(u * n_ + v)]; }
  int size() const { return n_; }
  int diameter() const;

 private:
  int n_;
  std::vector<int> d_;
};

DistanceTable distances(const Tree& t);

/// The unique perfect matching, by leaf stripping. Throws NotNonsingular.
std::vector<Edge> perfect_matching(const Tree& t);
bool has_perfect_matching(const Tree& t);

enum class Side : std::uint8_t { L, R };
inline Side opposite(Side s) { return s == Side::L ? Side::R : Side::L; }

// Pair index is 0-based here; l_1 in the usual notation is index 0.
struct Label {
  Side side;
  int index;
  friend bool operator==(const Label&, const Label&) = default;
};

/// A nonsingular tree with its perfect matching and a standard (L, R)
/// labeling: l_i and r_i are matched partners, and (L, R) is a proper
/// 2-colouring. Immutable once built.
class MatchedTree {
 public:
  // l[i] and r[i] are the vertices of the i-th matched pair. Validates every
  // invariant; throws NotNonsingular / InvalidArgument on violation.
  static MatchedTree from_labels(Tree tree, std::vector<Vertex> l, std::vector<Vertex> r);

  const Tree& tree() const { return tree_; }
  int p() const { return static_cast<int>(l_.size()); }
  int size() const { return tree_.size(); }

  Vertex l(int i) const { return l_[static_cast<std::size_t>(i)]; }
  Vertex r(int i) const { return r_[static_cast<std::size_t>(i)]; }
  Vertex vertex_of(Side side, int i) const { return side == Side::L ? l(i) : r(i); }
  const std::vector<Vertex>& left() const { return l_; }
  const std::vector<Vertex>& right() const { return r_; }
  Label label_of(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }
  Side side(Vertex v) const { return label_of(v).side; }
  Vertex partner(Vertex v) const;
  bool is_matching_edge(Vertex u, Vertex v) const { return tree_.adjacent(u, v) && partner(u) == v; }
  int degree(Vertex v) const { return tree_.degree(v); }
  std::vector<Edge> matching() const;

  // Permutes pair indices (new index of pair i is perm[i]) and optionally
  // exchanges the roles of L and R. Vertex ids are unchanged.
  MatchedTree relabeled(std::span<const int> pair_perm, bool swap_sides) const;

 private:
  MatchedTree(Tree tree, std::vector<Vertex> l, std::vector<Vertex> r);
  Tree tree_;
  std::vector<Vertex> l_;
  std::vector<Vertex> r_;
  std::vector<Label> labels_;
};

/// 2-colours from vertex 0 (placed in L) and numbers the pairs by ascending
/// vertex id of their L endpoint.
MatchedTree standard_labeling(const Tree& t, const std::vector<Edge>& matching);
// perfect_matching followed by standard_labeling.
MatchedTree match(const Tree& t);

enum class Alternation : std::uint8_t { NotAlternating, OddAlternating, EvenAlternating };

struct PathClass {
  Alternation kind = Alternation::NotAlternating;
  bool adjacent = false;
  bool matching_edge = false;
  friend bool operator==(const PathClass&, const PathClass&) = default;
};

// A path is alternating when its edges alternate matching / non-matching and
// both terminal edges are matching edges; odd / even counts matching edges.
PathClass classify_path(const MatchedTree& mt, Vertex u, Vertex v);
// Classes of the paths from source to every vertex (source itself is
// NotAlternating). Linear time.
std::vector<PathClass> classify_paths_from(const MatchedTree& mt, Vertex source);

// #even alternating paths from v minus #odd alternating paths from v.
int diff(const MatchedTree& mt, Vertex v);
std::vector<int> diffs(const MatchedTree& mt);

/// Attaches a new P2 [v, u, w] at v. If v is in L then u = r_{p+1},
/// w = l_{p+1}; otherwise u = l_{p+1}, w = r_{p+1}. New ids: u = 2p, w = 2p+1.
MatchedTree attach_p2(const MatchedTree& mt, Vertex v);

struct Detachment {
  MatchedTree smaller;
  Vertex site;          // attachment vertex, as an id of `smaller`
  int removed_pair;     // pair index removed from the original labeling
  Vertex removed_leaf;  // original ids of the removed vertices
  Vertex removed_inner;
};

/// Removes a pendant P2: a leaf whose partner has degree 2. Prefers the
/// highest pair index, so detach_p2(attach_p2(t, v)) recovers t exactly.
/// Requires p >= 2.
Detachment detach_p2(const MatchedTree& mt);

/// Canonical AHU encoding rooted at the centroid (the smaller encoding when
/// there are two centroids). Equal codes iff isomorphic trees.
std::string canonical_code(const Tree& t);
// The tree renumbered in canonical preorder; isomorphic inputs give
// identical outputs.
Tree canonical_form(const Tree& t);
std::string to_hex(const std::string& bytes);

/// All isomorphism classes of nonsingular trees on 2p vertices, sorted by
/// canonical code, each in canonical form with the standard labeling.
std::vector<MatchedTree> enumerate_nonsingular(int p, int max_p = 8);
/// All isomorphism classes of trees on n vertices, sorted by canonical code.
std::vector<Tree> enumerate_trees(int n);

/// P2 grown by p-1 attachments at uniformly chosen vertices (mt19937_64).
MatchedTree random_nonsingular(int p, std::uint64_t seed);

// Structural test: every matching edge has a leaf endpoint, i.e. T = F o K1.
bool is_corona(const MatchedTree& mt);

}  // namespace qbd

#endif  // QBD_TREE_HPP
