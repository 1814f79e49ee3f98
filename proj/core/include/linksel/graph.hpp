#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace linksel {

// Undirected, partially connected network. Neighbor sets include the node
// itself, matching the convention used by diffusion strategies.
class Graph {
 public:
  Graph(int node_count, const std::vector<std::pair<int, int>>& edges);

  // Edge-list file: '#' comments, first value = node count, then 0-based
  // "a b" pairs. See docs/file_formats.md.
  static Graph load_edge_list(const std::string& path);

  int size() const { return n_; }
  bool adjacent(int a, int b) const { return adj_[a * n_ + b] != 0; }
  // Sorted neighbor set of k including k itself.
  const std::vector<int>& neighbors(int k) const { return nbrs_[k]; }
  // |N_k| (includes the node itself).
  int neighborhood_size(int k) const { return static_cast<int>(nbrs_[k].size()); }
  bool is_connected() const;
  // Link selection needs the node plus at least two neighbors.
  // Throws std::invalid_argument listing offending nodes unless every
  // |N_k| >= min_size.
  void require_neighborhood_size(int min_size) const;

 private:
  int n_;
  std::vector<unsigned char> adj_;
  std::vector<std::vector<int>> nbrs_;
};

// Metropolis combining weights for node k over a participating set
// `members` (sorted, must contain k, subset of N_k). Degrees are computed
// within the induced candidate subgraph so the weights always form a
// probability simplex. Returns one weight per member, in `members` order.
Eigen::VectorXd metropolis_weights(const Graph& g, const std::vector<int>& members, int k);

// All candidate sets {k} U S for nonempty S subset of N_k \ {k}, each
// returned as a sorted member list, in lexicographic order (deterministic
// tie-breaking for the exhaustive search). Count = 2^(|N_k|-1) - 1.
std::vector<std::vector<int>> candidate_sets(const Graph& g, int k);

// 0/1 indicator vector of length n for a member set.
Eigen::VectorXd selection_indicators(const std::vector<int>& members, int n);

}  // namespace linksel
