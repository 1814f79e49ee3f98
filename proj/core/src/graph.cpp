#include "linksel/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace linksel {

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& edges)
    : n_(node_count), adj_(static_cast<size_t>(node_count) * node_count, 0) {
  if (node_count <= 0) throw std::invalid_argument("graph: node count must be positive");
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (a == b) throw std::invalid_argument("graph: self-loops are not allowed");
    adj_[static_cast<size_t>(a) * n_ + b] = 1;
    adj_[static_cast<size_t>(b) * n_ + a] = 1;
  }
  nbrs_.resize(n_);
  for (int k = 0; k < n_; ++k) {
    nbrs_[k].push_back(k);
    for (int l = 0; l < n_; ++l)
      if (adjacent(k, l)) nbrs_[k].push_back(l);
    std::sort(nbrs_[k].begin(), nbrs_[k].end());
  }
}

Graph Graph::load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("graph: cannot open " + path);
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    if (n < 0) {
      if (ss >> n) {
        int extra;
        if (ss >> extra) throw std::invalid_argument("graph: malformed header in " + path);
      }
      continue;
    }
    int a, b;
    if (ss >> a) {
      if (!(ss >> b)) throw std::invalid_argument("graph: malformed edge line in " + path);
      edges.emplace_back(a, b);
    }
  }
  if (n < 0) throw std::invalid_argument("graph: missing node count in " + path);
  return Graph(n, edges);
}

bool Graph::is_connected() const {
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int k = q.front();
    q.pop();
    for (int l : nbrs_[k]) {
      if (!seen[l]) {
        seen[l] = 1;
        ++count;
        q.push(l);
      }
    }
  }
  return count == n_;
}

void Graph::require_neighborhood_size(int min_size) const {
  std::string bad;
  for (int k = 0; k < n_; ++k) {
    if (neighborhood_size(k) < min_size) bad += (bad.empty() ? "" : ", ") + std::to_string(k);
  }
  if (!bad.empty())
    throw std::invalid_argument("graph: nodes with |N_k| < " + std::to_string(min_size) + ": " + bad);
}

Eigen::VectorXd metropolis_weights(const Graph& g, const std::vector<int>& members, int k) {
  if (members.empty()) throw std::invalid_argument("metropolis_weights: empty member set");
  if (std::find(members.begin(), members.end(), k) == members.end())
    throw std::invalid_argument("metropolis_weights: k must belong to the member set");
  auto in_set_degree = [&](int node) {
    int deg = 0;
    for (int l : members)
      if (l == node || g.adjacent(node, l)) ++deg;
    return deg;
  };
  const int deg_k = in_set_degree(k);
  Eigen::VectorXd w(static_cast<Eigen::Index>(members.size()));
  double sum_off = 0.0;
  int k_pos = -1;
  for (size_t j = 0; j < members.size(); ++j) {
    int l = members[j];
    if (l == k) {
      k_pos = static_cast<int>(j);
      continue;
    }
    w[static_cast<Eigen::Index>(j)] = 1.0 / std::max(deg_k, in_set_degree(l));
    sum_off += w[static_cast<Eigen::Index>(j)];
  }
  w[k_pos] = 1.0 - sum_off;
  return w;
}

std::vector<std::vector<int>> candidate_sets(const Graph& g, int k) {
  const auto& nk = g.neighbors(k);
  if (nk.size() < 2)
    throw std::invalid_argument("candidate_sets: node needs at least one neighbor");
  std::vector<int> others;
  for (int l : nk)
    if (l != k) others.push_back(l);
  const int m = static_cast<int>(others.size());
  std::vector<std::vector<int>> sets;
  sets.reserve((1u << m) - 1);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> s{k};
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) s.push_back(others[j]);
    std::sort(s.begin(), s.end());
    sets.push_back(std::move(s));
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

Eigen::VectorXd selection_indicators(const std::vector<int>& members, int n) {
  Eigen::VectorXd ind = Eigen::VectorXd::Zero(n);
  for (int l : members) {
    if (l < 0 || l >= n) throw std::invalid_argument("selection_indicators: member out of range");
    ind[l] = 1.0;
  }
  return ind;
}

}  // namespace linksel
