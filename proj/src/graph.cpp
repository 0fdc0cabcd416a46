#include "kronres/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace kronres {

WeightedDigraph::WeightedDigraph(Matrix adj) : adj_(std::move(adj)) {
  if (adj_.rows() < 1 || adj_.rows() != adj_.cols()) {
    throw PreconditionError("adjacency matrix must be square with n >= 1");
  }
  if ((adj_.array() < 0.0).any()) {
    throw PreconditionError("adjacency entries must be nonnegative");
  }
  if (!adj_.allFinite()) {
    throw PreconditionError("adjacency entries must be finite");
  }
}

std::vector<Edge> WeightedDigraph::edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (adj_(i, j) > 0.0) out.push_back({i, j, adj_(i, j)});
    }
  }
  return out;
}

NodeSubset::NodeSubset(std::vector<int> indices, int n) : alpha_(std::move(indices)), n_(n) {
  if (alpha_.empty()) throw PreconditionError("node subset must be nonempty");
  std::sort(alpha_.begin(), alpha_.end());
  for (std::size_t k = 0; k < alpha_.size(); ++k) {
    if (alpha_[k] < 0 || alpha_[k] >= n_) {
      throw PreconditionError("node index " + std::to_string(alpha_[k]) + " out of range [0," +
                              std::to_string(n_) + ")");
    }
    if (k > 0 && alpha_[k] == alpha_[k - 1]) {
      throw PreconditionError("duplicate node index " + std::to_string(alpha_[k]));
    }
  }
}

bool NodeSubset::contains(int i) const {
  return std::binary_search(alpha_.begin(), alpha_.end(), i);
}

std::vector<int> NodeSubset::complement() const {
  std::vector<int> out;
  out.reserve(n_ - size());
  for (int i = 0; i < n_; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return out;
}

WeightedDigraph build_graph(int n, const std::vector<Edge>& edges) {
  if (n < 1) throw PreconditionError("node count must be >= 1");
  Matrix adj = Matrix::Zero(n, n);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      throw PreconditionError("edge endpoint out of range");
    }
    if (!(e.weight > 0.0)) {
      throw PreconditionError("edge weights must be positive");
    }
    if (!seen.insert({e.from, e.to}).second) {
      throw PreconditionError("duplicate edge (" + std::to_string(e.from) + "," +
                              std::to_string(e.to) + ")");
    }
    adj(e.from, e.to) = e.weight;
  }
  return WeightedDigraph(std::move(adj));
}

Vector degree_vector(const WeightedDigraph& g) { return g.adjacency().rowwise().sum(); }

Matrix loopy_laplacian(const WeightedDigraph& g) {
  const Matrix& a = g.adjacency();
  Matrix q = -a;
  q.diagonal() = degree_vector(g);  // Q_ii = D_ii; row sum = A_ii
  return q;
}

Matrix loopless_laplacian(const WeightedDigraph& g) {
  const Matrix& a = g.adjacency();
  Matrix l = -a;
  l.diagonal() = degree_vector(g) - a.diagonal();
  return l;
}

WeightedDigraph graph_from_loopy(const Matrix& q, double tol) {
  if (q.rows() != q.cols() || q.rows() < 1) {
    throw PreconditionError("loopy Laplacian must be square with n >= 1");
  }
  const int n = static_cast<int>(q.rows());
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  Matrix adj = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double row_sum = q.row(i).sum();
    if (row_sum < -tol * scale) {
      throw PreconditionError("loopy Laplacian row " + std::to_string(i + 1) +
                              " has negative row sum");
    }
    adj(i, i) = std::max(0.0, row_sum);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (q(i, j) > tol * scale) {
        throw PreconditionError("loopy Laplacian has positive off-diagonal entry");
      }
      adj(i, j) = std::max(0.0, -q(i, j));
    }
  }
  return WeightedDigraph(std::move(adj));
}

namespace {

// BFS over the support digraph; `reversed` walks edges backwards.
std::vector<char> bfs(const Matrix& adj, const std::vector<int>& seeds, bool reversed) {
  const int n = static_cast<int>(adj.rows());
  std::vector<char> visited(n, 0);
  std::deque<int> queue;
  for (int s : seeds) {
    if (!visited[s]) {
      visited[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < n; ++v) {
      double w = reversed ? adj(v, u) : adj(u, v);
      if (w > 0.0 && !visited[v]) {
        visited[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return visited;
}

}  // namespace

bool is_reachable_subset(const WeightedDigraph& g, const NodeSubset& alpha) {
  if (alpha.graph_size() != g.size()) {
    throw PreconditionError("node subset does not match graph size");
  }
  auto visited = bfs(g.adjacency(), alpha.indices(), /*reversed=*/true);
  for (int i : alpha.complement()) {
    if (!visited[i]) return false;
  }
  return true;
}

bool is_strongly_connected(const WeightedDigraph& g) {
  auto fwd = bfs(g.adjacency(), {0}, false);
  auto bwd = bfs(g.adjacency(), {0}, true);
  for (int i = 0; i < g.size(); ++i) {
    if (!fwd[i] || !bwd[i]) return false;
  }
  return true;
}

bool is_weight_balanced(const WeightedDigraph& g, double tol) {
  const Matrix& a = g.adjacency();
  for (int i = 0; i < g.size(); ++i) {
    double out = a.row(i).sum();
    double in = a.col(i).sum();
    if (std::abs(out - in) > tol * std::max(1.0, out)) return false;
  }
  return true;
}

Matrix transition_matrix(const WeightedDigraph& g) {
  const Matrix& a = g.adjacency();
  const int n = g.size();
  Matrix p = Matrix::Zero(n, n);
  Vector d = degree_vector(g);
  for (int i = 0; i < n; ++i) {
    if (d(i) > 0.0) {
      p.row(i) = a.row(i) / d(i);
    } else {
      p(i, i) = 1.0;  // virtual self-loop
    }
  }
  return p;
}

std::vector<int> reachable_from(const WeightedDigraph& g, int start) {
  if (start < 0 || start >= g.size()) throw PreconditionError("start node out of range");
  auto visited = bfs(g.adjacency(), {start}, false);
  std::vector<int> out;
  for (int i = 0; i < g.size(); ++i) {
    if (visited[i]) out.push_back(i);
  }
  return out;
}

}  // namespace kronres
