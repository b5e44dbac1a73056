#include "walklap/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <queue>
#include <random>
#include <sstream>

namespace walklap {

Graph::Graph()
    : row_ptr_(std::make_shared<const std::vector<Index>>(1, 0)),
      col_idx_(std::make_shared<const std::vector<Index>>()),
      degrees_(std::make_shared<const Vector>()) {}

Graph Graph::from_edges(Index num_nodes, std::span<const Edge> edges) {
  if (num_nodes < 0) throw Error(ErrorCode::InvalidParameter, "negative node count");
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      throw Error(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(u) + ", " +
                                                  std::to_string(v) + ") outside [0, " +
                                                  std::to_string(num_nodes) + ")");
    }
    if (u == v) continue;
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  std::vector<Index> row_ptr(static_cast<std::size_t>(num_nodes) + 1, 0);
  std::vector<Index> col_idx;
  col_idx.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++row_ptr[static_cast<std::size_t>(u) + 1];
    col_idx.push_back(v);
  }
  for (Index i = 0; i < num_nodes; ++i) row_ptr[i + 1] += row_ptr[i];

  Vector deg(num_nodes);
  Index max_deg = 0;
  for (Index i = 0; i < num_nodes; ++i) {
    const Index d = row_ptr[i + 1] - row_ptr[i];
    deg[i] = static_cast<double>(d);
    max_deg = std::max(max_deg, d);
  }

  Graph g;
  g.n_ = num_nodes;
  g.max_degree_ = max_deg;
  g.row_ptr_ = std::make_shared<const std::vector<Index>>(std::move(row_ptr));
  g.col_idx_ = std::make_shared<const std::vector<Index>>(std::move(col_idx));
  g.degrees_ = std::make_shared<const Vector>(std::move(deg));
  return g;
}

bool Graph::has_edge(Index i, Index j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(num_edges()));
  for (Index i = 0; i < n_; ++i) {
    for (Index j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

Matrix Graph::dense_adjacency() const {
  require_dense(n_, "dense adjacency");
  Matrix a = Matrix::Zero(n_, n_);
  for (Index i = 0; i < n_; ++i) {
    for (Index j : neighbors(i)) a(i, j) = 1.0;
  }
  return a;
}

DegreeVector degree_vector(const Graph& g) {
  DegreeVector d(static_cast<std::size_t>(g.num_nodes()));
  for (Index i = 0; i < g.num_nodes(); ++i) d[static_cast<std::size_t>(i)] = g.degree(i);
  return d;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

Graph parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyGraph, "empty Matrix Market stream");
  ++line_no;
  std::istringstream header(line);
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket" || lower(object) != "matrix") {
    parse_fail(line_no, "missing %%MatrixMarket matrix banner");
  }
  if (lower(layout) != "coordinate") parse_fail(line_no, "only coordinate layout is supported");
  field = lower(field);
  if (field != "pattern" && field != "real" && field != "integer") {
    parse_fail(line_no, "unsupported field '" + field + "'");
  }
  symmetry = lower(symmetry);
  if (symmetry != "general" && symmetry != "symmetric") {
    parse_fail(line_no, "unsupported symmetry '" + symmetry + "'");
  }

  Index rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || line[0] == '%') continue;
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> nnz)) parse_fail(line_no, "malformed size line");
    break;
  }
  if (rows < 0) parse_fail(line_no, "missing size line");
  if (rows != cols) parse_fail(line_no, "adjacency matrix must be square");
  if (rows == 0 || nnz == 0) throw Error(ErrorCode::EmptyGraph, "Matrix Market file has no entries");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(nnz));
  Index read = 0;
  while (read < nnz && std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || line[0] == '%') continue;
    std::istringstream entry(line);
    Index i = 0, j = 0;
    if (!(entry >> i >> j)) parse_fail(line_no, "malformed entry");
    if (field != "pattern") {
      double value = 0.0;
      if (!(entry >> value)) parse_fail(line_no, "missing numeric value");
    }
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw Error(ErrorCode::IndexOutOfRange, "line " + std::to_string(line_no) + ": entry (" +
                                                  std::to_string(i) + ", " + std::to_string(j) +
                                                  ") outside declared size");
    }
    edges.emplace_back(i - 1, j - 1);
    ++read;
  }
  if (read < nnz) parse_fail(line_no, "expected " + std::to_string(nnz) + " entries, got " +
                                          std::to_string(read));
  return Graph::from_edges(rows, edges);
}

Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Edge> edges;
  Index max_index = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    std::istringstream entry(line);
    long long u = 0, v = 0;
    if (!(entry >> u >> v)) parse_fail(line_no, "expected two node indices");
    if (u < 0 || v < 0) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "line " + std::to_string(line_no) + ": negative node index");
    }
    edges.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
    max_index = std::max<Index>(max_index, std::max<Index>(u, v));
  }
  if (edges.empty()) throw Error(ErrorCode::EmptyGraph, "edge list has no edges");
  return Graph::from_edges(max_index + 1, edges);
}

}  // namespace

Graph load_graph(std::istream& in, GraphFormat format) {
  switch (format) {
    case GraphFormat::MatrixMarket: return parse_matrix_market(in);
    case GraphFormat::EdgeList: return parse_edge_list(in);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown graph format");
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  const bool mtx = path.size() >= 4 && lower(path.substr(path.size() - 4)) == ".mtx";
  return load_graph(in, mtx ? GraphFormat::MatrixMarket : GraphFormat::EdgeList);
}

std::vector<Index> component_labels(const Graph& g) {
  const Index n = g.num_nodes();
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  Index next = 0;
  std::vector<Index> stack;
  for (Index s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (Index v : g.neighbors(u)) {
        if (label[v] < 0) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

Index count_components(const Graph& g) {
  const auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

ComponentResult largest_component(const Graph& g) {
  const Index n = g.num_nodes();
  ComponentResult result;
  if (n == 0) {
    result.graph = g;
    return result;
  }
  const auto labels = component_labels(g);
  const Index k = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
  for (Index l : labels) ++sizes[l];
  // Labels are assigned in order of smallest member, so the first maximum wins ties.
  const Index best = std::max_element(sizes.begin(), sizes.end()) - sizes.begin();

  result.old_to_new.assign(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    if (labels[i] == best) {
      result.old_to_new[i] = static_cast<Index>(result.new_to_old.size());
      result.new_to_old.push_back(i);
    }
  }
  if (k == 1) {
    result.graph = g;
    return result;
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (labels[u] == best) edges.emplace_back(result.old_to_new[u], result.old_to_new[v]);
  }
  result.graph = Graph::from_edges(static_cast<Index>(result.new_to_old.size()), edges);
  return result;
}

std::vector<Distance> bfs_distances(const Graph& g, Index source) {
  if (source < 0 || source >= g.num_nodes()) {
    throw Error(ErrorCode::IndexOutOfRange, "bfs source " + std::to_string(source));
  }
  std::vector<Distance> dist(static_cast<std::size_t>(g.num_nodes()), kUnreachable);
  std::queue<Index> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop();
    for (Index v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

Graph random_tree(Index n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "random_tree needs n >= 1");
  if (n == 1) return Graph::from_edges(1, {});
  if (n == 2) {
    const Edge e{0, 1};
    return Graph::from_edges(2, std::span<const Edge>(&e, 1));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::vector<Index> prufer(static_cast<std::size_t>(n - 2));
  for (auto& x : prufer) x = pick(rng);

  std::vector<Index> remaining(static_cast<std::size_t>(n), 1);
  for (Index x : prufer) ++remaining[x];
  std::priority_queue<Index, std::vector<Index>, std::greater<>> leaves;
  for (Index i = 0; i < n; ++i) {
    if (remaining[i] == 1) leaves.push(i);
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (Index x : prufer) {
    const Index leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, x);
    if (--remaining[x] == 1) leaves.push(x);
  }
  const Index u = leaves.top();
  leaves.pop();
  const Index v = leaves.top();
  edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

}  // namespace walklap
