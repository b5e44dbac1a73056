#include "walklap/generators.hpp"

#include <random>
#include <sstream>
#include <vector>

namespace walklap::gen {

namespace {

void require_nodes(Index n, Index min, const char* what) {
  if (n < min) {
    throw Error(ErrorCode::InvalidParameter,
                std::string(what) + " needs at least " + std::to_string(min) + " nodes");
  }
}

}  // namespace

Graph path(Index n) {
  require_nodes(n, 1, "path");
  std::vector<Edge> e;
  for (Index i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph cycle(Index n) {
  require_nodes(n, 3, "cycle");
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph complete(Index n) {
  require_nodes(n, 1, "complete");
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph star(Index leaves) {
  require_nodes(leaves, 1, "star");
  std::vector<Edge> e;
  for (Index i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

Graph grid(Index rows, Index cols) {
  require_nodes(rows, 1, "grid");
  require_nodes(cols, 1, "grid");
  std::vector<Edge> e;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const Index u = r * cols + c;
      if (c + 1 < cols) e.emplace_back(u, u + 1);
      if (r + 1 < rows) e.emplace_back(u, u + cols);
    }
  }
  return Graph::from_edges(rows * cols, e);
}

Graph trap(Index l, Index m) {
  require_nodes(l, 1, "trap");
  if (m < 0) throw Error(ErrorCode::InvalidParameter, "trap needs m >= 0");
  std::vector<Edge> e;
  for (Index i = 0; i + 1 < l; ++i) e.emplace_back(i, i + 1);
  const Index hub = (l - 1) / 2;
  for (Index j = 0; j < m; ++j) e.emplace_back(hub, l + j);
  return Graph::from_edges(l + m, e);
}

Graph karate() {
  static const std::vector<Edge> kEdges = {
      {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},   {0, 8},
      {0, 10},  {0, 11},  {0, 12},  {0, 13},  {0, 17},  {0, 19},  {0, 21},  {0, 31},
      {1, 2},   {1, 3},   {1, 7},   {1, 13},  {1, 17},  {1, 19},  {1, 21},  {1, 30},
      {2, 3},   {2, 7},   {2, 8},   {2, 9},   {2, 13},  {2, 27},  {2, 28},  {2, 32},
      {3, 7},   {3, 12},  {3, 13},  {4, 6},   {4, 10},  {5, 6},   {5, 10},  {5, 16},
      {6, 16},  {8, 30},  {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33},
      {15, 32}, {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32}, {20, 33}, {22, 32},
      {22, 33}, {23, 25}, {23, 27}, {23, 29}, {23, 32}, {23, 33}, {24, 25}, {24, 27},
      {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31}, {28, 33}, {29, 32},
      {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33}, {32, 33}};
  return Graph::from_edges(34, kEdges);
}

Graph erdos_renyi(Index n, double p, std::uint64_t seed) {
  require_nodes(n, 1, "erdos_renyi");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParameter, "edge probability outside [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph random_connected(Index n, Index extra, std::uint64_t seed) {
  const Graph tree = random_tree(n, seed);
  std::vector<Edge> e = tree.edges();
  if (n > 2) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (Index k = 0; k < extra; ++k) e.emplace_back(pick(rng), pick(rng));
  }
  return Graph::from_edges(n, e);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Index to_index(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorCode::InvalidParameter, "bad integer '" + s + "'");
  return static_cast<Index>(v);
}

}  // namespace

Graph from_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw Error(ErrorCode::InvalidParameter, "empty generator spec");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) -> const std::string& {
    if (i >= parts.size()) throw Error(ErrorCode::InvalidParameter, "generator '" + spec + "' is missing arguments");
    return parts[i];
  };
  if (kind == "karate") return karate();
  if (kind == "path") return path(to_index(arg(1)));
  if (kind == "cycle") return cycle(to_index(arg(1)));
  if (kind == "complete") return complete(to_index(arg(1)));
  if (kind == "star") return star(to_index(arg(1)));
  if (kind == "trap" || kind == "g") return trap(to_index(arg(1)), to_index(arg(2)));
  if (kind == "grid") {
    const auto dims = split(arg(1), 'x');
    if (dims.size() != 2) throw Error(ErrorCode::InvalidParameter, "grid expects RxC");
    return grid(to_index(dims[0]), to_index(dims[1]));
  }
  if (kind == "tree") {
    const auto seed = parts.size() > 2 ? static_cast<std::uint64_t>(to_index(parts[2])) : 0;
    return random_tree(to_index(arg(1)), seed);
  }
  if (kind == "er") {
    const auto seed = parts.size() > 3 ? static_cast<std::uint64_t>(to_index(parts[3])) : 0;
    return erdos_renyi(to_index(arg(1)), std::stod(arg(2)), seed);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown generator '" + kind + "'");
}

}  // namespace walklap::gen
