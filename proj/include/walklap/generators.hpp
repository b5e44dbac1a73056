#pragma once

#include "walklap/graph.hpp"

#include <cstdint>
#include <string>

namespace walklap::gen {

Graph path(Index n);
Graph cycle(Index n);
Graph complete(Index n);
/// Star with one hub (node 0) and `leaves` leaves.
Graph star(Index leaves);
/// rows x cols lattice, node (r, c) -> r * cols + c.
Graph grid(Index rows, Index cols);
/// Trap graph G_{l,m}: path 0..l-1 plus m leaves hanging off the middle node
/// (index (l-1)/2). G_{5,8} has 13 nodes.
Graph trap(Index l, Index m);
/// Zachary's karate club, 34 nodes and 78 edges.
Graph karate();
Graph erdos_renyi(Index n, double p, std::uint64_t seed);
/// Random tree plus `extra` random chords; always connected.
Graph random_connected(Index n, Index extra, std::uint64_t seed);

/// Parses "karate", "path:N", "cycle:N", "complete:N", "star:N", "grid:RxC",
/// "trap:L:M", "tree:N[:SEED]", "er:N:P[:SEED]".
Graph from_spec(const std::string& spec);

}  // namespace walklap::gen
