#pragma once

#include "cutplan/graph.hpp"
#include "cutplan/rng.hpp"

namespace cutplan {

/// G(n, p): every pair independently with probability p.
Graph gen_erdos_renyi(NodeId n, double p, RngSeed seed);

/// Barabasi-Albert growth from an (m+1)-clique; each newcomer attaches m
/// edges to distinct existing nodes chosen proportionally to degree.
Graph gen_preferential_attachment(NodeId n, NodeId m, RngSeed seed);

/// Watts-Strogatz: ring lattice with k nearest neighbors (k even), each
/// lattice edge rewired with probability beta. Edge count stays n*k/2.
Graph gen_small_world(NodeId n, NodeId k, double beta, RngSeed seed);

/// Random geometric graph in the unit square; edge iff distance <= radius.
Graph gen_geometric(NodeId n, double radius, RngSeed seed);

/// rows x cols 4-neighborhood lattice; node id = row * cols + col.
Graph gen_grid(NodeId rows, NodeId cols);

}  // namespace cutplan
