#pragma once

#include "mpg/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace mpg {

struct Edge {
    int src = 0;
    int dst = 0;
    std::vector<Rat> w;  // one entry per weight dimension
};

/// Directed graph with per-vertex player ownership and k-dimensional exact
/// rational edge weights. Immutable after construction; every operation on it
/// is a pure function, so shared concurrent use is safe.
///
/// Hosts both the scalar mean-payoff games (dims = 1, owners {1,2}) and the
/// k-player game graphs built from alternating-move games.
class MultiWeightedGraph {
public:
    MultiWeightedGraph(int dims, std::vector<int> owners, std::vector<Edge> edges,
                       int initial_vertex);

    int dims() const { return dims_; }
    int vertex_count() const { return static_cast<int>(owner_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int initial_vertex() const { return initial_; }
    int owner(int v) const { return owner_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    /// Edge ids leaving v, in insertion order.
    const std::vector<int>& out_edges(int v) const { return out_[v]; }

    /// Largest absolute weight over all edges and dimensions (0 for an
    /// edgeless graph).
    Rat weight_bound() const;

    /// Every invariant violation, empty when the graph is well formed.
    std::vector<std::string> validate() const;

    /// Throws std::invalid_argument listing the violations, if any.
    void require_valid() const;

private:
    int dims_;
    int initial_;
    std::vector<int> owner_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_;
};

/// Finite play: edges_[0] leaves `start`, consecutive edges are adjacent.
struct PlayPrefix {
    int start = 0;
    std::vector<int> edges;
};

/// Exact per-dimension mean of the prefix's edge weights.
/// Throws std::invalid_argument on an empty or non-contiguous prefix.
std::vector<Rat> prefix_average(const MultiWeightedGraph& g, const PlayPrefix& prefix);

/// Strongly connected components plus reachability from the initial vertex.
/// Components are numbered by their smallest vertex id, ascending, so the
/// decomposition is independent of traversal order.
struct SccInfo {
    std::vector<std::vector<int>> components;  // each sorted ascending
    std::vector<int> component_of;             // vertex id -> component index
    std::vector<bool> reachable;               // from g.initial_vertex()
    std::vector<bool> transient;               // component has no internal edge
};

SccInfo scc_decompose(const MultiWeightedGraph& g);

/// Vertices reachable from `from` along directed edges (including `from`).
std::vector<bool> reachable_set(const MultiWeightedGraph& g, int from);

/// Shortest path (fewest edges) between two vertices as a list of edge ids;
/// ties broken toward the smallest next vertex id. Empty when from == to.
/// Throws std::invalid_argument if no path exists.
std::vector<int> shortest_path(const MultiWeightedGraph& g, int from, int to);

/// Flags of a scalar max/min game. Each flag, when set, is a checkable
/// promise about the underlying graph; validate() reports mismatches.
struct MpgFlags {
    bool bipartite = false;
    bool complete_bipartite = false;
    bool undirected = false;  // symmetric edge relation with symmetric weights
    bool normalized = false;  // maximizer out-edges > 0, minimizer out-edges < 0
};

/// Two-player zero-sum mean-payoff game: dims = 1, owner 1 = maximizer,
/// owner 2 = minimizer.
class MeanPayoffGame {
public:
    MeanPayoffGame(MultiWeightedGraph graph, MpgFlags flags = {});

    const MultiWeightedGraph& graph() const { return graph_; }
    const MpgFlags& flags() const { return flags_; }
    const Rat& weight(int e) const { return graph_.edge(e).w[0]; }

    std::vector<std::string> validate() const;
    void require_valid() const;

private:
    MultiWeightedGraph graph_;
    MpgFlags flags_;
};

}  // namespace mpg
