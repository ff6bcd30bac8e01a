#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfree/numeric.hpp"

namespace lfree::graphs {

// Simple undirected graph. The vertex order is part of the data: the gadget
// constructions orient each edge by it.
struct Graph {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // v < w, sorted
    std::vector<std::size_t> vertex_order;  // position of each vertex

    bool before(std::size_t v, std::size_t w) const {
        return vertex_order[v] < vertex_order[w];
    }
    bool adjacent(std::size_t v, std::size_t w) const;
    std::size_t m() const { return edges.size(); }
};

struct VertexPartition {
    std::vector<std::vector<std::size_t>> parts;
};

Graph make_graph(std::size_t n,
                 std::vector<std::pair<std::size_t, std::size_t>> edges,
                 std::optional<std::vector<std::size_t>> order = std::nullopt);

std::pair<std::size_t, std::vector<std::size_t>> max_independent_set(const Graph& g);
Int count_independent_sets(const Graph& g);

// Exhaustive proper colouring into `parts` independent sets; throws
// PreconditionError if none exists.
VertexPartition find_partition(const Graph& g, std::size_t parts);
bool validate_partition(const Graph& g, const VertexPartition& p);

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);
Graph random_graph(std::size_t n, double p, std::uint64_t seed);

// JSON {n, edges:[[v,w],...], order:[...]?} or DIMACS ("p edge n m" / "e v w").
Graph parse_graph(const std::string& text);
std::string to_json(const Graph& g);

}  // namespace lfree::graphs
