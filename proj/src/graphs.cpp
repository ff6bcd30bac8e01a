#include "lfree/graphs.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <json.hpp>

namespace lfree::graphs {

bool Graph::adjacent(std::size_t v, std::size_t w) const {
    if (v > w) std::swap(v, w);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(v, w));
}

Graph make_graph(std::size_t n,
                 std::vector<std::pair<std::size_t, std::size_t>> edges,
                 std::optional<std::vector<std::size_t>> order) {
    Graph g;
    g.n = n;
    for (auto& [v, w] : edges) {
        if (v == w) throw PreconditionError("self-loop in graph");
        if (v >= n || w >= n) throw PreconditionError("edge endpoint out of range");
        if (v > w) std::swap(v, w);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw PreconditionError("duplicate edge in graph");
    g.edges = std::move(edges);
    if (order) {
        if (order->size() != n)
            throw PreconditionError("vertex order length mismatch");
        std::vector<std::size_t> pos(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if ((*order)[i] >= n || pos[(*order)[i]] != n)
                throw PreconditionError("vertex order is not a permutation");
            pos[(*order)[i]] = i;
        }
        g.vertex_order = pos;
    } else {
        g.vertex_order.resize(n);
        for (std::size_t i = 0; i < n; ++i) g.vertex_order[i] = i;
    }
    return g;
}

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
    if (g.n > 62) throw BudgetError("graph too large for exact search");
    std::vector<Mask> adj(g.n, 0);
    for (auto [v, w] : g.edges) {
        adj[v] |= Mask(1) << w;
        adj[w] |= Mask(1) << v;
    }
    return adj;
}

// Classic branch and bound: branch on a highest-degree remaining vertex.
void mis_search(const std::vector<Mask>& adj, Mask remaining, Mask chosen,
                std::size_t& best, Mask& best_set) {
    std::size_t cnt = std::size_t(__builtin_popcountll(chosen));
    std::size_t rem = std::size_t(__builtin_popcountll(remaining));
    if (cnt + rem <= best) return;
    if (remaining == 0) {
        if (cnt > best) {
            best = cnt;
            best_set = chosen;
        }
        return;
    }
    std::size_t pick = 64, pick_deg = 0;
    for (Mask r = remaining; r;) {
        std::size_t v = std::size_t(__builtin_ctzll(r));
        r &= r - 1;
        std::size_t d = std::size_t(__builtin_popcountll(adj[v] & remaining));
        if (pick == 64 || d > pick_deg) {
            pick = v;
            pick_deg = d;
        }
    }
    // include pick
    mis_search(adj, remaining & ~(adj[pick] | (Mask(1) << pick)),
               chosen | (Mask(1) << pick), best, best_set);
    // exclude pick
    mis_search(adj, remaining & ~(Mask(1) << pick), chosen, best, best_set);
}

Int count_is(const std::vector<Mask>& adj, Mask remaining) {
    if (remaining == 0) return 1;
    std::size_t v = std::size_t(__builtin_ctzll(remaining));
    Mask d = adj[v] & remaining;
    if (d == 0) {
        // isolated within the remainder: factor of 2
        return 2 * count_is(adj, remaining & ~(Mask(1) << v));
    }
    return count_is(adj, remaining & ~(Mask(1) << v)) +
           count_is(adj, remaining & ~(adj[v] | (Mask(1) << v)));
}

bool colour(const Graph& g, const std::vector<Mask>& adj, std::size_t parts,
            std::vector<std::size_t>& colours, std::size_t v) {
    if (v == g.n) return true;
    for (std::size_t c = 0; c < parts; ++c) {
        bool ok = true;
        for (std::size_t w = 0; w < v && ok; ++w)
            if ((adj[v] >> w & 1) && colours[w] == c) ok = false;
        if (!ok) continue;
        colours[v] = c;
        if (colour(g, adj, parts, colours, v + 1)) return true;
    }
    return false;
}

}  // namespace

std::pair<std::size_t, std::vector<std::size_t>> max_independent_set(const Graph& g) {
    auto adj = adjacency_masks(g);
    std::size_t best = 0;
    Mask best_set = 0;
    mis_search(adj, g.n == 0 ? 0 : (Mask(1) << g.n) - 1, 0, best, best_set);
    std::vector<std::size_t> witness;
    for (std::size_t v = 0; v < g.n; ++v)
        if (best_set >> v & 1) witness.push_back(v);
    return {best, witness};
}

Int count_independent_sets(const Graph& g) {
    auto adj = adjacency_masks(g);
    return count_is(adj, g.n == 0 ? 0 : (Mask(1) << g.n) - 1);
}

VertexPartition find_partition(const Graph& g, std::size_t parts) {
    if (parts != 2 && parts != 3)
        throw PreconditionError("find_partition supports 2 or 3 parts");
    if (g.n > 20) throw BudgetError("graph too large for exhaustive colouring");
    auto adj = adjacency_masks(g);
    std::vector<std::size_t> colours(g.n, 0);
    if (!colour(g, adj, parts, colours, 0))
        throw PreconditionError("graph is not " + std::to_string(parts) + "-partite");
    VertexPartition p;
    p.parts.resize(parts);
    for (std::size_t v = 0; v < g.n; ++v) p.parts[colours[v]].push_back(v);
    return p;
}

bool validate_partition(const Graph& g, const VertexPartition& p) {
    std::vector<std::size_t> seen(g.n, 0);
    for (const auto& part : p.parts) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (part[i] >= g.n) return false;
            ++seen[part[i]];
            for (std::size_t j = i + 1; j < part.size(); ++j)
                if (g.adjacent(part[i], part[j])) return false;
        }
    }
    return std::all_of(seen.begin(), seen.end(),
                       [](std::size_t c) { return c == 1; });
}

Graph path(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(n, std::move(e));
}

Graph cycle(std::size_t n) {
    if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
    auto e = path(n).edges;
    e.emplace_back(0, n - 1);
    return make_graph(n, std::move(e));
}

Graph complete(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return make_graph(n, std::move(e));
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // threshold comparison on raw 64-bit draws keeps this portable
    const auto threshold =
        std::uint64_t(p * double(std::numeric_limits<std::uint64_t>::max()));
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng() <= threshold) e.emplace_back(i, j);
    return make_graph(n, std::move(e));
}

Graph parse_graph(const std::string& text) {
    // DIMACS if a "p edge" line appears before any '{'
    auto first_brace = text.find('{');
    auto p_line = text.find("p edge");
    if (p_line != std::string::npos &&
        (first_brace == std::string::npos || p_line < first_brace)) {
        std::istringstream in(text);
        std::string line;
        std::size_t n = 0;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        bool have_p = false;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string tag;
            if (!(ls >> tag)) continue;
            if (tag == "c") continue;
            if (tag == "p") {
                std::string fmt;
                std::size_t m;
                if (!(ls >> fmt >> n >> m) || fmt != "edge")
                    throw ParseError("bad DIMACS problem line: " + line);
                have_p = true;
            } else if (tag == "e") {
                std::size_t v, w;
                if (!(ls >> v >> w) || v == 0 || w == 0)
                    throw ParseError("bad DIMACS edge line: " + line);
                edges.emplace_back(v - 1, w - 1);
            } else {
                throw ParseError("unknown DIMACS line: " + line);
            }
        }
        if (!have_p) throw ParseError("DIMACS input missing problem line");
        return make_graph(n, std::move(edges));
    }

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad graph JSON: ") + e.what());
    }
    if (!j.contains("n")) throw ParseError("graph JSON missing 'n'");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("graph JSON edge must be a pair");
        edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    std::optional<std::vector<std::size_t>> order;
    if (j.contains("order")) order = j["order"].get<std::vector<std::size_t>>();
    return make_graph(j["n"].get<std::size_t>(), std::move(edges), order);
}

std::string to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.n;
    j["edges"] = nlohmann::json::array();
    for (auto [v, w] : g.edges) j["edges"].push_back({v, w});
    std::vector<std::size_t> order(g.n);
    for (std::size_t v = 0; v < g.n; ++v) order[g.vertex_order[v]] = v;
    j["order"] = order;
    return j.dump();
}

}  // namespace lfree::graphs
