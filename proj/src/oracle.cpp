#include "lfree/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace lfree::oracle {

namespace {

std::vector<Int> sorted_unique(std::vector<Int> a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

// Enumerates solutions in lexicographic tuple order by fixing the first l-1
// coordinates and solving the equation for the last one. The callback returns
// false to stop early.
void enumerate_solutions(const eqmodel::LinearEquation& eq,
                         const std::vector<Int>& a, const Budget& budget,
                         const std::function<bool(const std::vector<Int>&)>& cb) {
    const std::size_t l = eq.arity();
    if (a.empty()) return;
    unsigned long long probes = 1;
    for (std::size_t i = 0; i + 1 < l; ++i) {
        if (probes > budget.probes / a.size())
            throw BudgetError("solution enumeration budget exceeded");
        probes *= a.size();
    }

    const Int& cl = eq.coefficients[l - 1];
    std::vector<std::size_t> idx(l - 1, 0);
    std::vector<Int> tuple(l);
    std::vector<Int> partial(l);  // partial[i] = K - sum of first i terms
    partial[0] = eq.constant;

    std::size_t depth = 0;
    while (true) {
        if (depth + 1 == l) {
            Int rest = partial[depth];
            if (rest % cl == 0) {
                Int z = rest / cl;
                if (std::binary_search(a.begin(), a.end(), z)) {
                    tuple[l - 1] = z;
                    if (!cb(tuple)) return;
                }
            }
            // backtrack
            while (depth > 0) {
                --depth;
                if (++idx[depth] < a.size()) break;
            }
            if (depth == 0 && idx[0] >= a.size()) return;
        }
        tuple[depth] = a[idx[depth]];
        partial[depth + 1] =
            partial[depth] - eq.coefficients[depth] * tuple[depth];
        ++depth;
        if (depth + 1 < l) idx[depth] = 0;
    }
}

// l = 1 needs its own path: there is no prefix to iterate.
void enumerate_solutions_any(const eqmodel::LinearEquation& eq,
                             const std::vector<Int>& a, const Budget& budget,
                             const std::function<bool(const std::vector<Int>&)>& cb) {
    if (eq.arity() == 1) {
        const Int& c = eq.coefficients[0];
        if (eq.constant % c == 0) {
            Int z = eq.constant / c;
            if (std::binary_search(a.begin(), a.end(), z)) cb({z});
        }
        return;
    }
    enumerate_solutions(eq, a, budget, cb);
}

std::vector<Int> support_of(const std::vector<Int>& tuple) {
    return sorted_unique(tuple);
}

bool has_nontrivial_solution(const eqmodel::LinearEquation& eq,
                             const std::vector<Int>& a, const Budget& budget) {
    bool found = false;
    enumerate_solutions_any(eq, a, budget, [&](const std::vector<Int>& t) {
        if (!eqmodel::is_trivial(eq, t)) {
            found = true;
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace

std::vector<SolutionRecord> enumerate_nontrivial_solutions(
    const eqmodel::LinearEquation& eq, const std::vector<Int>& a,
    const Budget& budget) {
    auto ground = sorted_unique(a);
    std::vector<SolutionRecord> out;
    enumerate_solutions_any(eq, ground, budget, [&](const std::vector<Int>& t) {
        if (!eqmodel::is_trivial(eq, t))
            out.push_back({t, support_of(t), false});
        return true;
    });
    return out;
}

bool is_free(const eqmodel::LinearEquation& eq, const std::vector<Int>& a,
             const Budget& budget) {
    return !has_nontrivial_solution(eq, sorted_unique(a), budget);
}

bool is_proper_subequation_free(const eqmodel::LinearEquation& eq,
                                const std::vector<Int>& a,
                                const Budget& budget) {
    if (!eq.homogeneous())
        throw PreconditionError(
            "sub-equation freeness is defined for homogeneous equations");
    auto ground = sorted_unique(a);
    // distinct coefficient multisets only; permuted sub-equations have the
    // same solutions
    std::vector<std::vector<Int>> seen;
    for (const auto& se : eqmodel::sub_equations(eq)) {
        auto key = se.equation.coefficients;
        std::sort(key.begin(), key.end());
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        if (has_nontrivial_solution(se.equation, ground, budget)) return false;
    }
    return true;
}

bool is_subequation_free(const eqmodel::LinearEquation& eq,
                         const std::vector<Int>& a, const Budget& budget) {
    return is_free(eq, a, budget) && is_proper_subequation_free(eq, a, budget);
}

ConflictHypergraph build_conflict_hypergraph(const eqmodel::LinearEquation& eq,
                                             const std::vector<Int>& a,
                                             const Budget& budget) {
    ConflictHypergraph h;
    h.ground = sorted_unique(a);
    if (h.ground.size() > 63)
        throw BudgetError("ground set too large for hypergraph masks");
    std::vector<std::uint64_t> edges;
    enumerate_solutions_any(eq, h.ground, budget, [&](const std::vector<Int>& t) {
        if (eqmodel::is_trivial(eq, t)) return true;
        std::uint64_t mask = 0;
        for (const auto& v : t) {
            auto it = std::lower_bound(h.ground.begin(), h.ground.end(), v);
            mask |= std::uint64_t(1) << (it - h.ground.begin());
        }
        edges.push_back(mask);
        return true;
    });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    // antichain: drop any edge containing another
    for (std::uint64_t e : edges) {
        bool minimal = true;
        for (std::uint64_t f : edges)
            if (f != e && (f & e) == f) {
                minimal = false;
                break;
            }
        if (minimal) h.hyperedges.push_back(e);
    }
    return h;
}

bool subset_is_free(const ConflictHypergraph& h, std::uint64_t subset_mask) {
    for (std::uint64_t e : h.hyperedges)
        if ((e & subset_mask) == e) return false;
    return true;
}

namespace {

void max_free_search(const std::vector<std::vector<std::uint64_t>>& by_elem,
                     std::size_t n, std::size_t idx, std::uint64_t chosen,
                     std::size_t count, std::size_t& best,
                     std::uint64_t& best_set) {
    if (count + (n - idx) <= best) return;
    if (idx == n) {
        best = count;
        best_set = chosen;
        return;
    }
    std::uint64_t with = chosen | (std::uint64_t(1) << idx);
    bool ok = true;
    for (std::uint64_t e : by_elem[idx])
        if ((e & with) == e) {
            ok = false;
            break;
        }
    if (ok) max_free_search(by_elem, n, idx + 1, with, count + 1, best, best_set);
    max_free_search(by_elem, n, idx + 1, chosen, count, best, best_set);
}

Int count_rec(std::uint64_t undecided, std::vector<std::uint64_t> edges);

Int count_component(std::uint64_t undecided,
                    const std::vector<std::uint64_t>& edges) {
    // branch on the element covered by the most constraints
    std::map<std::size_t, std::size_t> degree;
    for (std::uint64_t e : edges)
        for (std::uint64_t b = e; b;) {
            degree[std::size_t(__builtin_ctzll(b))]++;
            b &= b - 1;
        }
    std::size_t pick = degree.begin()->first;
    for (const auto& [v, d] : degree)
        if (d > degree[pick]) pick = v;
    const std::uint64_t bit = std::uint64_t(1) << pick;

    std::vector<std::uint64_t> excl, incl;
    for (std::uint64_t e : edges) {
        if (e & bit)
            incl.push_back(e & ~bit);
        else {
            excl.push_back(e);
            incl.push_back(e);
        }
    }
    Int out = count_rec(undecided & ~bit, std::move(excl));
    if (std::find(incl.begin(), incl.end(), 0) == incl.end())
        out += count_rec(undecided & ~bit, std::move(incl));
    return out;
}

Int count_rec(std::uint64_t undecided, std::vector<std::uint64_t> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::uint64_t covered = 0;
    for (std::uint64_t e : edges) covered |= e;
    const int free_elems = __builtin_popcountll(undecided & ~covered);
    undecided &= covered;
    Int factor = ipow(2, unsigned(free_elems));
    if (edges.empty()) return factor;

    // split into connected components (elements linked by shared hyperedges)
    std::vector<std::uint64_t> comps;
    std::uint64_t left = undecided;
    while (left) {
        std::uint64_t comp = left & (~left + 1);
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::uint64_t e : edges)
                if ((e & comp) && (e & ~comp)) {
                    comp |= e;
                    grew = true;
                }
        }
        comps.push_back(comp);
        left &= ~comp;
    }
    if (comps.size() > 1) {
        Int prod = factor;
        for (std::uint64_t comp : comps) {
            std::vector<std::uint64_t> sub;
            for (std::uint64_t e : edges)
                if (e & comp) sub.push_back(e);
            prod *= count_component(comp, sub);
        }
        return prod;
    }
    return factor * count_component(undecided, edges);
}

}  // namespace

std::pair<std::size_t, std::vector<Int>> max_free_subset(
    const eqmodel::LinearEquation& eq, const std::vector<Int>& a,
    const Budget& budget) {
    auto h = build_conflict_hypergraph(eq, a, budget);
    const std::size_t n = h.ground.size();
    std::vector<std::vector<std::uint64_t>> by_elem(n);
    for (std::uint64_t e : h.hyperedges)
        for (std::uint64_t b = e; b;) {
            by_elem[std::size_t(__builtin_ctzll(b))].push_back(e);
            b &= b - 1;
        }
    std::size_t best = 0;
    std::uint64_t best_set = 0;
    max_free_search(by_elem, n, 0, 0, 0, best, best_set);
    std::vector<Int> witness;
    for (std::size_t i = 0; i < n; ++i)
        if (best_set >> i & 1) witness.push_back(h.ground[i]);
    return {best, witness};
}

Int count_independent(const ConflictHypergraph& h) {
    const std::uint64_t all =
        h.ground.empty() ? 0
                         : (h.ground.size() == 64
                                ? ~std::uint64_t(0)
                                : (std::uint64_t(1) << h.ground.size()) - 1);
    for (std::uint64_t e : h.hyperedges)
        if (e == 0) return 0;
    return count_rec(all, h.hyperedges);
}

Int count_free_subsets(const eqmodel::LinearEquation& eq,
                       const std::vector<Int>& a, const Budget& budget) {
    return count_independent(build_conflict_hypergraph(eq, a, budget));
}

std::vector<Int> count_free_by_groups(const eqmodel::LinearEquation& eq,
                                      const std::vector<Int>& a,
                                      const std::vector<std::vector<Int>>& groups,
                                      const Budget& budget) {
    auto h = build_conflict_hypergraph(eq, a, budget);
    const std::size_t n = h.ground.size();
    if (n > 25 || (unsigned long long)(1ull << n) > budget.probes)
        throw BudgetError("layered count requires full enumeration; set too large");
    std::vector<std::uint64_t> group_masks;
    for (const auto& g : groups) {
        std::uint64_t mask = 0;
        for (const auto& v : g) {
            auto it = std::lower_bound(h.ground.begin(), h.ground.end(), v);
            if (it == h.ground.end() || *it != v)
                throw PreconditionError("group element not in ground set");
            mask |= std::uint64_t(1) << (it - h.ground.begin());
        }
        group_masks.push_back(mask);
    }
    std::vector<Int> z(groups.size() + 1, 0);
    const std::uint64_t limit = n == 0 ? 1 : (std::uint64_t(1) << n);
    for (std::uint64_t s = 0; s < limit; ++s) {
        if (!subset_is_free(h, s)) continue;
        std::size_t full = 0;
        for (std::uint64_t g : group_masks)
            if ((g & s) == g) ++full;
        z[groups.size() - full] += 1;
    }
    return z;
}

std::vector<Int> count_free_by_layer(const eqmodel::LinearEquation& eq,
                                     const std::vector<Int>& a,
                                     const std::vector<Int>& layer,
                                     const Budget& budget) {
    std::vector<std::vector<Int>> groups;
    for (const auto& v : sorted_unique(layer)) groups.push_back({v});
    return count_free_by_groups(eq, a, groups, budget);
}

}  // namespace lfree::oracle
