#pragma once

#include <vector>

#include "lfree/eqmodel.hpp"

namespace lfree::oracle {

struct SolutionRecord {
    std::vector<Int> tuple;
    std::vector<Int> support;  // distinct values, sorted
    bool trivial = false;
};

// L-free subsets of the ground set are exactly the independent sets of this
// hypergraph: each hyperedge is a minimal value-support of a non-trivial
// solution.
struct ConflictHypergraph {
    std::vector<Int> ground;                 // sorted
    std::vector<std::uint64_t> hyperedges;   // bitmasks over ground, antichain
};

struct Budget {
    // tuple-probe limit for enumeration; subset limit for counting fallbacks
    unsigned long long probes = 100'000'000ull;
};

std::vector<SolutionRecord> enumerate_nontrivial_solutions(
    const eqmodel::LinearEquation& eq, const std::vector<Int>& a,
    const Budget& budget = {});

bool is_free(const eqmodel::LinearEquation& eq, const std::vector<Int>& a,
             const Budget& budget = {});
bool is_proper_subequation_free(const eqmodel::LinearEquation& eq,
                                const std::vector<Int>& a,
                                const Budget& budget = {});
bool is_subequation_free(const eqmodel::LinearEquation& eq,
                         const std::vector<Int>& a, const Budget& budget = {});

ConflictHypergraph build_conflict_hypergraph(const eqmodel::LinearEquation& eq,
                                             const std::vector<Int>& a,
                                             const Budget& budget = {});

std::pair<std::size_t, std::vector<Int>> max_free_subset(
    const eqmodel::LinearEquation& eq, const std::vector<Int>& a,
    const Budget& budget = {});

// Includes the empty set.
Int count_free_subsets(const eqmodel::LinearEquation& eq,
                       const std::vector<Int>& a, const Budget& budget = {});

// z_t = number of L-free subsets S of A with |S ∩ layer| = |layer| - t.
std::vector<Int> count_free_by_layer(const eqmodel::LinearEquation& eq,
                                     const std::vector<Int>& a,
                                     const std::vector<Int>& layer,
                                     const Budget& budget = {});

// z_t = number of L-free subsets with exactly |groups| - t groups fully
// contained; the grouped analogue the inhomogeneous counting pipeline needs.
std::vector<Int> count_free_by_groups(const eqmodel::LinearEquation& eq,
                                      const std::vector<Int>& a,
                                      const std::vector<std::vector<Int>>& groups,
                                      const Budget& budget = {});

// Counting on an explicit hypergraph (recursive, with component splitting).
Int count_independent(const ConflictHypergraph& h);

bool subset_is_free(const ConflictHypergraph& h, std::uint64_t subset_mask);

}  // namespace lfree::oracle
