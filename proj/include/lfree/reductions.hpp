#pragma once

#include <string>
#include <vector>

#include "lfree/gadgets.hpp"
#include "lfree/graphs.hpp"
#include "lfree/oracle.hpp"

namespace lfree::reductions {

// (A, |A_E| + k): G has an independent set of size k iff A has a free subset
// of size threshold.
struct DecisionInstance {
    gadgets::GadgetSet set;
    std::size_t threshold = 0;
};

DecisionInstance reduce_decision(const eqmodel::LinearEquation& eq,
                                 const graphs::Graph& g, std::size_t k);

// Exchange endpoints for edge labels, then grow greedily: returns a maximal
// free superset of all edge labels, never smaller than `b`.
std::vector<Int> repair_to_edge_superset(const eqmodel::LinearEquation& eq,
                                         const gadgets::GadgetSet& gadget,
                                         const std::vector<Int>& b,
                                         const oracle::Budget& budget = {});

// Approximation ratio 1 + eps/(6(l-2)+1) of the independent-set transfer.
Rat ptas_alpha(std::size_t l, const Rat& epsilon);

struct EpsilonInstance {
    std::vector<Int> a;
    std::size_t k = 0;
    std::vector<Int> s, s_prime;  // after the optional shift
    Rat epsilon;
    Int shift{0};
    Int r{0}, t{0}, k_star{0}, a_star{0};
    gadgets::ExtendResult extension;
    std::vector<Int> b;
    Int target{0};  // ceil(eps |B|) = k* + t
};

// The copy/padding arithmetic of the epsilon reduction:
// r = max(0, ceil((k - eps a)/((eps - eps')|S|))), k* = k + r|S'|,
// a* = a + r|S|, t = ceil((eps a* - k*)/(1 - eps)).
struct EpsilonParameters {
    Int r, k_star, a_star, t;
};
EpsilonParameters epsilon_parameters(std::size_t a, std::size_t k,
                                     const Rat& epsilon, std::size_t s_size,
                                     std::size_t s_prime_size);

EpsilonInstance reduce_epsilon(const eqmodel::LinearEquation& eq,
                               const std::vector<Int>& a, std::size_t k,
                               const std::vector<Int>& s,
                               const std::vector<Int>& s_prime,
                               const Rat& epsilon,
                               const oracle::Budget& budget = {});

// Recovers z_0..z_m from S = sum z_t p^t, valid whenever p > sum z_t.
std::vector<Int> digit_extract(const Rat& p, std::size_t m, const Rat& s);

std::vector<Rat> vandermonde_solve(const std::vector<Rat>& points,
                                   const std::vector<Rat>& values);

struct CountLedger {
    std::size_t r = 0;
    Rat p{0};
    std::vector<Int> z;
    Int total{0};
    Int recovered{0};
    std::string path;  // "digit" or "vandermonde"
};

CountLedger recover_count_l3(const eqmodel::LinearEquation& eq,
                             const graphs::Graph& g);
CountLedger recover_count_l4(const eqmodel::LinearEquation& eq,
                             const graphs::Graph& g);
CountLedger recover_count_inhom(const eqmodel::LinearEquation& eq,
                                const graphs::Graph& g);

}  // namespace lfree::reductions
