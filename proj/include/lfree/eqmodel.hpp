#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfree/numeric.hpp"

namespace lfree::eqmodel {

// A fixed linear equation c_1 x_1 + ... + c_l x_l = K with all c_i nonzero.
struct LinearEquation {
    std::vector<Int> coefficients;
    Int constant{0};

    std::size_t arity() const { return coefficients.size(); }
    bool homogeneous() const { return constant == 0; }
};

struct EquationProfile {
    bool homogeneous = false;
    bool translation_invariant = false;
    bool all_same_sign = false;
    Int coefficient_sum{0};
    Int gcd{1};
    // {K/C} when C != 0 and C | K, otherwise absent.
    std::optional<Int> forbidden_singleton;
};

// a_1 x_1 + a_2 x_2 + b_1 y_1 + ... + b_{l-3} y_{l-3} = b_0 y_0.
// perm[i] is the original (0-based) position of standard position i; the
// left-hand coefficients occupy standard positions 0..l-2 and the right-hand
// one position l-1. When `flipped` is set, the whole original equation was
// negated first.
struct StandardForm {
    Int a1, a2;
    std::vector<Int> b;  // b_1 .. b_{l-3}
    Int b0;
    std::vector<std::size_t> perm;
    bool flipped = false;

    std::size_t arity() const { return b.size() + 3; }
    // Left-hand coefficient at position i in (a1, a2, b1, ..., b_{l-3}).
    Int lhs(std::size_t i) const {
        if (i == 0) return a1;
        if (i == 1) return a2;
        return b[i - 2];
    }
};

struct SubEquation {
    std::vector<std::size_t> kept_positions;  // 0-based, sorted
    LinearEquation equation;
};

LinearEquation parse_equation(const std::string& text);
EquationProfile classify(const LinearEquation& eq);
StandardForm standardize(const LinearEquation& eq);
bool is_trivial(const LinearEquation& eq, const std::vector<Int>& tuple);
std::vector<SubEquation> sub_equations(const LinearEquation& eq);

// The equation a permutation of whose solutions are exactly the solutions of
// the standard form: coefficient i is the l-th standard coefficient, with the
// right-hand side moved left (coefficient -b0 at the last position).
std::vector<Int> standard_coefficient_vector(const StandardForm& sf);

}  // namespace lfree::eqmodel
