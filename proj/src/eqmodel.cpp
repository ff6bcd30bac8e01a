#include "lfree/eqmodel.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace lfree::eqmodel {

namespace {

void check_equation(const LinearEquation& eq) {
    if (eq.coefficients.empty())
        throw ParseError("equation has no coefficients");
    for (const auto& c : eq.coefficients)
        if (c == 0) throw ParseError("zero coefficient in equation");
}

// "2x1 - 3x2 + x3 = 5" -> coefficients (2,-3,1), K=5.
LinearEquation parse_symbolic(const std::string& lhs, const Int& k) {
    LinearEquation eq;
    eq.constant = k;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < lhs.size() && std::isspace((unsigned char)lhs[i])) ++i;
    };
    while (true) {
        skip_ws();
        if (i == lhs.size()) break;
        int sign = 1;
        if (lhs[i] == '+' || lhs[i] == '-') {
            if (lhs[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!eq.coefficients.empty()) {
            throw ParseError("expected '+' or '-' in equation: " + lhs);
        }
        std::string digits;
        while (i < lhs.size() && std::isdigit((unsigned char)lhs[i]))
            digits += lhs[i++];
        Int coeff = digits.empty() ? Int(1) : Int(digits);
        skip_ws();
        if (i >= lhs.size() || (lhs[i] != 'x' && lhs[i] != 'y'))
            throw ParseError("expected variable in equation: " + lhs);
        ++i;
        std::string idx;
        while (i < lhs.size() && std::isdigit((unsigned char)lhs[i]))
            idx += lhs[i++];
        std::size_t pos = idx.empty() ? eq.coefficients.size() + 1
                                      : std::stoul(idx);
        if (pos != eq.coefficients.size() + 1)
            throw ParseError("variables must appear in order x1, x2, ...");
        eq.coefficients.push_back(sign * coeff);
    }
    return eq;
}

}  // namespace

LinearEquation parse_equation(const std::string& text) {
    auto eq_pos = text.find('=');
    if (eq_pos == std::string::npos)
        throw ParseError("missing '=' in equation: " + text);
    std::string lhs = text.substr(0, eq_pos);
    std::string rhs = text.substr(eq_pos + 1);
    Int k;
    try {
        std::string trimmed;
        for (char c : rhs)
            if (!std::isspace((unsigned char)c)) trimmed += c;
        k = Int(trimmed);
    } catch (const std::exception&) {
        throw ParseError("bad right-hand side: " + rhs);
    }

    bool symbolic = lhs.find('x') != std::string::npos ||
                    lhs.find('y') != std::string::npos;
    LinearEquation eq;
    if (symbolic) {
        eq = parse_symbolic(lhs, k);
    } else {
        eq.constant = k;
        std::string item;
        std::istringstream in(lhs);
        while (std::getline(in, item, ',')) {
            std::string trimmed;
            for (char c : item)
                if (!std::isspace((unsigned char)c)) trimmed += c;
            if (trimmed.empty())
                throw ParseError("empty coefficient in: " + lhs);
            try {
                eq.coefficients.push_back(Int(trimmed));
            } catch (const std::exception&) {
                throw ParseError("bad coefficient: " + item);
            }
        }
    }
    check_equation(eq);
    return eq;
}

EquationProfile classify(const LinearEquation& eq) {
    EquationProfile p;
    p.homogeneous = eq.constant == 0;
    Int sum = 0, g = 0;
    bool any_pos = false, any_neg = false;
    for (const auto& c : eq.coefficients) {
        sum += c;
        g = boost::multiprecision::gcd(g, c);
        (c > 0 ? any_pos : any_neg) = true;
    }
    p.coefficient_sum = sum;
    p.translation_invariant = sum == 0;
    p.all_same_sign = !(any_pos && any_neg);
    p.gcd = g;
    if (sum != 0 && eq.constant % sum == 0)
        p.forbidden_singleton = eq.constant / sum;
    return p;
}

StandardForm standardize(const LinearEquation& eq) {
    if (!eq.homogeneous())
        throw PreconditionError("standardize requires a homogeneous equation");
    const std::size_t l = eq.arity();
    if (l < 3) throw PreconditionError("standardize requires at least 3 terms");

    std::size_t n_pos = 0, n_neg = 0;
    Int sum_pos = 0, sum_neg = 0;
    for (const auto& c : eq.coefficients) {
        if (c > 0) {
            ++n_pos;
            sum_pos += c;
        } else {
            ++n_neg;
            sum_neg += c;
        }
    }

    bool flip = false;
    if (n_pos == 0) {
        flip = true;  // all negative: make all positive
    } else if (n_neg == 0) {
        flip = false;  // all positive
    } else if (n_pos == 1 || n_neg == 1) {
        flip = n_neg != 1;  // arrange exactly one negative coefficient
    } else {
        flip = -sum_neg > sum_pos;
    }

    std::vector<std::size_t> order(l);
    std::iota(order.begin(), order.end(), 0);
    auto coeff_at = [&](std::size_t i) {
        return flip ? Int(-eq.coefficients[i]) : eq.coefficients[i];
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Int cx = coeff_at(x), cy = coeff_at(y);
        if (cx != cy) return cx < cy;
        return x < y;
    });

    StandardForm sf;
    sf.flipped = flip;
    const bool same_sign = n_pos == 0 || n_neg == 0;
    if (same_sign) {
        // all coefficients positive after the flip; the largest moves right
        sf.perm.assign(order.begin(), order.end());
        sf.b0 = -coeff_at(order.back());
    } else {
        // the smallest coefficient is negative; it moves to the right side
        sf.perm.assign(order.begin() + 1, order.end());
        sf.perm.push_back(order.front());
        sf.b0 = -coeff_at(order.front());
    }
    sf.a1 = coeff_at(sf.perm[0]);
    sf.a2 = coeff_at(sf.perm[1]);
    for (std::size_t i = 2; i + 1 < l; ++i) sf.b.push_back(coeff_at(sf.perm[i]));

    // Standard form properties, checked outright.
    for (std::size_t i = 0; i + 3 < l; ++i)
        if (sf.lhs(i) > sf.lhs(i + 1))
            throw InternalInvariantError("standard form not sorted");
    if (same_sign ? sf.b0 >= 0 : sf.b0 <= 0)
        throw InternalInvariantError("standard form b0 sign wrong");
    Int neg = 0, pos = 0;
    for (std::size_t i = 0; i + 1 < l; ++i)
        (sf.lhs(i) > 0 ? pos : neg) += sf.lhs(i);
    if (!(-neg < pos))
        throw InternalInvariantError("standard form left sums wrong");
    if (sf.lhs(l - 2) <= 0 || sf.lhs(l - 3) <= 0)
        throw InternalInvariantError("standard form trailing coefficients not positive");
    return sf;
}

std::vector<Int> standard_coefficient_vector(const StandardForm& sf) {
    std::vector<Int> c;
    const std::size_t l = sf.arity();
    for (std::size_t i = 0; i + 1 < l; ++i) c.push_back(sf.lhs(i));
    c.push_back(-sf.b0);
    return c;
}

bool is_trivial(const LinearEquation& eq, const std::vector<Int>& tuple) {
    if (tuple.size() != eq.arity())
        throw PreconditionError("tuple length does not match equation arity");
    // Grouping positions by value yields a zero-sum partition iff one exists.
    std::vector<std::pair<Int, Int>> sums;  // value -> coefficient total
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        auto it = std::find_if(sums.begin(), sums.end(),
                               [&](const auto& p) { return p.first == tuple[i]; });
        if (it == sums.end())
            sums.emplace_back(tuple[i], eq.coefficients[i]);
        else
            it->second += eq.coefficients[i];
    }
    return std::all_of(sums.begin(), sums.end(),
                       [](const auto& p) { return p.second == 0; });
}

std::vector<SubEquation> sub_equations(const LinearEquation& eq) {
    const std::size_t l = eq.arity();
    if (l < 2) throw PreconditionError("sub_equations requires at least 2 terms");
    std::vector<SubEquation> out;
    for (unsigned long mask = 1; mask + 1 < (1ul << l); ++mask) {
        SubEquation se;
        se.equation.constant = eq.constant;
        for (std::size_t i = 0; i < l; ++i) {
            if (mask >> i & 1) {
                se.kept_positions.push_back(i);
                se.equation.coefficients.push_back(eq.coefficients[i]);
            }
        }
        out.push_back(std::move(se));
    }
    return out;
}

}  // namespace lfree::eqmodel
