#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfree/eqmodel.hpp"

using namespace lfree;
using namespace lfree::eqmodel;

TEST_CASE("parse coefficient form") {
    auto eq = parse_equation("1,1,-1=0");
    CHECK(eq.coefficients == std::vector<Int>{1, 1, -1});
    CHECK(eq.constant == 0);
}

TEST_CASE("parse symbolic form") {
    auto eq = parse_equation("x1+x2-2x3=0");
    CHECK(eq.coefficients == std::vector<Int>{1, 1, -2});
    CHECK(eq.constant == 0);
}

TEST_CASE("parse rejects zero coefficients") {
    CHECK_THROWS_AS(parse_equation("1,0,1=0"), ParseError);
}

TEST_CASE("classify schur") {
    auto p = classify(parse_equation("1,1,-1=0"));
    CHECK(p.homogeneous);
    CHECK_FALSE(p.translation_invariant);
    CHECK(p.coefficient_sum == 1);
    CHECK(p.gcd == 1);
    REQUIRE(p.forbidden_singleton.has_value());
    CHECK(*p.forbidden_singleton == 0);
}

TEST_CASE("classify translation invariant") {
    auto p = classify(parse_equation("1,1,-2=0"));
    CHECK(p.homogeneous);
    CHECK(p.translation_invariant);
    CHECK(p.coefficient_sum == 0);
    CHECK_FALSE(p.forbidden_singleton.has_value());
}

TEST_CASE("classify inhomogeneous") {
    auto p = classify(parse_equation("1,1,1=6"));
    CHECK_FALSE(p.homogeneous);
    CHECK(p.all_same_sign);
    CHECK(p.coefficient_sum == 3);
    CHECK(p.gcd == 1);
    REQUIRE(p.forbidden_singleton.has_value());
    CHECK(*p.forbidden_singleton == 2);
}

TEST_CASE("standardize schur") {
    auto sf = standardize(parse_equation("1,1,-1=0"));
    CHECK(sf.a1 == 1);
    CHECK(sf.a2 == 1);
    CHECK(sf.b.empty());
    CHECK(sf.b0 == 1);
}

TEST_CASE("standardize all same sign flips b0 negative") {
    auto sf = standardize(parse_equation("1,1,1=0"));
    CHECK(sf.a1 == 1);
    CHECK(sf.a2 == 1);
    CHECK(sf.b0 == -1);
}

TEST_CASE("standardize sidon") {
    auto sf = standardize(parse_equation("1,-1,1,-1=0"));
    CHECK(sf.a1 == -1);
    CHECK(sf.a2 == 1);
    CHECK(sf.b == std::vector<Int>{1});
    CHECK(sf.b0 == 1);
}

TEST_CASE("standardize rejects inhomogeneous and short equations") {
    CHECK_THROWS_AS(standardize(parse_equation("1,1,-1=1")), PreconditionError);
    CHECK_THROWS_AS(standardize(parse_equation("1,-1=0")), PreconditionError);
}

static void check_standard_properties(const std::string& text) {
    auto eq = parse_equation(text);
    auto sf = standardize(eq);
    const std::size_t l = eq.arity();
    // property 1: sorted left side
    CHECK(sf.a1 <= sf.a2);
    if (!sf.b.empty()) CHECK(sf.a2 <= sf.b.front());
    for (std::size_t i = 1; i < sf.b.size(); ++i) CHECK(sf.b[i - 1] <= sf.b[i]);
    // property 3
    CHECK(sf.a1 != 0);
    CHECK(sf.a2 != 0);
    CHECK(sf.b0 != 0);
    // property 4
    Int pos = 0, neg = 0;
    for (std::size_t i = 0; i + 1 < l; ++i)
        (sf.lhs(i) > 0 ? pos : neg) += sf.lhs(i);
    CHECK(-neg < pos);
    // property 5
    CHECK(sf.lhs(l - 2) > 0);
    if (l >= 3) CHECK(sf.lhs(l - 3) > 0);
    // perm maps the standard form back onto the original coefficients
    std::vector<Int> all(l);
    for (std::size_t i = 0; i + 1 < l; ++i) all[i] = sf.lhs(i);
    all[l - 1] = -sf.b0;
    REQUIRE(sf.perm.size() == l);
    for (std::size_t i = 0; i < l; ++i) {
        Int orig = eq.coefficients[sf.perm[i]];
        CHECK(all[i] == (sf.flipped ? Int(-orig) : orig));
    }
}

TEST_CASE("standard form properties across a catalog") {
    for (const char* text :
         {"1,1,-1=0", "1,1,-2=0", "1,1,1=0", "1,-1,1,-1=0", "1,1,1,-1=0",
          "2,3,-5=0", "-1,-1,-1,-2=0", "1,2,3,-4,-1=0", "3,-2,4,-5=0"})
        check_standard_properties(text);
}

TEST_CASE("is_trivial examples") {
    CHECK(is_trivial(parse_equation("1,1,-2=0"), {5, 5, 5}));
    CHECK_FALSE(is_trivial(parse_equation("1,1,-1=0"), {1, 1, 2}));
    CHECK(is_trivial(parse_equation("1,-1,1,-1=0"), {3, 3, 7, 7}));
}

TEST_CASE("is_trivial constant tuples for translation invariant equations") {
    auto eq = parse_equation("1,1,-2=0");
    for (Int x : {Int(-3), Int(0), Int(7)})
        CHECK(is_trivial(eq, {x, x, x}));
}

TEST_CASE("is_trivial rejects length mismatch") {
    CHECK_THROWS_AS(is_trivial(parse_equation("1,1,-1=0"), {1, 2}),
                    PreconditionError);
}

TEST_CASE("sub_equations counts and content") {
    auto subs = sub_equations(parse_equation("1,1,-1=0"));
    CHECK(subs.size() == 6);
    auto subs2 = sub_equations(parse_equation("1,1,-2=0"));
    bool found = false;
    for (const auto& s : subs2)
        if (s.kept_positions == std::vector<std::size_t>{0, 1} &&
            s.equation.coefficients == std::vector<Int>{1, 1})
            found = true;
    CHECK(found);
    CHECK(sub_equations(parse_equation("1,-1,1,-1=0")).size() == 14);
}

TEST_CASE("standard coefficient vector matches the moved right-hand side") {
    auto sf = standardize(parse_equation("1,1,-2=0"));
    CHECK(standard_coefficient_vector(sf) == std::vector<Int>{1, 1, -2});
}
