#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfree/labeler.hpp"

using namespace lfree;
using namespace lfree::labeler;

namespace {
constexpr VarId X = 0, W = 1, Y = 2, Y2 = 3;
}

TEST_CASE("reduce_form substitutes dependents") {
    std::map<VarId, LinearForm> subs;
    subs[Y] = LinearForm::var(X).add(W, 1);  // Y = X + W
    auto f = LinearForm::var(Y).add(X, -1);  // Y - X
    auto r = reduce_form(f, subs);
    CHECK(r.terms == std::map<VarId, Rat>{{W, Rat(1)}});
    CHECK(r.constant == 0);
}

TEST_CASE("reduce_form clears denominators through the body") {
    std::map<VarId, LinearForm> subs;
    LinearForm half = LinearForm::var(X).add(W, 1);
    half.scale(Rat(1, 2));
    subs[Y] = half;  // Y = (X + W)/2
    auto r = reduce_form(LinearForm::var(Y).add(Y, 1), subs);  // 2Y
    CHECK(r.terms == std::map<VarId, Rat>{{X, Rat(1)}, {W, Rat(1)}});
}

TEST_CASE("reduce_form cancellation yields the zero form") {
    std::map<VarId, LinearForm> subs;
    subs[Y] = LinearForm::var(X).add(W, 1);
    subs[Y2] = LinearForm::var(X).add(W, 1);
    auto r = reduce_form(LinearForm::var(Y).add(Y2, -1), subs);
    CHECK(is_identically_zero(r));
}

TEST_CASE("is_identically_zero") {
    CHECK(is_identically_zero(LinearForm{}));
    CHECK(is_identically_zero(LinearForm::var(X).add(X, -1)));
    CHECK_FALSE(is_identically_zero(LinearForm::var(X).add(W, -1)));
    CHECK_FALSE(is_identically_zero(LinearForm::value(Rat(3))));
}

TEST_CASE("assign_greedy single unconstrained block variable") {
    ConstraintSystem sys;
    sys.variables = {X};
    sys.schedules[X] = Schedule{};  // block, base 1
    auto a = assign_greedy(sys);
    CHECK(a.at(X) == 1);
}

TEST_CASE("assign_greedy skips forbidden values first fit") {
    ConstraintSystem sys;
    sys.variables = {X, W};
    sys.schedules[X] = Schedule{};
    sys.schedules[W] = Schedule{};
    auto diff = LinearForm::var(W).add(X, -1);
    add_form(sys, diff, diff);
    auto a = assign_greedy(sys);
    CHECK(a.at(X) == 1);
    CHECK(a.at(W) == 2);
    CHECK(a.at(W) != a.at(X));
}

TEST_CASE("assign_greedy congruence inside a window") {
    ConstraintSystem sys;
    sys.variables = {X};
    Schedule sch;
    sch.kind = Schedule::Kind::Window;
    sch.center = 15;
    sch.radius = 5;
    sys.schedules[X] = sch;
    sys.congruences[X] = Congruence{2, 6};  // candidates in [10,20]: 14, 20
    auto a = assign_greedy(sys);
    CHECK(a.at(X) == 14);

    LinearForm forbid = LinearForm::var(X);
    forbid.constant = -14;
    add_form(sys, forbid, forbid);
    CHECK(assign_greedy(sys).at(X) == 20);
}

TEST_CASE("assign_greedy computes dependents and verifies integrality") {
    ConstraintSystem sys;
    sys.variables = {X, W};
    sys.schedules[X] = Schedule{};
    sys.schedules[W] = Schedule{};
    sys.substitutions[Y] = LinearForm::var(X).add(W, 1);
    auto diff = LinearForm::var(W).add(X, -1);
    add_form(sys, diff, diff);
    auto a = assign_greedy(sys);
    CHECK(a.at(Y) == a.at(X) + a.at(W));
}

TEST_CASE("assign_greedy block values are strictly increasing") {
    ConstraintSystem sys;
    for (VarId v = 0; v < 5; ++v) {
        sys.variables.push_back(v);
        Schedule sch;
        sch.base = 3;
        sys.schedules[v] = sch;
    }
    for (VarId v = 0; v < 5; ++v)
        for (VarId w = v + 1; w < 5; ++w) {
            auto diff = LinearForm::var(w).add(v, -1);
            add_form(sys, diff, diff);
        }
    auto a = assign_greedy(sys);
    for (VarId v = 1; v < 5; ++v) CHECK(a.at(v - 1) < a.at(v));
    for (VarId v = 0; v < 5; ++v) CHECK(a.at(v) % 3 == 0);
    // L variables, M forms, block step |base|
    const Int bound = Int(5) * (Int(sys.nonzero_forms.size()) + 1) * 3;
    for (VarId v = 0; v < 5; ++v) CHECK(a.at(v) <= bound);
}

TEST_CASE("assign_greedy is deterministic") {
    ConstraintSystem sys;
    sys.variables = {X, W};
    sys.schedules[X] = Schedule{};
    sys.schedules[W] = Schedule{};
    auto diff = LinearForm::var(W).add(X, -2);
    add_form(sys, diff, diff);
    auto a = assign_greedy(sys);
    auto b = assign_greedy(sys);
    CHECK(a == b);
}

TEST_CASE("normalized forms deduplicate scalings") {
    ConstraintSystem sys;
    auto f = LinearForm::var(X).add(W, -1);
    auto g = LinearForm::var(X).add(W, -1);
    g.scale(Rat(-3, 2));
    CHECK(add_form(sys, f, f));
    CHECK_FALSE(add_form(sys, g, g));
    CHECK(sys.nonzero_forms.size() == 1);
}

TEST_CASE("ascend schedules start at the center") {
    ConstraintSystem sys;
    sys.variables = {X};
    Schedule sch;
    sch.kind = Schedule::Kind::Ascend;
    sch.center = 1;
    sys.schedules[X] = sch;
    CHECK(assign_greedy(sys).at(X) == 1);
}
