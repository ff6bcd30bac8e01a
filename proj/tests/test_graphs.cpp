#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfree/graphs.hpp"

using namespace lfree;
using namespace lfree::graphs;

TEST_CASE("max independent set examples") {
    CHECK(max_independent_set(complete(3)).first == 1);
    auto [k, w] = max_independent_set(path(3));
    CHECK(k == 2);
    CHECK(w == std::vector<std::size_t>{0, 2});
    CHECK(max_independent_set(make_graph(4, {})).first == 4);
}

TEST_CASE("count independent sets examples") {
    CHECK(count_independent_sets(path(2)) == 3);
    CHECK(count_independent_sets(path(3)) == 5);
    CHECK(count_independent_sets(complete(3)) == 4);
}

TEST_CASE("path counts follow the Fibonacci recurrence") {
    // F(1)=1, F(2)=1, count(P_n) = F(n+2)
    std::vector<Int> fib{1, 1};
    for (int i = 2; i < 14; ++i) fib.push_back(fib[i - 1] + fib[i - 2]);
    for (std::size_t n = 1; n <= 10; ++n)
        CHECK(count_independent_sets(path(n)) == fib[n + 1]);
}

TEST_CASE("find partition") {
    auto p2 = find_partition(path(2), 2);
    REQUIRE(p2.parts.size() == 2);
    CHECK(validate_partition(path(2), p2));
    CHECK_THROWS_AS(find_partition(complete(3), 2), PreconditionError);
    auto p3 = find_partition(complete(3), 3);
    REQUIRE(p3.parts.size() == 3);
    for (const auto& part : p3.parts) CHECK(part.size() == 1);
    CHECK(validate_partition(complete(3), p3));
}

TEST_CASE("generators") {
    auto p = path(3);
    CHECK(p.edges ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
    CHECK(complete(3).m() == 3);
    CHECK(cycle(4).m() == 4);
    auto g1 = random_graph(5, 0.5, 1);
    auto g2 = random_graph(5, 0.5, 1);
    CHECK(g1.edges == g2.edges);
    CHECK(g1.edges != random_graph(5, 0.5, 2).edges);
}

TEST_CASE("adjacency and ordering") {
    auto g = path(3);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK(g.before(0, 1));
    auto h = make_graph(2, {{0, 1}}, std::vector<std::size_t>{1, 0});
    CHECK(h.before(1, 0));
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(make_graph(2, {{0, 0}}), PreconditionError);
    CHECK_THROWS_AS(make_graph(2, {{0, 2}}), PreconditionError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1}, {1, 0}}), PreconditionError);
}

TEST_CASE("json parse and round trip") {
    auto g = parse_graph(R"({"n":3,"edges":[[0,1],[1,2]]})");
    CHECK(g.n == 3);
    CHECK(g.m() == 2);
    auto g2 = parse_graph(to_json(g));
    CHECK(g2.n == g.n);
    CHECK(g2.edges == g.edges);
    CHECK(g2.vertex_order == g.vertex_order);
}

TEST_CASE("dimacs parse") {
    auto g = parse_graph("p edge 3 2\ne 1 2\ne 2 3\n");
    CHECK(g.n == 3);
    CHECK(g.edges ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
}

TEST_CASE("exhaustive maximum equals branch and bound on random graphs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = random_graph(8, 0.4, seed);
        auto [k, w] = max_independent_set(g);
        std::size_t best = 0;
        Int count = 0;
        for (std::uint64_t mask = 0; mask < (1ull << g.n); ++mask) {
            bool ok = true;
            for (auto [v, u] : g.edges)
                if ((mask >> v & 1) && (mask >> u & 1)) ok = false;
            if (ok) {
                count += 1;
                best = std::max(best, std::size_t(std::popcount(mask)));
            }
        }
        CHECK(k == best);
        CHECK(count_independent_sets(g) == count);
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                CHECK_FALSE(g.adjacent(w[i], w[j]));
    }
}
