#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "propm/leximin.hpp"
#include "propm/oracle.hpp"

using namespace propm;

namespace {
const Instance kFlat({{5, 5}, {5, 5}});

EnvyGraph graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges)
{
    EnvyGraph g;
    g.agents = n;
    g.out.resize(n);
    for (auto [a, b] : edges) g.out[a].push_back(b);
    for (auto& o : g.out) std::sort(o.begin(), o.end());
    return g;
}
}  // namespace

TEST_CASE("adjusted values")
{
    auto split = adjusted_profile(kFlat, Allocation({Bundle{0}, Bundle{1}}));
    CHECK(split.values == std::vector<Rational>{Rational(15, 2), Rational(15, 2)});
    CHECK(split.shares == std::vector<Rational>{Rational(3, 4), Rational(3, 4)});

    auto hoard = adjusted_profile(kFlat, Allocation({Bundle{0, 1}, Bundle{}}));
    CHECK(hoard.values == std::vector<Rational>{Rational(10), Rational(5, 2)});
    CHECK(hoard.sorted == std::vector<Rational>{Rational(1, 4), Rational(1)});

    auto zero = adjusted_profile(Instance({{0, 0}, {1, 1}}), Allocation({Bundle{}, Bundle{0, 1}}));
    CHECK(zero.shares[0] == Rational(1));
}

TEST_CASE("leximin comparison")
{
    auto p = AdjustedProfile::from_shares({Rational(9), Rational(1)});
    auto q = AdjustedProfile::from_shares({Rational(1), Rational(8)});
    CHECK(p.sorted == std::vector<Rational>{Rational(1), Rational(9)});
    CHECK(leximin_compare(p, q) == std::strong_ordering::greater);
    CHECK(leximin_compare(q, p) == std::strong_ordering::less);
    CHECK(leximin_compare(p, p) == std::strong_ordering::equal);
    auto r = AdjustedProfile::from_shares({Rational(2), Rational(2)});
    CHECK(leximin_compare(r, p) == std::strong_ordering::greater);
    CHECK_THROWS_AS(leximin_compare(p, AdjustedProfile::from_shares({Rational(1)})), InputError);
}

TEST_CASE("leximin comparison is a total preorder")
{
    std::mt19937_64 rng(19);
    std::vector<AdjustedProfile> ps;
    for (int t = 0; t < 40; ++t) {
        std::vector<Rational> s;
        for (int k = 0; k < 3; ++k) s.emplace_back(static_cast<Value>(rng() % 4), 1 + static_cast<Value>(rng() % 3));
        ps.push_back(AdjustedProfile::from_shares(s));
    }
    for (const auto& a : ps)
        for (const auto& b : ps) {
            auto ab = leximin_compare(a, b), ba = leximin_compare(b, a);
            REQUIRE((ab == std::strong_ordering::less) == (ba == std::strong_ordering::greater));
            REQUIRE((ab == std::strong_ordering::equal) == (a.sorted == b.sorted));
            for (const auto& c : ps)
                if (ab >= 0 && leximin_compare(b, c) >= 0) REQUIRE(leximin_compare(a, c) >= 0);
        }
}

TEST_CASE("leximin maximum")
{
    auto r = leximin_max(kFlat);
    CHECK(r.allocation == Allocation({Bundle{0}, Bundle{1}}));
    CHECK(r.allocations_checked == 4);

    auto empty = leximin_max(Instance({{}, {}}));
    CHECK(empty.allocation == Allocation({Bundle{}, Bundle{}}));
    CHECK(empty.profile.shares == std::vector<Rational>{Rational(1), Rational(1)});

    Instance eps = make_counterexample(100);
    auto e = leximin_max(eps);
    for (const auto& v : e.profile.values) CHECK(v >= Rational(100, 3));

    CHECK_THROWS_AS(leximin_max(eps, 100), ResourceError);

    std::mt19937_64 rng(29);
    for (int t = 0; t < 20; ++t) {
        Instance inst = random_instance(3, 1 + rng() % 5, 6, rng());
        auto one = leximin_max(inst, kDefaultBudget, 1);
        auto many = leximin_max(inst, kDefaultBudget, 4);
        REQUIRE(one.allocation == many.allocation);
        for (const auto& owners : oracles::owner_vectors(3, inst.items()))
            REQUIRE(leximin_compare(one.profile, adjusted_profile(inst, Allocation::from_owners(owners, 3))) >= 0);
    }
}

TEST_CASE("envy graph and cycle swap")
{
    Instance inst({{5, 5, 0, 0}, {0, 0, 5, 5}});
    Allocation x({Bundle{2, 3}, Bundle{0, 1}});
    EnvyGraph g = envy_graph(inst, x);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(g.edge_count() == 2);
    CHECK(find_cycle(g) == std::vector<std::size_t>{0, 1});
    auto swapped = cycle_swap(inst, x);
    REQUIRE(swapped);
    CHECK(*swapped == Allocation({Bundle{0, 1}, Bundle{2, 3}}));
    CHECK_FALSE(cycle_swap(inst, *swapped));

    // An empty bundle is never envied.
    EnvyGraph h = envy_graph(kFlat, Allocation({Bundle{0, 1}, Bundle{}}));
    CHECK(h.edge_count() == 1);
    CHECK(h.has_edge(1, 0));
    CHECK_FALSE(h.has_edge(0, 1));
}

TEST_CASE("shortest, then least, cycle")
{
    CHECK(find_cycle(graph(3, {{0, 1}, {1, 2}, {2, 0}, {1, 0}})) == std::vector<std::size_t>{0, 1});
    CHECK(find_cycle(graph(3, {{0, 1}, {1, 2}, {2, 1}})) == std::vector<std::size_t>{1, 2});
    CHECK(find_cycle(graph(4, {{0, 2}, {2, 3}, {3, 0}, {0, 1}, {1, 3}})) == std::vector<std::size_t>{0, 1, 3});
    CHECK(find_cycle(graph(4, {{0, 1}, {1, 2}, {2, 3}})) == std::nullopt);
    CHECK(find_cycle(graph(0, {})) == std::nullopt);
}

TEST_CASE("a cycle swap strictly raises every traded agent's own value")
{
    std::mt19937_64 rng(31);
    int swaps = 0;
    for (int t = 0; t < 400; ++t) {
        std::size_t n = 2 + rng() % 3, m = 1 + rng() % 6;
        Instance inst = random_instance(n, m, 9, rng());
        std::vector<std::size_t> owners(m);
        for (auto& o : owners) o = rng() % n;
        Allocation x = Allocation::from_owners(owners, n);
        auto cycle = find_cycle(envy_graph(inst, x));
        auto y = cycle_swap(inst, x);
        REQUIRE(cycle.has_value() == y.has_value());
        if (!y) continue;
        ++swaps;
        for (std::size_t i : *cycle) REQUIRE(value_of(inst, i, (*y)[i]) > value_of(inst, i, x[i]));
    }
    CHECK(swaps > 0);
}
