#include "propm/leximin.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

#include "propm/enumerate.hpp"
#include "propm/fairness.hpp"

namespace propm {

AdjustedProfile AdjustedProfile::from_shares(std::vector<Rational> shares)
{
    AdjustedProfile p;
    p.values = shares;
    p.sorted = shares;
    std::sort(p.sorted.begin(), p.sorted.end());
    p.shares = std::move(shares);
    return p;
}

AdjustedProfile adjusted_profile(const Instance& inst, const Allocation& allocation)
{
    allocation.validate(inst);
    const auto n = static_cast<Value>(inst.agents());
    AdjustedProfile p;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
        Rational v = Rational(value_of(inst, i, allocation[i])) + Rational(n - 1, n) * Rational(maximin_value(inst, i, allocation));
        p.values.push_back(v);
        p.shares.push_back(inst.total(i) == 0 ? Rational(1) : v / Rational(inst.total(i)));
    }
    p.sorted = p.shares;
    std::sort(p.sorted.begin(), p.sorted.end());
    return p;
}

std::strong_ordering leximin_compare(const AdjustedProfile& p, const AdjustedProfile& q)
{
    if (p.sorted.size() != q.sorted.size()) throw InputError("leximin_compare: profiles have different lengths");
    for (std::size_t k = 0; k < p.sorted.size(); ++k)
        if (auto c = p.sorted[k] <=> q.sorted[k]; c != 0) return c;
    return std::strong_ordering::equal;
}

LeximinResult leximin_max(const Instance& inst, std::uint64_t budget, std::size_t workers)
{
    AllocationEnumerator e(inst.agents(), inst.items(), budget);
    struct Best {
        std::uint64_t index = 0;
        std::optional<AdjustedProfile> profile;
    };
    std::vector<Best> best(range_slots(e.count(), workers));

    for_each_range(e.count(), workers, [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
        auto owners = e.owners(begin);
        Best local;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            AdjustedProfile p = adjusted_profile(inst, Allocation::from_owners(owners, inst.agents()));
            if (!local.profile || leximin_compare(p, *local.profile) > 0) local = {idx, std::move(p)};
            e.next(owners);
        }
        best[slot] = std::move(local);
    });

    // Slots cover increasing index ranges, so strict improvement keeps the earliest maximum.
    Best winner;
    for (auto& b : best)
        if (b.profile && (!winner.profile || leximin_compare(*b.profile, *winner.profile) > 0)) winner = std::move(b);
    return {e.at(winner.index), std::move(*winner.profile), e.count()};
}

bool EnvyGraph::has_edge(std::size_t from, std::size_t to) const
{
    return from < out.size() && std::binary_search(out[from].begin(), out[from].end(), to);
}

std::size_t EnvyGraph::edge_count() const
{
    std::size_t c = 0;
    for (const auto& o : out) c += o.size();
    return c;
}

EnvyGraph envy_graph(const Instance& inst, const Allocation& allocation)
{
    allocation.validate(inst);
    EnvyGraph g;
    g.agents = inst.agents();
    g.out.resize(g.agents);
    for (std::size_t i = 0; i < g.agents; ++i) {
        const Value own = value_of(inst, i, allocation[i]);
        for (std::size_t j = 0; j < g.agents; ++j) {
            if (j == i || allocation[j].empty()) continue;
            if (value_of(inst, i, allocation[j]) - *min_item(inst, i, allocation[j]) > own) g.out[i].push_back(j);
        }
    }
    return g;
}

std::optional<std::vector<std::size_t>> find_cycle(const EnvyGraph& g)
{
    const std::size_t n = g.agents;
    constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

    // dist_to[s][v]: shortest path length v -> s.
    auto distances_to = [&](std::size_t s) {
        std::vector<std::size_t> dist(n, kFar);
        std::vector<std::vector<std::size_t>> in(n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v : g.out[u]) in[v].push_back(u);
        std::deque<std::size_t> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t u : in[v])
                if (dist[u] == kFar) {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
        }
        return dist;
    };

    std::size_t girth = kFar;
    std::vector<std::vector<std::size_t>> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        dist[s] = distances_to(s);
        for (std::size_t u : g.out[s])
            if (dist[s][u] != kFar) girth = std::min(girth, dist[s][u] + 1);
    }
    if (girth == kFar) return std::nullopt;

    // Written from its smallest vertex, the least cycle starts at the smallest
    // s on a girth-length cycle and then takes the smallest feasible successor.
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> path{s};
        std::function<bool(std::size_t)> extend = [&](std::size_t v) {
            const std::size_t used = path.size();
            for (std::size_t u : g.out[v]) {
                if (u == s && used == girth) return true;
                if (u <= s || std::find(path.begin(), path.end(), u) != path.end()) continue;
                if (dist[s][u] == kFar || used + dist[s][u] != girth) continue;
                path.push_back(u);
                if (extend(u)) return true;
                path.pop_back();
            }
            return false;
        };
        if (extend(s)) return path;
    }
    return std::nullopt;
}

std::optional<Allocation> cycle_swap(const Instance& inst, const Allocation& allocation)
{
    auto cycle = find_cycle(envy_graph(inst, allocation));
    if (!cycle) return std::nullopt;
    std::vector<Bundle> bundles(allocation.bundles().begin(), allocation.bundles().end());
    const auto& c = *cycle;
    for (std::size_t k = 0; k < c.size(); ++k) bundles[c[k]] = allocation[c[(k + 1) % c.size()]];
    return Allocation(std::move(bundles));
}

}  // namespace propm
