#include "propm/cpsets.hpp"

#include <algorithm>
#include <unordered_set>

namespace propm {

namespace {

struct Target {
    Value sum = 0;
    std::size_t count = 0;
};

// Subset-sum with cardinality, one DP row per suffix of the item list:
// rows[t][s] = largest |B| over B ⊆ items[t..] with v(B) = s, or kUnreachable.
class SuffixTable {
public:
    SuffixTable(std::span<const Value> weights, Value cap, kernels::Isa isa)
        : q_(weights.size()), width_(static_cast<std::size_t>(cap) + 1), cells_((q_ + 1) * width_)
    {
        std::fill(cells_.begin(), cells_.end(), kernels::kUnreachable);
        row(q_)[0] = 0;
        for (std::size_t t = q_; t-- > 0;) {
            auto w = static_cast<std::size_t>(weights[t]);
            kernels::relax_take(isa, row(t + 1), row(t), w);
        }
    }

    Target best() const
    {
        auto top = row(0);
        for (std::size_t s = width_; s-- > 0;)
            if (top[s] >= 0) return {static_cast<Value>(s), static_cast<std::size_t>(top[s])};
        return {};
    }

    /// Can items[from..] reach exactly (sum, count)? Only meaningful when no
    /// completion can exceed count, which holds along an optimal reconstruction.
    bool completes(std::size_t from, Value sum, std::size_t count) const
    {
        if (sum < 0 || static_cast<std::size_t>(sum) >= width_) return false;
        return row(from)[static_cast<std::size_t>(sum)] == static_cast<std::int32_t>(count);
    }

private:
    std::span<std::int32_t> row(std::size_t t) { return {cells_.data() + t * width_, width_}; }
    std::span<const std::int32_t> row(std::size_t t) const { return {cells_.data() + t * width_, width_}; }

    std::size_t q_;
    std::size_t width_;
    std::vector<std::int32_t> cells_;
};

// Same queries answered by meet-in-the-middle; used when sums are too large
// for a table but the item count is small.
class SplitSearch {
public:
    explicit SplitSearch(std::span<const Value> weights) : weights_(weights) {}

    Target best(Value cap) const
    {
        auto [left, right] = halves(0);
        auto lhs = enumerate(left);
        // For each left sum keep its largest cardinality.
        std::sort(lhs.begin(), lhs.end(), [](const Target& a, const Target& b) {
            return a.sum != b.sum ? a.sum < b.sum : a.count > b.count;
        });
        std::vector<Target> unique;
        for (const auto& t : lhs)
            if (unique.empty() || unique.back().sum != t.sum) unique.push_back(t);

        Target best;
        bool found = false;
        for (const auto& r : enumerate(right)) {
            if (r.sum > cap) continue;
            auto it = std::upper_bound(unique.begin(), unique.end(), cap - r.sum,
                                       [](Value v, const Target& t) { return v < t.sum; });
            if (it == unique.begin()) continue;
            --it;
            Target cand{it->sum + r.sum, it->count + r.count};
            if (!found || cand.sum > best.sum) {
                best = cand;
                found = true;
            }
        }
        // Second pass: largest cardinality at the optimal sum.
        for (const auto& r : enumerate(right)) {
            if (r.sum > best.sum) continue;
            auto it = std::lower_bound(unique.begin(), unique.end(), best.sum - r.sum,
                                       [](const Target& t, Value v) { return t.sum < v; });
            if (it != unique.end() && it->sum == best.sum - r.sum) best.count = std::max(best.count, it->count + r.count);
        }
        return best;
    }

    bool completes(std::size_t from, Value sum, std::size_t count) const
    {
        if (sum < 0) return false;
        auto [left, right] = halves(from);
        std::unordered_set<std::uint64_t> seen;
        for (const auto& t : enumerate(left)) seen.insert(key(t));
        for (const auto& r : enumerate(right)) {
            if (r.sum > sum || r.count > count) continue;
            if (seen.count(key({sum - r.sum, count - r.count}))) return true;
        }
        return false;
    }

private:
    static std::uint64_t key(const Target& t)
    {
        return (static_cast<std::uint64_t>(t.sum) << 6) ^ static_cast<std::uint64_t>(t.count);
    }

    std::pair<std::span<const Value>, std::span<const Value>> halves(std::size_t from) const
    {
        auto rest = weights_.subspan(from);
        std::size_t h = rest.size() / 2;
        return {rest.first(h), rest.subspan(h)};
    }

    static std::vector<Target> enumerate(std::span<const Value> part)
    {
        std::vector<Target> out{{0, 0}};
        out.reserve(std::size_t{1} << part.size());
        for (Value w : part) {
            std::size_t before = out.size();
            for (std::size_t i = 0; i < before; ++i) out.push_back({out[i].sum + w, out[i].count + 1});
        }
        return out;
    }

    std::span<const Value> weights_;
};

template <class Search>
Bundle reconstruct(const Search& search, std::span<const std::size_t> items, std::span<const Value> weights, Target goal)
{
    std::vector<std::size_t> chosen;
    chosen.reserve(goal.count);
    Value sum = goal.sum;
    std::size_t count = goal.count;
    for (std::size_t t = 0; t < items.size() && count > 0; ++t) {
        if (weights[t] > sum) continue;
        if (search.completes(t + 1, sum - weights[t], count - 1)) {
            chosen.push_back(items[t]);
            sum -= weights[t];
            --count;
        }
    }
    if (count != 0 || sum != 0) throw InvariantViolation("cp_bundle: witness reconstruction failed");
    return Bundle(std::move(chosen));
}

constexpr std::size_t kMaxSplitItems = 30;

}  // namespace

Bundle cp_bundle(const Instance& inst, std::size_t agent, std::size_t k, const Bundle& set, const CpOptions& options)
{
    if (agent >= inst.agents()) throw InputError("cp_bundle: agent index out of range");
    if (k == 0) throw InputError("cp_bundle: k must be at least 1");
    if (set.bound() > inst.items()) throw InputError("cp_bundle: bundle references an unknown item");

    std::vector<std::size_t> items(set.begin(), set.end());
    std::vector<Value> weights;
    weights.reserve(items.size());
    Value total = 0;
    for (std::size_t j : items) {
        weights.push_back(inst.value(agent, j));
        total += weights.back();
    }
    const Value cap = total / static_cast<Value>(k);

    const std::uint64_t cells = (static_cast<std::uint64_t>(items.size()) + 1) * (static_cast<std::uint64_t>(cap) + 1);
    if (cap < static_cast<Value>(options.max_table_cells) && cells <= options.max_table_cells) {
        SuffixTable table(weights, cap, options.isa.value_or(kernels::active_isa()));
        return reconstruct(table, items, weights, table.best());
    }
    if (items.size() <= kMaxSplitItems) {
        SplitSearch search(weights);
        return reconstruct(search, items, weights, search.best(cap));
    }
    throw ResourceError("cp_bundle: " + std::to_string(items.size()) + " items with total value " +
                        std::to_string(total) + " exceed both the DP table and split-search limits");
}

Bundle CpLadder::items() const
{
    Bundle all;
    for (const auto& r : rungs) all = all.united(r);
    return all;
}

CpLadder cp_ladder(const Instance& inst, std::size_t agent, std::size_t n_rungs, const Bundle& set,
                   const CpOptions& options)
{
    if (n_rungs == 0) throw InputError("cp_ladder: need at least one rung");
    CpLadder ladder;
    ladder.divider = agent;
    Bundle rest = set;
    for (std::size_t k = n_rungs; k >= 1; --k) {
        Bundle rung = cp_bundle(inst, agent, k, rest, options);
        rest = rest.without(rung);
        ladder.rungs.push_back(std::move(rung));
    }
    return ladder;
}

bool validate_ladder(const Instance& inst, const CpLadder& ladder)
{
    if (ladder.divider >= inst.agents() || ladder.rungs.empty()) return false;
    std::size_t count = 0;
    Bundle base;
    for (const auto& r : ladder.rungs) {
        if (r.bound() > inst.items()) return false;
        count += r.size();
        base = base.united(r);
    }
    if (base.size() != count) return false;  // rungs overlap

    const std::size_t i = ladder.divider;
    const auto n = static_cast<Value>(ladder.size());
    const Value total = value_of(inst, i, base);
    Bundle rest = base;
    for (std::size_t k = ladder.size(); k >= 1; --k) {
        const Bundle& rung = ladder.rung(k);
        const Value rest_value = value_of(inst, i, rest);
        if (static_cast<Value>(k) * value_of(inst, i, rung) > rest_value) return false;
        if (cp_bundle(inst, i, k, rest) != rung) return false;
        rest = rest.without(rung);
        if (n * value_of(inst, i, rest) < static_cast<Value>(k - 1) * total) return false;
    }
    return rest.empty();
}

}  // namespace propm
