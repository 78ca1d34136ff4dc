#pragma once

// Brute-force reference implementations used only by tests. They follow the
// definitions literally (nested loops, exhaustive subsets) and share no code
// with the library beyond the data types.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "propm/core.hpp"

namespace oracles {

using propm::Bundle;
using propm::Value;

/// CP bundle by scanning all 2^|set| subsets.
inline Bundle cp(const std::vector<Value>& values, std::size_t k, const std::vector<std::size_t>& set)
{
    Value total = 0;
    for (std::size_t j : set) total += values[j];
    std::optional<std::vector<std::size_t>> best;
    Value best_value = -1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << set.size()); ++mask) {
        std::vector<std::size_t> pick;
        Value v = 0;
        for (std::size_t b = 0; b < set.size(); ++b)
            if (mask >> b & 1) {
                pick.push_back(set[b]);
                v += values[set[b]];
            }
        if (static_cast<Value>(k) * v > total) continue;
        std::sort(pick.begin(), pick.end());
        bool better = v > best_value || (v == best_value && pick.size() > best->size()) ||
                      (v == best_value && pick.size() == best->size() && pick < *best);
        if (better) {
            best = pick;
            best_value = v;
        }
    }
    return Bundle(*best);
}

inline Value sum(const std::vector<Value>& row, const Bundle& b)
{
    Value s = 0;
    for (std::size_t j : b) s += row[j];
    return s;
}

/// Per-agent verdicts straight from the definitions, using n*x >= T forms.
struct Verdicts {
    bool prop, prop1, propx, propm, ef, ef1, efx, aefx;
};

inline Verdicts verdicts(const std::vector<std::vector<Value>>& v, const std::vector<Bundle>& x, std::size_t i)
{
    const auto n = static_cast<Value>(v.size());
    const auto& row = v[i];
    Value total = 0;
    for (Value a : row) total += a;
    const Value own = sum(row, x[i]);

    std::optional<Value> outside_max, outside_min, maximin;
    Value min_sum = 0;
    bool ef = true, ef1 = true, efx = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k == i) continue;
        const Value other = sum(row, x[k]);
        if (other > own) ef = false;
        if (x[k].empty()) continue;
        Value lo = row[*x[k].begin()], hi = lo;
        for (std::size_t j : x[k]) {
            lo = std::min(lo, row[j]);
            hi = std::max(hi, row[j]);
        }
        outside_max = outside_max ? std::max(*outside_max, hi) : hi;
        outside_min = outside_min ? std::min(*outside_min, lo) : lo;
        maximin = maximin ? std::max(*maximin, lo) : lo;
        min_sum += lo;
        if (own < other - hi) ef1 = false;
        if (own < other - lo) efx = false;
    }
    Verdicts out{};
    out.prop = n * own >= total;
    out.prop1 = n * (own + outside_max.value_or(0)) >= total;
    out.propx = n * (own + outside_min.value_or(0)) >= total;
    out.propm = n * (own + maximin.value_or(0)) >= total;
    out.ef = ef;
    out.ef1 = ef1;
    out.efx = efx;
    out.aefx = n * own + min_sum >= total;
    return out;
}

/// Maximin share by trying every assignment of items to n labelled bundles.
inline Value mms(const std::vector<Value>& row, std::size_t n)
{
    const std::size_t m = row.size();
    std::uint64_t count = 1;
    for (std::size_t j = 0; j < m; ++j) count *= n;
    Value best = 0;
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<Value> sums(n, 0);
        std::uint64_t c = code;
        for (std::size_t j = 0; j < m; ++j) {
            sums[c % n] += row[j];
            c /= n;
        }
        best = std::max(best, *std::min_element(sums.begin(), sums.end()));
    }
    return best;
}

/// All owner vectors in base-n counting order, item m-1 least significant.
inline std::vector<std::vector<std::size_t>> owner_vectors(std::size_t n, std::size_t m)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(m, 0);
    for (;;) {
        out.push_back(cur);
        std::size_t j = m;
        while (j > 0) {
            --j;
            if (++cur[j] < n) break;
            cur[j] = 0;
            if (j == 0) return out;
        }
        if (m == 0) return out;
    }
}

inline std::vector<Bundle> bundles_of(const std::vector<std::size_t>& owners, std::size_t n)
{
    std::vector<std::vector<std::size_t>> b(n);
    for (std::size_t j = 0; j < owners.size(); ++j) b[owners[j]].push_back(j);
    std::vector<Bundle> out;
    for (auto& items : b) out.emplace_back(std::move(items));
    return out;
}

}  // namespace oracles
