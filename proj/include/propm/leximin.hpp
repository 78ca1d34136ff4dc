#pragma once

// Adjusted values ṽ_i = v_i(X_i) + ((n-1)/n) * d_i(X), the leximin order over
// them, and the strict EFx envy graph with its cycle trade.

#include <compare>
#include <optional>
#include <vector>

#include "propm/core.hpp"

namespace propm {

struct AdjustedProfile {
    /// ṽ_i in the agent's own units.
    std::vector<Rational> values;
    /// ṽ_i / T_i; an agent with T_i = 0 counts as 1.
    std::vector<Rational> shares;
    /// shares in ascending order; this is what leximin_compare reads.
    std::vector<Rational> sorted;

    /// Profile built directly from normalized shares (values are left equal to shares).
    static AdjustedProfile from_shares(std::vector<Rational> shares);
};

AdjustedProfile adjusted_profile(const Instance& inst, const Allocation& allocation);

/// Lexicographic comparison of the ascending share vectors. Throws InputError
/// when the profiles have different lengths.
std::strong_ordering leximin_compare(const AdjustedProfile& p, const AdjustedProfile& q);

struct LeximinResult {
    Allocation allocation;
    AdjustedProfile profile;
    std::uint64_t allocations_checked = 0;
};

/// Exhaustive search; the first maximum in enumeration order wins ties.
LeximinResult leximin_max(const Instance& inst, std::uint64_t budget = kDefaultBudget, std::size_t workers = 1);

/// Edge i -> j iff X_j is nonempty and v_i(X_j) - m_i(X_j) > v_i(X_i).
struct EnvyGraph {
    std::size_t agents = 0;
    std::vector<std::vector<std::size_t>> out;  ///< ascending successor lists

    bool has_edge(std::size_t from, std::size_t to) const;
    std::size_t edge_count() const;
};

EnvyGraph envy_graph(const Instance& inst, const Allocation& allocation);

/// Shortest directed cycle, then the lexicographically least one, written from
/// its smallest vertex: c0 -> c1 -> ... -> c0.
std::optional<std::vector<std::size_t>> find_cycle(const EnvyGraph& graph);

/// Each agent on the chosen cycle takes the bundle of the agent it envies.
/// nullopt when the envy graph is acyclic.
std::optional<Allocation> cycle_swap(const Instance& inst, const Allocation& allocation);

}  // namespace propm
