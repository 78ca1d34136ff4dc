#pragma once

// Per-agent verifiers for proportionality and envy relaxations. Every test is
// agent-relative and exact: "x >= T_i / n" is evaluated as n*x >= T_i.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "propm/core.hpp"

namespace propm {

enum class Notion {
    Prop,
    Prop1,
    PropX,
    PropM,
    Ef,
    Ef1,
    EfX,
    AEfX,
    Mms,
    AltMean,
    AltMedian,
    AltMode,
    AltMinimax,
};

/// Command-line spelling: "prop", "propm", "alt-median", ...
std::string_view notion_name(Notion notion);
Notion parse_notion(std::string_view name);
std::span<const Notion> all_notions();

struct AgentVerdict {
    bool satisfied = false;
    Rational slack;  ///< left-hand side minus threshold, in the agent's own units
};

struct FairnessReport {
    Notion notion = Notion::PropM;
    std::vector<AgentVerdict> per_agent;
    bool all_satisfied = false;
};

struct CheckOptions {
    /// Experimental a-EFx variant: v_i(X_i) > 1/(n-1) * sum_{k != i} (v_i(X_k) - m_i(X_k)), strict.
    bool aefx_companion = false;
    /// Partition budget for maximin shares.
    std::uint64_t budget = kDefaultBudget;
    /// Precomputed maximin shares, one per agent; computed on demand when empty.
    std::span<const Value> mms_values;
};

/// m_i(S): the agent's least valuable item in S; nullopt for the empty bundle.
std::optional<Value> min_item(const Instance& inst, std::size_t agent, const Bundle& bundle);

/// d_i(X) = max over nonempty other bundles of m_i(X_k); 0 if every other bundle is empty.
Value maximin_value(const Instance& inst, std::size_t agent, const Allocation& allocation);

/// Maximin share: best worst-bundle value over all partitions into n bundles.
Value mms_value(const Instance& inst, std::size_t agent, std::uint64_t budget = kDefaultBudget);

FairnessReport check(const Instance& inst, const Allocation& allocation, Notion notion,
                     const CheckOptions& options = {});

/// One agent's summary of an allocation. Enough to decide every notion except
/// the ALT_* family, which needs the full multiset of outside values.
struct AgentView {
    struct Other {
        Value sum = 0;
        Value min = 0;
        Value max = 0;
        std::size_t count = 0;
    };

    std::size_t agents = 0;
    Value own = 0;
    Value total = 0;
    std::vector<Other> others;  ///< one entry per other agent, in agent order
};

AgentView agent_view(const Instance& inst, const Allocation& allocation, std::size_t agent);

/// Verdict for a summary-decidable notion. mms is only read for Notion::Mms.
AgentVerdict evaluate(const AgentView& view, Notion notion, Value mms = 0, bool aefx_companion = false);

}  // namespace propm
