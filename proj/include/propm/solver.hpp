#pragma once

// Constructive PROPm solver for up to five agents (after big-item reductions),
// with a replayable certificate.
//
// Every step of a certificate is expressed in the index space of the instance
// it belongs to. A SubSplit hands a subset of agents and items to a nested
// certificate whose indices refer to restrict(parent, agents, items).

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "propm/core.hpp"

namespace propm {

/// Agent gets the item outright because n' * v > T' in the current residual.
struct BigItemReduction {
    std::size_t agent = 0;
    std::size_t item = 0;
};

/// CP ladder cut by the divider over the residual items; rungs top-down (S_n first).
struct LadderBuilt {
    std::size_t divider = 0;
    std::vector<std::string> names;
    std::vector<Bundle> rungs;
};

enum class Relation { AtLeast, Below };

/// Records value = v_agent(items) and total = v_agent(residual), and the claim
/// value  >= fraction * total  (AtLeast)  or  value < fraction * total  (Below).
struct ThresholdCheck {
    std::size_t agent = 0;
    std::string label;
    Bundle items;
    Relation relation = Relation::AtLeast;
    Value numerator = 0;
    Value denominator = 1;
    Value value = 0;
    Value total = 0;
};

struct CaseApplied {
    std::size_t agents = 0;
    std::string lemma;
    std::vector<std::pair<std::string, std::size_t>> roles;
    std::vector<ThresholdCheck> checks;
};

enum class Basis {
    Proportional,  ///< n' * v(items) >= T'
    DividerRung,   ///< the divider keeps one ladder rung, no mixing around it
    Sole,          ///< last remaining agent takes every remaining item
};

struct Assignment {
    std::size_t agent = 0;
    Bundle items;
    Basis basis = Basis::Proportional;
    std::string rung;  ///< rung name when basis == DividerRung
};

struct SubSplit {
    std::vector<std::size_t> agents;
    Bundle items;
    std::size_t child = 0;  ///< index into Certificate::children
};

using Step = std::variant<BigItemReduction, LadderBuilt, CaseApplied, Assignment, SubSplit>;

struct Certificate {
    std::size_t agents = 0;
    std::size_t items = 0;
    std::vector<Step> steps;
    std::vector<Certificate> children;
};

struct Solution {
    Allocation allocation;
    Certificate certificate;
};

struct Reduction {
    std::vector<BigItemReduction> assignments;  ///< in application order, original indices
    Restriction residual;                      ///< remaining agents and items
};

/// Repeatedly hands an item j to agent i while n' * v_ij > T'_i in the residual,
/// taking the lexicographically smallest (i, j) each time.
Reduction reduce_big_items(const Instance& inst);

struct SolveOptions {
    /// Skip big-item reductions at the top level (nested splits still reduce).
    bool reduce = true;
};

/// Big-item reductions followed by the residual's n-agent construction.
/// Throws UnsupportedSize when more than five agents remain.
Solution solve_propm(const Instance& inst, const SolveOptions& options = {});

Solution solve1(const Instance& inst);
Solution solve2(const Instance& inst);
Solution solve3(const Instance& inst);
Solution solve4(const Instance& inst);
Solution solve5(const Instance& inst);

/// Replays the certificate against the instance without using the solver or
/// CP search: reductions, ladder properties, recorded thresholds, every agent's
/// justification, non-mixing around the divider, and the resulting allocation.
bool verify_certificate(const Instance& inst, const Allocation& allocation, const Certificate& certificate);

/// Every lemma identifier the solver can emit.
std::span<const std::string_view> lemma_ids();

/// Ladder rung names, top rung first, for 2..5 active agents (empty otherwise).
std::span<const std::string_view> rung_names(std::size_t agents);

}  // namespace propm
