#pragma once

// Exhaustive ground truth over all n^m allocations, plus instance generators.

#include <optional>
#include <string>
#include <vector>

#include "propm/enumerate.hpp"
#include "propm/fairness.hpp"

namespace propm {

struct OracleOptions {
    std::uint64_t budget = kDefaultBudget;
    std::size_t workers = 1;
    bool aefx_companion = false;
};

struct ExistenceResult {
    Notion notion = Notion::PropM;
    bool exists = false;
    std::optional<Allocation> witness;  ///< first satisfying allocation in enumeration order
    std::optional<std::uint64_t> witness_index;
    /// Allocations examined in enumeration order up to and including the witness, or all of them.
    std::uint64_t allocations_checked = 0;
};

ExistenceResult exists(const Instance& inst, Notion notion, const OracleOptions& options = {});

struct ImplicationViolation {
    std::uint64_t index = 0;  ///< enumeration index of the allocation
    Allocation allocation;
    std::size_t agent = 0;
};

struct ImplicationResult {
    std::string premise;
    std::string conclusion;
    std::uint64_t premise_holds = 0;  ///< agent-allocation pairs where the premise held
    std::uint64_t violations = 0;
    std::vector<ImplicationViolation> examples;  ///< earliest few, in enumeration order

    std::string name() const { return premise + " => " + conclusion; }
};

struct AuditReport {
    std::uint64_t allocations_checked = 0;
    std::vector<ImplicationResult> implications;

    bool clean() const;
    const ImplicationResult& find(const std::string& name) const;
};

/// Checks per agent, on every allocation: EF=>EFX, EFX=>EF1, EFX=>AEFX,
/// AEFX=>PROPM, PROP=>PROPX, PROPX=>PROPM, PROPM=>PROP1, EFX=>PROPX,
/// PROP=>MMS and ADJ=>PROPM, where ADJ means ṽ_i >= T_i / n.
AuditReport implication_audit(const Instance& inst, const OracleOptions& options = {}, std::size_t max_examples = 3);

/// Three identical agents valuing [scale-6, 1, 1, 1, 1, 1, 1]. Requires scale >= 7.
Instance make_counterexample(Value scale);

/// Values are std::mt19937_64(seed) draws reduced modulo max_value + 1, row by row.
Instance random_instance(std::size_t agents, std::size_t items, Value max_value, std::uint64_t seed);

}  // namespace propm
