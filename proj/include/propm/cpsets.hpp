#pragma once

// Close-to-proportional (CP) bundles and the recursive CP ladder.
//
// CP_i(k, S) is the most valuable B ⊆ S with k * v_i(B) <= v_i(S); ties go to
// the larger |B|, then to the lexicographically smallest sorted index list.

#include <optional>
#include <vector>

#include "propm/core.hpp"
#include "propm/kernels.hpp"

namespace propm {

struct CpOptions {
    /// Force a kernel variant; the dispatcher's choice otherwise.
    std::optional<kernels::Isa> isa;
    /// Largest DP table (rows x sums) attempted before falling back to meet-in-the-middle.
    std::uint64_t max_table_cells = std::uint64_t{1} << 24;
};

Bundle cp_bundle(const Instance& inst, std::size_t agent, std::size_t k, const Bundle& set,
                 const CpOptions& options = {});

/// Rungs S_n, S_{n-1}, ..., S_1 in construction order (rungs[0] is S_n).
struct CpLadder {
    std::size_t divider = 0;
    std::vector<Bundle> rungs;

    std::size_t size() const { return rungs.size(); }
    /// S_k for k in [1, size()].
    const Bundle& rung(std::size_t k) const { return rungs[rungs.size() - k]; }
    /// Items of S_n ∪ ... ∪ S_1.
    Bundle items() const;
};

CpLadder cp_ladder(const Instance& inst, std::size_t agent, std::size_t n_rungs, const Bundle& set,
                   const CpOptions& options = {});

/// True iff every rung equals the CP bundle of what remained when it was cut,
/// k * v(S_k) <= v(R_k), and n * v(R_k \ S_k) >= (k - 1) * v(all rungs).
bool validate_ladder(const Instance& inst, const CpLadder& ladder);

}  // namespace propm
