#pragma once

// Allocation enumeration in a fixed order: owner vectors (owner of item 0, ...,
// owner of item m-1) counted in base n, item m-1 being the least significant digit.

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "propm/core.hpp"

namespace propm {

class AllocationEnumerator {
public:
    /// Throws ResourceError when agents^items exceeds budget.
    AllocationEnumerator(std::size_t agents, std::size_t items, std::uint64_t budget = kDefaultBudget);

    std::size_t agents() const { return n_; }
    std::size_t items() const { return m_; }
    std::uint64_t count() const { return count_; }

    /// Owner vector of the allocation with the given index.
    std::vector<std::size_t> owners(std::uint64_t index) const;
    Allocation at(std::uint64_t index) const;

    /// Advances an owner vector to the next index; false after the last one.
    bool next(std::vector<std::size_t>& owners) const;

    /// All allocations, in order.
    std::vector<Allocation> all() const;

private:
    std::size_t n_;
    std::size_t m_;
    std::uint64_t count_;
};

/// Splits [0, count) into at most `workers` contiguous ranges and runs
/// fn(begin, end, slot) for each, on separate threads when workers > 1.
/// Rethrows the first exception raised by any range.
void for_each_range(std::uint64_t count, std::size_t workers,
                    const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& fn);

/// Number of ranges for_each_range will use.
std::size_t range_slots(std::uint64_t count, std::size_t workers);

}  // namespace propm
