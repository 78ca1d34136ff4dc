#include "propm/enumerate.hpp"

#include <algorithm>
#include <mutex>

namespace propm {

AllocationEnumerator::AllocationEnumerator(std::size_t agents, std::size_t items, std::uint64_t budget)
    : n_(agents), m_(items), count_(0)
{
    if (agents == 0) throw InputError("enumeration needs at least one agent");
    count_ = allocation_count(agents, items, budget);
}

std::vector<std::size_t> AllocationEnumerator::owners(std::uint64_t index) const
{
    if (index >= count_) throw InputError("allocation index out of range");
    std::vector<std::size_t> out(m_);
    for (std::size_t j = m_; j-- > 0;) {
        out[j] = static_cast<std::size_t>(index % n_);
        index /= n_;
    }
    return out;
}

Allocation AllocationEnumerator::at(std::uint64_t index) const
{
    return Allocation::from_owners(owners(index), n_);
}

bool AllocationEnumerator::next(std::vector<std::size_t>& owners) const
{
    for (std::size_t j = m_; j-- > 0;) {
        if (++owners[j] < n_) return true;
        owners[j] = 0;
    }
    return false;
}

std::vector<Allocation> AllocationEnumerator::all() const
{
    std::vector<Allocation> out;
    out.reserve(count_);
    std::vector<std::size_t> owners(m_, 0);
    do out.push_back(Allocation::from_owners(owners, n_));
    while (next(owners));
    return out;
}

std::size_t range_slots(std::uint64_t count, std::size_t workers)
{
    return static_cast<std::size_t>(std::clamp<std::uint64_t>(count, 1, std::max<std::size_t>(workers, 1)));
}

void for_each_range(std::uint64_t count, std::size_t workers,
                    const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& fn)
{
    const std::size_t slots = range_slots(count, workers);
    if (slots == 1) {
        fn(0, count, 0);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
    std::vector<std::thread> threads;
    const std::uint64_t chunk = count / slots, extra = count % slots;
    std::uint64_t begin = 0;
    for (std::size_t s = 0; s < slots; ++s) {
        const std::uint64_t end = begin + chunk + (s < extra ? 1 : 0);
        threads.emplace_back([&, begin, end, s] {
            try {
                fn(begin, end, s);
            } catch (...) {
                std::lock_guard lock(guard);
                if (!failure) failure = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace propm
