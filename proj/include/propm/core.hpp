#pragma once

// Exact data model: instances with non-negative integer valuations, bundles,
// complete allocations and rational shares. Nothing here uses floating point.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace propm {

using Value = std::int64_t;
/// Intermediate width for products of two Values.
__extension__ typedef __int128 WideValue;

/// Malformed input (bad indices, invalid JSON shape, incomplete allocation...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive computation would exceed its configured budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The constructive solver has no case analysis for this many agents.
class UnsupportedSize : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A property guaranteed by construction failed; always an implementation bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exact rational number kept in lowest terms with a positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(Value numerator, Value denominator = 1);

    Value numerator() const { return num_; }
    Value denominator() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const;
    /// Accepts "p", "-p" and "p/q".
    static Rational parse(const std::string& text);

private:
    static Rational from_wide(WideValue num, WideValue den);

    Value num_ = 0;
    Value den_ = 1;
};

/// A rational threshold such as T/n or 3T/5. Not reduced; denominator > 0.
struct Share {
    Value numerator = 0;
    Value denominator = 1;

    Share() = default;
    Share(Value num, Value den);
};

/// Sign of lhs * denominator - numerator, computed without overflow.
std::strong_ordering share_compare(Value lhs, const Share& rhs);

/// Compares value against (p/q) * total exactly, i.e. q*value <=> p*total.
std::strong_ordering compare_fraction(Value value, Value total, Value p, Value q);

inline bool at_least_fraction(Value value, Value total, Value p, Value q)
{
    return compare_fraction(value, total, p, q) >= 0;
}

/// Sorted set of item indices.
class Bundle {
public:
    Bundle() = default;
    /// Sorts the indices; duplicates are rejected.
    explicit Bundle(std::vector<std::size_t> items);
    Bundle(std::initializer_list<std::size_t> items);

    std::span<const std::size_t> items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    bool contains(std::size_t item) const;
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    /// Largest index + 1, or 0 for the empty bundle.
    std::size_t bound() const { return items_.empty() ? 0 : items_.back() + 1; }

    Bundle united(const Bundle& other) const;
    Bundle without(const Bundle& other) const;
    bool intersects(const Bundle& other) const;

    friend bool operator==(const Bundle&, const Bundle&) = default;
    friend auto operator<=>(const Bundle& a, const Bundle& b) { return a.items_ <=> b.items_; }

    static Bundle range(std::size_t count);

private:
    std::vector<std::size_t> items_;
};

/// n agents, m items, non-negative integer valuations; totals are cached.
class Instance {
public:
    Instance() = default;
    /// Row i holds agent i's values. Requires at least one agent, equal row
    /// lengths and values in [0, 2^31).
    explicit Instance(std::vector<std::vector<Value>> rows);

    std::size_t agents() const { return n_; }
    std::size_t items() const { return m_; }
    Value value(std::size_t agent, std::size_t item) const { return values_[agent * m_ + item]; }
    std::span<const Value> row(std::size_t agent) const { return {values_.data() + agent * m_, m_}; }
    Value total(std::size_t agent) const { return totals_[agent]; }

    std::vector<std::vector<Value>> rows() const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<Value> values_;
    std::vector<Value> totals_;
};

/// Complete allocation: bundle k belongs to agent k.
class Allocation {
public:
    Allocation() = default;
    explicit Allocation(std::vector<Bundle> bundles) : bundles_(std::move(bundles)) {}

    /// owners[j] is the agent receiving item j.
    static Allocation from_owners(std::span<const std::size_t> owners, std::size_t agents);

    std::size_t agents() const { return bundles_.size(); }
    const Bundle& operator[](std::size_t agent) const { return bundles_[agent]; }
    std::span<const Bundle> bundles() const { return bundles_; }

    /// owners()[j] = agent holding j; requires a complete allocation of m items.
    std::vector<std::size_t> owners(std::size_t items) const;

    /// Throws InputError unless this is a partition of all items among inst's agents.
    void validate(const Instance& inst) const;
    bool is_complete(const Instance& inst) const;

    friend bool operator==(const Allocation&, const Allocation&) = default;

private:
    std::vector<Bundle> bundles_;
};

Value value_of(const Instance& inst, std::size_t agent, const Bundle& bundle);

/// Default cap on exhaustively enumerated allocations or partitions.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// agents^items, or ResourceError if that exceeds budget.
std::uint64_t allocation_count(std::size_t agents, std::size_t items, std::uint64_t budget);

/// Sub-instance on a subset of agents and items, with maps back to the parent.
struct Restriction {
    Instance instance;
    std::vector<std::size_t> agent_map;  ///< sub agent -> parent agent
    std::vector<std::size_t> item_map;   ///< sub item  -> parent item

    Bundle lift(const Bundle& sub_bundle) const;
    /// Bundles of the sub-allocation in parent item indices, indexed by sub agent.
    std::vector<Bundle> lift(const Allocation& sub_allocation) const;
};

/// Agents are taken in ascending order; items as given by the bundle.
Restriction restrict(const Instance& inst, std::span<const std::size_t> agents, const Bundle& items);

}  // namespace propm
