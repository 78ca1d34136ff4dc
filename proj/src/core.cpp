#include "propm/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace propm {

namespace {

using Wide = WideValue;

std::strong_ordering sign(Wide x)
{
    if (x < 0) return std::strong_ordering::less;
    if (x > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Wide wide_gcd(Wide a, Wide b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr Value kMaxItemValue = std::numeric_limits<std::int32_t>::max();

}  // namespace

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(Value numerator, Value denominator)
{
    if (denominator == 0) throw InputError("rational with zero denominator");
    *this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(Wide num, Wide den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr Wide lo = std::numeric_limits<Value>::min();
    constexpr Wide hi = std::numeric_limits<Value>::max();
    if (num < lo || num > hi || den > hi) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<Value>(num);
    r.den_ = static_cast<Value>(den);
    return r;
}

Rational operator+(const Rational& a, const Rational& b)
{
    return Rational::from_wide(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return Rational::from_wide(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return Rational::from_wide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0) throw InputError("division by zero rational");
    return Rational::from_wide(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    return sign(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_);
}

std::string Rational::str() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text)
{
    auto parse_int = [&](const std::string& part) {
        std::size_t used = 0;
        Value v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            throw InputError("malformed rational: '" + text + "'");
        }
        if (used != part.size()) throw InputError("malformed rational: '" + text + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

// ---------------------------------------------------------------------------
// Share comparisons

Share::Share(Value num, Value den) : numerator(num), denominator(den)
{
    if (den <= 0) throw InputError("share denominator must be positive");
}

std::strong_ordering share_compare(Value lhs, const Share& rhs)
{
    return sign(Wide(lhs) * rhs.denominator - rhs.numerator);
}

std::strong_ordering compare_fraction(Value value, Value total, Value p, Value q)
{
    return sign(Wide(q) * value - Wide(p) * total);
}

// ---------------------------------------------------------------------------
// Bundle

Bundle::Bundle(std::vector<std::size_t> items) : items_(std::move(items))
{
    std::sort(items_.begin(), items_.end());
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end())
        throw InputError("bundle lists an item twice");
}

Bundle::Bundle(std::initializer_list<std::size_t> items) : Bundle(std::vector<std::size_t>(items)) {}

bool Bundle::contains(std::size_t item) const
{
    return std::binary_search(items_.begin(), items_.end(), item);
}

Bundle Bundle::united(const Bundle& other) const
{
    Bundle out;
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(out.items_));
    return out;
}

Bundle Bundle::without(const Bundle& other) const
{
    Bundle out;
    std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out.items_));
    return out;
}

bool Bundle::intersects(const Bundle& other) const
{
    auto a = items_.begin();
    auto b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
        if (*a == *b) return true;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return false;
}

Bundle Bundle::range(std::size_t count)
{
    Bundle out;
    out.items_.resize(count);
    std::iota(out.items_.begin(), out.items_.end(), std::size_t{0});
    return out;
}

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(std::vector<std::vector<Value>> rows)
{
    if (rows.empty()) throw InputError("instance needs at least one agent");
    n_ = rows.size();
    m_ = rows.front().size();
    values_.reserve(n_ * m_);
    totals_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (rows[i].size() != m_)
            throw InputError("valuation row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(m_));
        for (Value v : rows[i]) {
            if (v < 0) throw InputError("negative valuation for agent " + std::to_string(i));
            if (v > kMaxItemValue) throw InputError("valuation exceeds 2^31-1 for agent " + std::to_string(i));
            values_.push_back(v);
            totals_[i] += v;
        }
    }
}

std::vector<std::vector<Value>> Instance::rows() const
{
    std::vector<std::vector<Value>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
}

// ---------------------------------------------------------------------------
// Allocation

Allocation Allocation::from_owners(std::span<const std::size_t> owners, std::size_t agents)
{
    std::vector<std::vector<std::size_t>> lists(agents);
    for (std::size_t j = 0; j < owners.size(); ++j) {
        if (owners[j] >= agents) throw InputError("owner index out of range");
        lists[owners[j]].push_back(j);
    }
    std::vector<Bundle> bundles;
    bundles.reserve(agents);
    for (auto& l : lists) bundles.emplace_back(std::move(l));
    return Allocation(std::move(bundles));
}

std::vector<std::size_t> Allocation::owners(std::size_t items) const
{
    std::vector<std::size_t> out(items, agents());
    for (std::size_t i = 0; i < bundles_.size(); ++i)
        for (std::size_t j : bundles_[i]) {
            if (j >= items) throw InputError("allocation references item " + std::to_string(j));
            out[j] = i;
        }
    return out;
}

void Allocation::validate(const Instance& inst) const
{
    if (bundles_.size() != inst.agents())
        throw InputError("allocation has " + std::to_string(bundles_.size()) + " bundles for " +
                         std::to_string(inst.agents()) + " agents");
    std::vector<char> seen(inst.items(), 0);
    std::size_t count = 0;
    for (const auto& b : bundles_) {
        for (std::size_t j : b) {
            if (j >= inst.items()) throw InputError("allocation references unknown item " + std::to_string(j));
            if (seen[j]) throw InputError("item " + std::to_string(j) + " allocated twice");
            seen[j] = 1;
            ++count;
        }
    }
    if (count != inst.items())
        throw InputError("allocation is incomplete: " + std::to_string(inst.items() - count) + " items unassigned");
}

bool Allocation::is_complete(const Instance& inst) const
{
    try {
        validate(inst);
        return true;
    } catch (const InputError&) {
        return false;
    }
}

// ---------------------------------------------------------------------------

Value value_of(const Instance& inst, std::size_t agent, const Bundle& bundle)
{
    if (agent >= inst.agents()) throw InputError("agent index " + std::to_string(agent) + " out of range");
    if (bundle.bound() > inst.items()) throw InputError("bundle references an item outside the instance");
    auto row = inst.row(agent);
    Value sum = 0;
    for (std::size_t j : bundle) sum += row[j];
    return sum;
}

std::uint64_t allocation_count(std::size_t agents, std::size_t items, std::uint64_t budget)
{
    std::uint64_t count = 1;
    for (std::size_t j = 0; j < items; ++j) {
        if (agents != 0 && count > budget / agents)
            throw ResourceError(std::to_string(agents) + "^" + std::to_string(items) +
                                " allocations exceed the enumeration budget of " + std::to_string(budget));
        count *= agents;
    }
    if (count > budget)
        throw ResourceError(std::to_string(agents) + "^" + std::to_string(items) +
                            " allocations exceed the enumeration budget of " + std::to_string(budget));
    return count;
}

Bundle Restriction::lift(const Bundle& sub_bundle) const
{
    std::vector<std::size_t> out;
    out.reserve(sub_bundle.size());
    for (std::size_t j : sub_bundle) out.push_back(item_map.at(j));
    return Bundle(std::move(out));
}

std::vector<Bundle> Restriction::lift(const Allocation& sub_allocation) const
{
    std::vector<Bundle> out;
    out.reserve(sub_allocation.agents());
    for (const auto& b : sub_allocation.bundles()) out.push_back(lift(b));
    return out;
}

Restriction restrict(const Instance& inst, std::span<const std::size_t> agents, const Bundle& items)
{
    if (agents.empty()) throw InputError("restriction needs at least one agent");
    if (items.bound() > inst.items()) throw InputError("restriction references an unknown item");
    Restriction r;
    r.agent_map.assign(agents.begin(), agents.end());
    std::sort(r.agent_map.begin(), r.agent_map.end());
    if (std::adjacent_find(r.agent_map.begin(), r.agent_map.end()) != r.agent_map.end())
        throw InputError("restriction lists an agent twice");
    if (r.agent_map.back() >= inst.agents()) throw InputError("restriction references an unknown agent");
    r.item_map.assign(items.begin(), items.end());

    std::vector<std::vector<Value>> rows(r.agent_map.size());
    for (std::size_t a = 0; a < r.agent_map.size(); ++a) {
        rows[a].reserve(r.item_map.size());
        for (std::size_t j : r.item_map) rows[a].push_back(inst.value(r.agent_map[a], j));
    }
    r.instance = Instance(std::move(rows));
    return r;
}

}  // namespace propm
