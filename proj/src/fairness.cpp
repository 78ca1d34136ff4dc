#include "propm/fairness.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace propm {

namespace {

constexpr std::array kNotions{
    Notion::Prop,  Notion::Prop1,   Notion::PropX,     Notion::PropM,   Notion::Ef,
    Notion::Ef1,   Notion::EfX,     Notion::AEfX,      Notion::Mms,     Notion::AltMean,
    Notion::AltMedian, Notion::AltMode, Notion::AltMinimax,
};

/// v + bonus compared against T/n; slack = v + bonus - T/n.
AgentVerdict proportional(Value own, const Rational& bonus, Value total, std::size_t agents)
{
    Rational slack = Rational(own) + bonus - Rational(total, static_cast<Value>(agents));
    return {slack >= Rational(0), slack};
}

/// Minimum of per-bundle envy slacks; bundles with count == 0 are skipped
/// unless include_empty (plain EF, where envy toward an empty bundle is 0).
template <class Discount>
AgentVerdict envy(const AgentView& view, Discount discount, bool include_empty)
{
    Value slack = view.own;
    for (const auto& o : view.others) {
        if (o.count == 0 && !include_empty) continue;
        slack = std::min(slack, view.own - (o.sum - discount(o)));
    }
    return {slack >= 0, Rational(slack)};
}

Value lower_median(std::vector<Value> values)
{
    if (values.empty()) return 0;
    auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

Value smallest_mode(const std::vector<Value>& values)
{
    if (values.empty()) return 0;
    std::map<Value, std::size_t> freq;
    for (Value v : values) ++freq[v];
    Value best = freq.begin()->first;
    std::size_t best_count = 0;
    for (auto [v, c] : freq)
        if (c > best_count) {
            best = v;
            best_count = c;
        }
    return best;
}

/// ALT_* notions: v_i(X_i) + f(outside values) against T_i / n.
AgentVerdict alternative(const Instance& inst, const Allocation& x, std::size_t agent, Notion notion)
{
    const std::size_t n = inst.agents();
    const Value own = value_of(inst, agent, x[agent]);
    std::vector<Value> outside;
    outside.reserve(inst.items() - x[agent].size());
    for (std::size_t k = 0; k < n; ++k)
        if (k != agent)
            for (std::size_t j : x[k]) outside.push_back(inst.value(agent, j));

    Rational bonus;
    switch (notion) {
    case Notion::AltMean:
        if (!outside.empty())
            bonus = Rational(std::accumulate(outside.begin(), outside.end(), Value{0}),
                             static_cast<Value>(outside.size()));
        break;
    case Notion::AltMedian:
        bonus = lower_median(outside);
        break;
    case Notion::AltMode:
        bonus = smallest_mode(outside);
        break;
    case Notion::AltMinimax: {
        // An empty other bundle has no item to offer: max(empty) = 0.
        std::optional<Value> best;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == agent) continue;
            Value top = 0;
            for (std::size_t j : x[k]) top = std::max(top, inst.value(agent, j));
            best = best ? std::min(*best, top) : top;
        }
        bonus = best.value_or(0);
        break;
    }
    default:
        throw InvariantViolation("alternative(): not an ALT notion");
    }
    return proportional(own, bonus, inst.total(agent), n);
}

bool is_alternative(Notion notion)
{
    return notion == Notion::AltMean || notion == Notion::AltMedian || notion == Notion::AltMode ||
           notion == Notion::AltMinimax;
}

struct MmsSearch {
    std::vector<Value> weights;  // descending
    std::vector<Value> sums;
    Value best = 0;
    Value ceiling = 0;  // floor(T / n): no partition can beat it
    std::size_t used = 0;

    void run(std::size_t pos)
    {
        if (best == ceiling) return;
        if (pos == weights.size()) {
            if (used == sums.size()) best = std::max(best, *std::min_element(sums.begin(), sums.end()));
            return;
        }
        // Bundles are interchangeable: an item may open at most one new bundle.
        std::size_t limit = std::min(used + 1, sums.size());
        for (std::size_t b = 0; b < limit; ++b) {
            bool opened = b == used;
            sums[b] += weights[pos];
            if (opened) ++used;
            run(pos + 1);
            if (opened) --used;
            sums[b] -= weights[pos];
        }
    }
};

}  // namespace

std::string_view notion_name(Notion notion)
{
    switch (notion) {
    case Notion::Prop: return "prop";
    case Notion::Prop1: return "prop1";
    case Notion::PropX: return "propx";
    case Notion::PropM: return "propm";
    case Notion::Ef: return "ef";
    case Notion::Ef1: return "ef1";
    case Notion::EfX: return "efx";
    case Notion::AEfX: return "aefx";
    case Notion::Mms: return "mms";
    case Notion::AltMean: return "alt-mean";
    case Notion::AltMedian: return "alt-median";
    case Notion::AltMode: return "alt-mode";
    case Notion::AltMinimax: return "alt-minimax";
    }
    return "unknown";
}

Notion parse_notion(std::string_view name)
{
    for (Notion n : kNotions)
        if (notion_name(n) == name) return n;
    throw InputError("unknown notion '" + std::string(name) + "'");
}

std::span<const Notion> all_notions()
{
    return kNotions;
}

std::optional<Value> min_item(const Instance& inst, std::size_t agent, const Bundle& bundle)
{
    if (agent >= inst.agents()) throw InputError("agent index out of range");
    if (bundle.bound() > inst.items()) throw InputError("bundle references an item outside the instance");
    if (bundle.empty()) return std::nullopt;
    Value lo = inst.value(agent, *bundle.begin());
    for (std::size_t j : bundle) lo = std::min(lo, inst.value(agent, j));
    return lo;
}

Value maximin_value(const Instance& inst, std::size_t agent, const Allocation& allocation)
{
    Value d = 0;
    for (std::size_t k = 0; k < allocation.agents(); ++k) {
        if (k == agent) continue;
        if (auto lo = min_item(inst, agent, allocation[k])) d = std::max(d, *lo);
    }
    return d;
}

Value mms_value(const Instance& inst, std::size_t agent, std::uint64_t budget)
{
    if (agent >= inst.agents()) throw InputError("agent index out of range");
    const std::size_t n = inst.agents();
    if (n == 1) return inst.total(agent);
    allocation_count(n, inst.items(), budget);
    if (inst.items() < n) return 0;

    MmsSearch search;
    auto row = inst.row(agent);
    search.weights.assign(row.begin(), row.end());
    std::sort(search.weights.begin(), search.weights.end(), std::greater<>());
    search.sums.assign(n, 0);
    search.ceiling = inst.total(agent) / static_cast<Value>(n);
    search.run(0);
    return search.best;
}

AgentView agent_view(const Instance& inst, const Allocation& allocation, std::size_t agent)
{
    AgentView view;
    view.agents = inst.agents();
    view.total = inst.total(agent);
    auto row = inst.row(agent);
    for (std::size_t k = 0; k < allocation.agents(); ++k) {
        AgentView::Other o;
        for (std::size_t j : allocation[k]) {
            Value v = row[j];
            o.min = o.count == 0 ? v : std::min(o.min, v);
            o.max = o.count == 0 ? v : std::max(o.max, v);
            o.sum += v;
            ++o.count;
        }
        if (k == agent)
            view.own = o.sum;
        else
            view.others.push_back(o);
    }
    return view;
}

AgentVerdict evaluate(const AgentView& view, Notion notion, Value mms, bool aefx_companion)
{
    const auto& others = view.others;
    auto over_nonempty = [&](auto pick, auto combine) {
        std::optional<Value> acc;
        for (const auto& o : others)
            if (o.count > 0) acc = acc ? combine(*acc, pick(o)) : pick(o);
        return acc.value_or(0);
    };
    auto min_of = [](const AgentView::Other& o) { return o.min; };
    auto max_of = [](const AgentView::Other& o) { return o.max; };
    auto take_max = [](Value a, Value b) { return std::max(a, b); };
    auto take_min = [](Value a, Value b) { return std::min(a, b); };

    switch (notion) {
    case Notion::Prop:
        return proportional(view.own, 0, view.total, view.agents);
    case Notion::Prop1:
        return proportional(view.own, over_nonempty(max_of, take_max), view.total, view.agents);
    case Notion::PropX:
        return proportional(view.own, over_nonempty(min_of, take_min), view.total, view.agents);
    case Notion::PropM:
        return proportional(view.own, over_nonempty(min_of, take_max), view.total, view.agents);
    case Notion::Ef:
        return envy(view, [](const auto&) { return Value{0}; }, true);
    case Notion::Ef1:
        return envy(view, max_of, false);
    case Notion::EfX:
        return envy(view, min_of, false);
    case Notion::AEfX: {
        if (aefx_companion) {
            if (others.empty()) return {true, Rational(view.own)};
            Value excess = 0;
            for (const auto& o : others) excess += o.sum - o.min;
            Rational slack = Rational(view.own) - Rational(excess, static_cast<Value>(others.size()));
            bool vacuous = view.total == 0;
            return {vacuous || slack > Rational(0), slack};
        }
        Value mins = 0;
        for (const auto& o : others) mins += o.min;  // empty bundles contribute 0
        Rational bonus(mins, static_cast<Value>(view.agents));
        return proportional(view.own, bonus, view.total, view.agents);
    }
    case Notion::Mms:
        return {view.own >= mms, Rational(view.own - mms)};
    default:
        throw InputError("notion '" + std::string(notion_name(notion)) + "' needs the full allocation");
    }
}

FairnessReport check(const Instance& inst, const Allocation& allocation, Notion notion, const CheckOptions& options)
{
    allocation.validate(inst);
    FairnessReport report;
    report.notion = notion;
    report.per_agent.reserve(inst.agents());

    std::vector<Value> mms;
    if (notion == Notion::Mms) {
        if (!options.mms_values.empty()) {
            if (options.mms_values.size() != inst.agents()) throw InputError("mms_values has the wrong length");
            mms.assign(options.mms_values.begin(), options.mms_values.end());
        } else {
            for (std::size_t i = 0; i < inst.agents(); ++i) mms.push_back(mms_value(inst, i, options.budget));
        }
    }

    for (std::size_t i = 0; i < inst.agents(); ++i) {
        if (is_alternative(notion)) {
            report.per_agent.push_back(alternative(inst, allocation, i, notion));
        } else {
            report.per_agent.push_back(evaluate(agent_view(inst, allocation, i), notion,
                                                mms.empty() ? 0 : mms[i], options.aefx_companion));
        }
    }
    report.all_satisfied = std::all_of(report.per_agent.begin(), report.per_agent.end(),
                                       [](const AgentVerdict& v) { return v.satisfied; });
    return report;
}

}  // namespace propm
