#include "propm/oracle.hpp"

#include <algorithm>
#include <random>

#include "propm/leximin.hpp"

namespace propm {

namespace {

std::vector<Value> maximin_shares(const Instance& inst, std::uint64_t budget)
{
    std::vector<Value> out;
    for (std::size_t i = 0; i < inst.agents(); ++i) out.push_back(mms_value(inst, i, budget));
    return out;
}

struct Rule {
    const char* premise;
    const char* conclusion;
    std::optional<Notion> from;  ///< nullopt: adjusted value at least T/n
    Notion to;
};

const Rule kRules[] = {
    {"EF", "EFX", Notion::Ef, Notion::EfX},
    {"EFX", "EF1", Notion::EfX, Notion::Ef1},
    {"EFX", "AEFX", Notion::EfX, Notion::AEfX},
    {"AEFX", "PROPM", Notion::AEfX, Notion::PropM},
    {"PROP", "PROPX", Notion::Prop, Notion::PropX},
    {"PROPX", "PROPM", Notion::PropX, Notion::PropM},
    {"PROPM", "PROP1", Notion::PropM, Notion::Prop1},
    {"EFX", "PROPX", Notion::EfX, Notion::PropX},
    {"PROP", "MMS", Notion::Prop, Notion::Mms},
    {"ADJ", "PROPM", std::nullopt, Notion::PropM},
};

}  // namespace

ExistenceResult exists(const Instance& inst, Notion notion, const OracleOptions& options)
{
    AllocationEnumerator e(inst.agents(), inst.items(), options.budget);
    std::vector<Value> mms;
    if (notion == Notion::Mms) mms = maximin_shares(inst, options.budget);
    CheckOptions check_options{options.aefx_companion, options.budget, mms};

    std::vector<std::optional<std::uint64_t>> found(range_slots(e.count(), options.workers));
    for_each_range(e.count(), options.workers, [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
        auto owners = e.owners(begin);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            if (check(inst, Allocation::from_owners(owners, inst.agents()), notion, check_options).all_satisfied) {
                found[slot] = idx;
                return;
            }
            e.next(owners);
        }
    });

    ExistenceResult r;
    r.notion = notion;
    for (const auto& f : found)
        if (f) {
            r.exists = true;
            r.witness_index = *f;
            r.witness = e.at(*f);
            r.allocations_checked = *f + 1;
            return r;
        }
    r.allocations_checked = e.count();
    return r;
}

bool AuditReport::clean() const
{
    return std::all_of(implications.begin(), implications.end(),
                       [](const ImplicationResult& r) { return r.violations == 0; });
}

const ImplicationResult& AuditReport::find(const std::string& name) const
{
    for (const auto& r : implications)
        if (r.name() == name) return r;
    throw InputError("no implication named '" + name + "'");
}

AuditReport implication_audit(const Instance& inst, const OracleOptions& options, std::size_t max_examples)
{
    AllocationEnumerator e(inst.agents(), inst.items(), options.budget);
    const std::vector<Value> mms = maximin_shares(inst, options.budget);
    const std::size_t n = inst.agents();

    auto blank = [] {
        std::vector<ImplicationResult> out;
        for (const auto& rule : kRules) out.push_back({rule.premise, rule.conclusion, 0, 0, {}});
        return out;
    };
    std::vector<std::vector<ImplicationResult>> partial(range_slots(e.count(), options.workers), blank());

    for_each_range(e.count(), options.workers, [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
        auto& results = partial[slot];
        auto owners = e.owners(begin);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            Allocation x = Allocation::from_owners(owners, n);
            const AdjustedProfile adj = adjusted_profile(inst, x);
            for (std::size_t i = 0; i < n; ++i) {
                const AgentView view = agent_view(inst, x, i);
                auto holds = [&](Notion notion) {
                    return evaluate(view, notion, mms[i], options.aefx_companion).satisfied;
                };
                const bool adjusted = adj.values[i] * Rational(static_cast<Value>(n)) >= Rational(inst.total(i));
                for (std::size_t r = 0; r < std::size(kRules); ++r) {
                    const auto& rule = kRules[r];
                    if (!(rule.from ? holds(*rule.from) : adjusted)) continue;
                    ++results[r].premise_holds;
                    if (holds(rule.to)) continue;
                    ++results[r].violations;
                    if (results[r].examples.size() < max_examples) results[r].examples.push_back({idx, x, i});
                }
            }
            e.next(owners);
        }
    });

    AuditReport report;
    report.allocations_checked = e.count();
    report.implications = blank();
    for (std::size_t r = 0; r < std::size(kRules); ++r) {
        auto& merged = report.implications[r];
        for (const auto& slot : partial) {
            merged.premise_holds += slot[r].premise_holds;
            merged.violations += slot[r].violations;
            for (const auto& ex : slot[r].examples)
                if (merged.examples.size() < max_examples) merged.examples.push_back(ex);
        }
    }
    return report;
}

Instance make_counterexample(Value scale)
{
    if (scale < 7) throw InputError("counterexample scale must be at least 7");
    std::vector<Value> row{scale - 6, 1, 1, 1, 1, 1, 1};
    return Instance({row, row, row});
}

Instance random_instance(std::size_t agents, std::size_t items, Value max_value, std::uint64_t seed)
{
    if (agents == 0) throw InputError("random_instance: need at least one agent");
    if (max_value < 0) throw InputError("random_instance: max_value must be non-negative");
    std::mt19937_64 rng(seed);
    const auto modulus = static_cast<std::uint64_t>(max_value) + 1;
    std::vector<std::vector<Value>> rows(agents, std::vector<Value>(items));
    for (auto& row : rows)
        for (auto& v : row) v = static_cast<Value>(rng() % modulus);
    return Instance(std::move(rows));
}

}  // namespace propm
