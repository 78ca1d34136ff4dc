// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mutations.hpp"
#include "oracles.hpp"
#include "propm/cpsets.hpp"
#include "propm/enumerate.hpp"
#include "propm/fairness.hpp"
#include "propm/leximin.hpp"
#include "propm/oracle.hpp"
#include "propm/solver.hpp"

using namespace propm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::size_t workers()
{
    return std::max<std::size_t>(1, std::min<std::size_t>(8, std::thread::hardware_concurrency()));
}

struct Solved {
    Instance inst;
    Solution solution;
};

// Criterion 1 output, reused by 5 and 8.
std::vector<Solved> g_solved;

Outcome solver_totality()
{
    Outcome o;
    std::size_t failures = 0, total = 0;
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t m = n; m <= 10; ++m)
            for (std::uint64_t s = 0; s < 500; ++s) {
                ++total;
                Instance inst = random_instance(n, m, 100, (n * 100 + m) * 1000 + s);
                try {
                    Solution sol = solve_propm(inst);
                    if (!check(inst, sol.allocation, Notion::PropM).all_satisfied) {
                        ++failures;
                        continue;
                    }
                    g_solved.push_back({std::move(inst), std::move(sol)});
                } catch (const std::exception& e) {
                    ++failures;
                    if (o.detail.empty()) o.detail = std::string("first error: ") + e.what() + "; ";
                }
            }
    o.pass = failures == 0;
    o.detail += std::to_string(total) + " instances, " + std::to_string(failures) + " failures";
    return o;
}

Outcome counterexample()
{
    Outcome o;
    std::ostringstream d;
    OracleOptions opts;
    opts.workers = workers();
    for (Value scale : {13, 100, 1000}) {
        Instance inst = make_counterexample(scale);
        d << "scale " << scale << ":";
        for (Notion alt : {Notion::AltMean, Notion::AltMedian, Notion::AltMode, Notion::AltMinimax}) {
            auto r = exists(inst, alt, opts);
            if (r.exists) {
                o.pass = false;
                d << " " << notion_name(alt) << " EXISTS (index " << *r.witness_index << ")";
            }
        }
        auto pm = exists(inst, Notion::PropM, opts);
        if (!pm.exists) o.pass = false;
        d << " propm " << (pm.exists ? "exists" : "MISSING") << "; ";
    }
    o.detail = d.str();
    return o;
}

std::vector<AuditReport> g_audits;

const char* const kChain[] = {"EF => EFX",     "EFX => EF1",     "EFX => AEFX",    "AEFX => PROPM",
                              "PROP => PROPX", "PROPX => PROPM", "PROPM => PROP1", "EFX => PROPX"};

Outcome implication_chain()
{
    OracleOptions opts;
    opts.workers = workers();
    for (std::uint64_t idx = 0; idx < 50; ++idx)
        g_audits.push_back(implication_audit(random_instance(3, 1 + idx % 6, 10, idx), opts));
    for (std::uint64_t idx = 0; idx < 20; ++idx)
        g_audits.push_back(implication_audit(random_instance(4, 1 + idx % 5, 10, idx), opts));

    Outcome o;
    std::ostringstream d;
    std::uint64_t allocations = 0;
    for (const auto& a : g_audits) allocations += a.allocations_checked;
    d << g_audits.size() << " instances, " << allocations << " allocations;";
    for (const char* name : kChain) {
        std::uint64_t v = 0;
        for (const auto& a : g_audits) v += a.find(name).violations;
        if (v != 0) {
            o.pass = false;
            d << " " << name << ": " << v << " violations;";
        }
    }
    if (o.pass) d << " no violations";
    o.detail = d.str();
    return o;
}

Outcome cp_brute_force()
{
    std::mt19937_64 rng(4);
    std::size_t mismatches = 0;
    std::vector<CpOptions> configs;
    for (auto isa : kernels::available_isas()) configs.push_back(CpOptions{isa, std::uint64_t{1} << 24});
    configs.push_back(CpOptions{std::nullopt, 1});
    for (int t = 0; t < 200; ++t) {
        std::size_t m = rng() % 15;
        Instance inst = random_instance(1, m, t % 2 ? 100 : 10, rng());
        std::size_t k = 1 + rng() % 5;
        std::vector<std::size_t> all(m);
        for (std::size_t j = 0; j < m; ++j) all[j] = j;
        auto row = inst.row(0);
        Bundle want = oracles::cp({row.begin(), row.end()}, k, all);
        for (const auto& c : configs)
            if (cp_bundle(inst, 0, k, Bundle::range(m), c) != want) ++mismatches;
    }
    return {mismatches == 0, "200 lists x " + std::to_string(configs.size()) + " search paths, " +
                                 std::to_string(mismatches) + " mismatches"};
}

struct LadderTally {
    std::size_t ladders = 0, invalid = 0, metabundles = 0, metabundle_failures = 0;
};

void walk_ladders(const Instance& inst, const Certificate& cert, LadderTally& t)
{
    for (const auto& step : cert.steps) {
        if (const auto* l = std::get_if<LadderBuilt>(&step)) {
            ++t.ladders;
            CpLadder ladder{l->divider, l->rungs};
            if (!validate_ladder(inst, ladder)) ++t.invalid;
            auto rung = [&](char name) {
                for (std::size_t k = 0; k < l->names.size(); ++k)
                    if (l->names[k][0] == name) return l->rungs[k];
                return Bundle{};
            };
            const Value total = value_of(inst, l->divider, ladder.items());
            if (l->rungs.size() == 4) {
                ++t.metabundles;
                if (!at_least_fraction(value_of(inst, l->divider, rung('A').united(rung('D'))), total, 1, 2))
                    ++t.metabundle_failures;
            } else if (l->rungs.size() == 5) {
                ++t.metabundles;
                if (!at_least_fraction(value_of(inst, l->divider, rung('A').united(rung('E'))), total, 2, 5))
                    ++t.metabundle_failures;
            }
        } else if (const auto* s = std::get_if<SubSplit>(&step)) {
            Restriction sub = restrict(inst, s->agents, s->items);
            walk_ladders(sub.instance, cert.children[s->child], t);
        }
    }
}

Outcome ladder_bounds()
{
    LadderTally t;
    for (const auto& s : g_solved) walk_ladders(s.inst, s.solution.certificate, t);
    return {t.ladders > 0 && t.invalid == 0 && t.metabundle_failures == 0,
            std::to_string(t.ladders) + " ladders, " + std::to_string(t.invalid) + " invalid; " +
                std::to_string(t.metabundles) + " metabundle checks, " + std::to_string(t.metabundle_failures) +
                " failures"};
}

Outcome leximin_acyclic()
{
    std::size_t cyclic_maxima = 0, swaps = 0, non_dominating = 0;
    for (std::uint64_t idx = 0; idx < 100; ++idx) {
        Instance inst = random_instance(3, 1 + idx % 5, 6, idx);
        auto best = leximin_max(inst, kDefaultBudget, 1);
        if (find_cycle(envy_graph(inst, best.allocation))) ++cyclic_maxima;
        AllocationEnumerator e(3, inst.items());
        for (std::uint64_t a = 0; a < e.count(); ++a) {
            Allocation x = e.at(a);
            auto y = cycle_swap(inst, x);
            if (!y) continue;
            ++swaps;
            if (leximin_compare(adjusted_profile(inst, *y), adjusted_profile(inst, x)) <= 0) ++non_dominating;
        }
    }
    return {cyclic_maxima == 0 && non_dominating == 0,
            "100 samples, " + std::to_string(cyclic_maxima) + " leximin maxima with a cycle; " +
                std::to_string(swaps) + " cycle swaps, " + std::to_string(non_dominating) +
                " not strictly leximin-better"};
}

Outcome adjusted_sufficiency()
{
    std::uint64_t holds = 0, violations = 0;
    for (const auto& a : g_audits) {
        const auto& r = a.find("ADJ => PROPM");
        holds += r.premise_holds;
        violations += r.violations;
    }
    return {violations == 0, std::to_string(holds) + " agent-allocation pairs with the premise, " +
                                 std::to_string(violations) + " violations"};
}

Outcome certificate_audit()
{
    std::size_t rejected_valid = 0;
    for (const auto& s : g_solved)
        if (!verify_certificate(s.inst, s.solution.allocation, s.solution.certificate)) ++rejected_valid;

    std::mt19937_64 rng(8);
    std::size_t applied = 0, caught = 0;
    std::vector<std::string> escaped;
    constexpr std::size_t kKinds = std::size(mutations::kAllKinds);
    for (std::size_t t = 0; applied < 100 && t < 100000; ++t) {
        auto kind = mutations::kAllKinds[applied % kKinds];
        const auto& s = g_solved[rng() % g_solved.size()];
        Certificate c = s.solution.certificate;
        if (!mutations::mutate(c, kind, rng)) continue;
        ++applied;
        if (!verify_certificate(s.inst, s.solution.allocation, c)) ++caught;
        else escaped.emplace_back(mutations::kind_name(kind));
    }
    std::string detail = std::to_string(g_solved.size()) + " certificates, " + std::to_string(rejected_valid) +
                         " wrongly rejected; " + std::to_string(caught) + "/" + std::to_string(applied) +
                         " mutations rejected";
    for (const auto& e : escaped) detail += " [escaped: " + e + "]";
    return {rejected_valid == 0 && applied == 100 && caught == applied, detail};
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"1 solver totality", solver_totality},
        {"2 counterexample reproduction", counterexample},
        {"3 implication chain", implication_chain},
        {"4 CP bundle vs brute force", cp_brute_force},
        {"5 ladder bounds and metabundles", ladder_bounds},
        {"6 leximin-max acyclicity", leximin_acyclic},
        {"7 adjusted-value sufficiency", adjusted_sufficiency},
        {"8 certificate audit", certificate_audit},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %-34s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria failed\n", failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
