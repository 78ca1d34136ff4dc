#include "propm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "propm/io.hpp"
#include "propm/kernels.hpp"

namespace propm::cli {

namespace {

using io::Json;

std::uint64_t default_budget()
{
    if (const char* env = std::getenv("PROPM_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError("PROPM_BUDGET must be a non-negative integer");
        }
    }
    return kDefaultBudget;
}

struct Options {
    std::string instance;
    std::string allocation;
    std::string notion = "propm";
    std::string output;
    std::string aefx_variant = "standard";
    std::uint64_t seed = 0;
    std::size_t n = 3;
    std::size_t m = 6;
    Value max_value = 100;
    Value scale = 100;
    std::optional<std::uint64_t> budget;
    std::size_t workers = 1;
    std::size_t repeat = 5;
    bool json = false;
    bool no_reduce = false;
    bool oracle_fallback = false;
};

std::string bundle_text(const Bundle& b)
{
    std::string s = "{";
    for (std::size_t j : b) s += (s.size() > 1 ? "," : "") + std::to_string(j);
    return s + "}";
}

void print_allocation(std::ostream& out, const Allocation& x)
{
    for (std::size_t i = 0; i < x.agents(); ++i) out << "  agent " << i << ": " << bundle_text(x[i]) << "\n";
}

void collect_lemmas(const Certificate& cert, std::vector<std::string>& out)
{
    for (const auto& step : cert.steps)
        if (const auto* c = std::get_if<CaseApplied>(&step)) out.push_back(c->lemma);
    for (const auto& child : cert.children) collect_lemmas(child, out);
}

class Commands {
public:
    Commands(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    Options opt;

    std::uint64_t budget() const { return opt.budget.value_or(default_budget()); }

    Instance instance() const
    {
        if (opt.instance.empty()) throw InputError("--instance is required");
        return io::instance_from_json(io::read_file(opt.instance));
    }

    void emit(const Json& doc)
    {
        if (!opt.output.empty()) {
            io::write_file(opt.output, doc);
            out_ << "wrote " << opt.output << "\n";
        } else {
            out_ << doc.dump(2) << "\n";
        }
    }

    int verify()
    {
        Instance inst = instance();
        if (opt.allocation.empty()) throw InputError("--allocation is required");
        Allocation x = io::allocation_from_json(io::read_file(opt.allocation));
        CheckOptions co;
        co.aefx_companion = companion();
        co.budget = budget();
        FairnessReport r = check(inst, x, parse_notion(opt.notion), co);
        if (opt.json) {
            out_ << io::to_json(r).dump(2) << "\n";
        } else {
            out_ << "notion " << notion_name(r.notion) << ": " << (r.all_satisfied ? "all satisfied" : "violated") << "\n";
            for (std::size_t i = 0; i < r.per_agent.size(); ++i)
                out_ << "  agent " << i << ": " << (r.per_agent[i].satisfied ? "ok  " : "FAIL") << "  slack "
                     << r.per_agent[i].slack.str() << "\n";
        }
        return r.all_satisfied ? kOk : kClaimFails;
    }

    int solve()
    {
        Instance inst = instance();
        Solution s;
        try {
            s = solve_propm(inst, SolveOptions{!opt.no_reduce});
        } catch (const InvariantViolation& e) {
            if (!opt.oracle_fallback) throw;
            err_ << "solver invariant violated: " << e.what() << "\n";
            OracleOptions oo;
            oo.budget = budget();
            ExistenceResult r = exists(inst, Notion::PropM, oo);
            out_ << "oracle diagnosis: PROPm allocation " << (r.exists ? "exists" : "does not exist") << "\n";
            if (r.witness) print_allocation(out_, *r.witness);
            return kClaimFails;
        }
        // Never print what our own checks reject.
        const bool propm_ok = check(inst, s.allocation, Notion::PropM).all_satisfied;
        const bool cert_ok = verify_certificate(inst, s.allocation, s.certificate);
        if (!propm_ok || !cert_ok) {
            err_ << "internal error: solver output failed re-verification\n";
            return kClaimFails;
        }
        Json doc{{"allocation", io::to_json(s.allocation)["bundles"]}, {"certificate", io::to_json(s.certificate)}};
        if (opt.json || !opt.output.empty()) {
            emit(doc);
        } else {
            std::vector<std::string> lemmas;
            collect_lemmas(s.certificate, lemmas);
            out_ << "PROPm allocation:\n";
            print_allocation(out_, s.allocation);
            out_ << "lemmas applied:";
            for (const auto& l : lemmas) out_ << " " << l;
            if (lemmas.empty()) out_ << " (none)";
            out_ << "\ncertificate: verified\n";
        }
        return kOk;
    }

    int exists_cmd()
    {
        Instance inst = instance();
        ExistenceResult r = exists(inst, parse_notion(opt.notion), oracle_options());
        if (opt.json) {
            out_ << io::to_json(r).dump(2) << "\n";
        } else {
            out_ << notion_name(r.notion) << ": " << (r.exists ? "exists" : "does not exist") << " ("
                 << r.allocations_checked << " allocations checked)\n";
            if (r.witness) print_allocation(out_, *r.witness);
        }
        return r.exists ? kOk : kClaimFails;
    }

    int audit()
    {
        Instance inst = instance();
        AuditReport r = implication_audit(inst, oracle_options());
        if (opt.json) {
            out_ << io::to_json(r).dump(2) << "\n";
        } else {
            out_ << r.allocations_checked << " allocations audited\n";
            for (const auto& imp : r.implications)
                out_ << "  " << std::left << std::setw(16) << imp.name() << " premise held " << std::setw(8)
                     << imp.premise_holds << " violations " << imp.violations << "\n";
        }
        return r.clean() ? kOk : kClaimFails;
    }

    int leximin()
    {
        Instance inst = instance();
        LeximinResult r = leximin_max(inst, budget(), opt.workers);
        EnvyGraph g = envy_graph(inst, r.allocation);
        const bool acyclic = !find_cycle(g).has_value();
        CheckOptions co;
        co.aefx_companion = companion();
        const bool aefx = check(inst, r.allocation, Notion::AEfX, co).all_satisfied;
        if (opt.json) {
            out_ << Json{{"allocation", io::to_json(r.allocation)["bundles"]},
                         {"profile", io::to_json(r.profile)},
                         {"envy_graph", io::to_json(g)},
                         {"acyclic", acyclic},
                         {"aefx", aefx},
                         {"allocations_checked", r.allocations_checked}}
                        .dump(2)
                 << "\n";
        } else {
            out_ << "leximin-max allocation (" << r.allocations_checked << " allocations):\n";
            print_allocation(out_, r.allocation);
            out_ << "adjusted values:";
            for (const auto& v : r.profile.values) out_ << " " << v.str();
            out_ << "\nEFx envy graph: " << g.edge_count() << " edges, " << (acyclic ? "acyclic" : "has a cycle") << "\n";
            out_ << "a-EFx (experiment): " << (aefx ? "satisfied" : "violated") << "\n";
        }
        return acyclic ? kOk : kClaimFails;
    }

    int gen()
    {
        emit(io::to_json(random_instance(opt.n, opt.m, opt.max_value, opt.seed)));
        return kOk;
    }

    int counterexample()
    {
        emit(io::to_json(make_counterexample(opt.scale)));
        return kOk;
    }

    int bench()
    {
        out_ << std::left << std::setw(6) << "m" << std::setw(10) << "total" << std::setw(8) << "k" << std::setw(8)
             << "isa" << "microseconds\n";
        for (std::size_t m = std::max<std::size_t>(opt.m, 1); m <= std::max<std::size_t>(opt.m, 1) * 4; m *= 2) {
            Instance inst = random_instance(1, m, opt.max_value, opt.seed);
            for (auto isa : kernels::available_isas()) {
                CpOptions co;
                co.isa = isa;
                Bundle all = Bundle::range(m);
                auto start = std::chrono::steady_clock::now();
                for (std::size_t r = 0; r < opt.repeat; ++r) cp_bundle(inst, 0, 2, all, co);
                auto us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count() /
                          static_cast<double>(std::max<std::size_t>(opt.repeat, 1));
                out_ << std::setw(6) << m << std::setw(10) << inst.total(0) << std::setw(8) << 2 << std::setw(8)
                     << kernels::isa_name(isa) << std::fixed << std::setprecision(1) << us << "\n";
            }
        }
        return kOk;
    }

private:
    bool companion() const
    {
        if (opt.aefx_variant == "standard") return false;
        if (opt.aefx_variant == "companion") return true;
        throw InputError("--aefx-variant must be 'standard' or 'companion'");
    }

    OracleOptions oracle_options() const
    {
        OracleOptions oo;
        oo.budget = budget();
        oo.workers = std::max<std::size_t>(opt.workers, 1);
        oo.aefx_companion = companion();
        return oo;
    }

    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Commands cmd(out, err);
    auto& o = cmd.opt;

    CLI::App app{"Exact PROPm verification, construction and oracle toolkit", "propm"};
    app.require_subcommand(1);
    auto budget_flag = [&](CLI::App* sub) {
        sub->add_option("--budget", o.budget, "Enumeration budget (default: $PROPM_BUDGET or 10000000)");
    };
    auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Machine-readable output"); };
    auto variant_flag = [&](CLI::App* sub) {
        sub->add_option("--aefx-variant", o.aefx_variant, "a-EFx definition: standard or companion (experimental)");
    };

    auto* verify = app.add_subcommand("verify", "Check an allocation against a fairness notion");
    verify->add_option("--instance", o.instance)->required();
    verify->add_option("--allocation", o.allocation)->required();
    verify->add_option("--notion", o.notion);
    variant_flag(verify);
    budget_flag(verify);
    json_flag(verify);

    auto* solve = app.add_subcommand("solve", "Construct a PROPm allocation with a certificate");
    solve->add_option("--instance", o.instance)->required();
    solve->add_flag("--no-reduce", o.no_reduce, "Skip top-level big-item reductions");
    solve->add_flag("--oracle-fallback", o.oracle_fallback, "On an internal case failure, report the oracle's answer");
    solve->add_option("--output", o.output, "Write allocation and certificate JSON to a file");
    budget_flag(solve);
    json_flag(solve);

    auto* ex = app.add_subcommand("exists", "Decide by enumeration whether an allocation satisfies a notion");
    ex->add_option("--instance", o.instance)->required();
    ex->add_option("--notion", o.notion);
    ex->add_option("--workers", o.workers);
    variant_flag(ex);
    budget_flag(ex);
    json_flag(ex);

    auto* audit = app.add_subcommand("audit", "Check the implication chain over every allocation");
    audit->add_option("--instance", o.instance)->required();
    audit->add_option("--workers", o.workers);
    variant_flag(audit);
    budget_flag(audit);
    json_flag(audit);

    auto* lex = app.add_subcommand("leximin", "Leximin-max allocation of adjusted values and its envy graph");
    lex->add_option("--instance", o.instance)->required();
    lex->add_option("--workers", o.workers);
    variant_flag(lex);
    budget_flag(lex);
    json_flag(lex);

    auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
    gen->add_option("--n", o.n);
    gen->add_option("--m", o.m);
    gen->add_option("--max-value", o.max_value);
    gen->add_option("--seed", o.seed);
    gen->add_option("--output", o.output);

    auto* ce = app.add_subcommand("counterexample", "Seven-item, three-agent instance [scale-6, 1 x 6]");
    ce->add_option("--scale", o.scale);
    ce->add_option("--output", o.output);

    auto* bench = app.add_subcommand("bench", "Time CP bundle search per kernel variant");
    bench->add_option("--m", o.m, "Smallest item count (doubled twice)");
    bench->add_option("--max-value", o.max_value);
    bench->add_option("--seed", o.seed);
    bench->add_option("--repeat", o.repeat);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (*verify) return cmd.verify();
        if (*solve) return cmd.solve();
        if (*ex) return cmd.exists_cmd();
        if (*audit) return cmd.audit();
        if (*lex) return cmd.leximin();
        if (*gen) return cmd.gen();
        if (*ce) return cmd.counterexample();
        if (*bench) return cmd.bench();
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const UnsupportedSize& e) {
        err << "unsupported: " << e.what() << "\n";
        return kInputError;
    } catch (const ResourceError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudgetExceeded;
    }
    return kInputError;
}

}  // namespace propm::cli
