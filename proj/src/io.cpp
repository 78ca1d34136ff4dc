#include "propm/io.hpp"

#include <fstream>
#include <sstream>

namespace propm::io {

namespace {

template <class T>
T field(const Json& doc, const char* key)
{
    if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("field '") + key + "': " + e.what());
    }
}

Bundle bundle_from_json(const Json& doc)
{
    if (!doc.is_array()) throw InputError("a bundle must be an array of item indices");
    std::vector<std::size_t> items;
    for (const auto& x : doc) {
        if (!x.is_number_integer() || x.get<long long>() < 0) throw InputError("item indices must be non-negative integers");
        items.push_back(x.get<std::size_t>());
    }
    return Bundle(std::move(items));
}

Json strings(const std::vector<Rational>& values)
{
    Json out = Json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

const char* basis_name(Basis b)
{
    switch (b) {
    case Basis::Proportional: return "proportional";
    case Basis::DividerRung: return "divider-rung";
    case Basis::Sole: return "sole";
    }
    return "?";
}

Basis parse_basis(const std::string& s)
{
    if (s == "proportional") return Basis::Proportional;
    if (s == "divider-rung") return Basis::DividerRung;
    if (s == "sole") return Basis::Sole;
    throw InputError("unknown assignment basis '" + s + "'");
}

Json check_json(const ThresholdCheck& c)
{
    return Json{{"agent", c.agent},
                {"label", c.label},
                {"items", to_json(c.items)},
                {"relation", c.relation == Relation::AtLeast ? ">=" : "<"},
                {"fraction", std::to_string(c.numerator) + "/" + std::to_string(c.denominator)},
                {"value", c.value},
                {"total", c.total}};
}

ThresholdCheck check_from_json(const Json& doc)
{
    ThresholdCheck c;
    c.agent = field<std::size_t>(doc, "agent");
    c.label = field<std::string>(doc, "label");
    c.items = bundle_from_json(field<Json>(doc, "items"));
    auto rel = field<std::string>(doc, "relation");
    if (rel != ">=" && rel != "<") throw InputError("relation must be '>=' or '<'");
    c.relation = rel == ">=" ? Relation::AtLeast : Relation::Below;
    auto frac = field<std::string>(doc, "fraction");
    auto slash = frac.find('/');
    if (slash == std::string::npos) throw InputError("fraction must be 'p/q'");
    try {
        c.numerator = std::stoll(frac.substr(0, slash));
        c.denominator = std::stoll(frac.substr(slash + 1));
    } catch (const std::exception&) {
        throw InputError("fraction must be 'p/q'");
    }
    c.value = field<Value>(doc, "value");
    c.total = field<Value>(doc, "total");
    return c;
}

}  // namespace

Json parse(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

Json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void write_file(const std::string& path, const Json& doc)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

Instance instance_from_json(const Json& doc)
{
    auto n = field<long long>(doc, "n");
    auto m = field<long long>(doc, "m");
    auto rows = field<std::vector<std::vector<Value>>>(doc, "values");
    if (n < 1 || m < 0) throw InputError("instance needs n >= 1 and m >= 0");
    if (rows.size() != static_cast<std::size_t>(n)) throw InputError("'values' must have n rows");
    for (const auto& r : rows)
        if (r.size() != static_cast<std::size_t>(m)) throw InputError("every row of 'values' must have m entries");
    return Instance(std::move(rows));
}

Json to_json(const Instance& inst)
{
    return Json{{"n", inst.agents()}, {"m", inst.items()}, {"values", inst.rows()}};
}

Allocation allocation_from_json(const Json& doc)
{
    if (!doc.is_object() || !doc.contains("bundles") || !doc.at("bundles").is_array())
        throw InputError("allocation needs a 'bundles' array");
    std::vector<Bundle> bundles;
    for (const auto& b : doc.at("bundles")) bundles.push_back(bundle_from_json(b));
    return Allocation(std::move(bundles));
}

Json to_json(const Bundle& bundle)
{
    return Json(std::vector<std::size_t>(bundle.begin(), bundle.end()));
}

Json to_json(const Allocation& allocation)
{
    Json bundles = Json::array();
    for (const auto& b : allocation.bundles()) bundles.push_back(to_json(b));
    return Json{{"bundles", bundles}};
}

Json to_json(const FairnessReport& report)
{
    Json agents = Json::array();
    for (const auto& v : report.per_agent) agents.push_back({{"satisfied", v.satisfied}, {"slack", v.slack.str()}});
    return Json{{"notion", std::string(notion_name(report.notion))},
                {"all_satisfied", report.all_satisfied},
                {"per_agent", agents}};
}

Json to_json(const CpLadder& ladder)
{
    Json rungs = Json::array();
    for (const auto& r : ladder.rungs) rungs.push_back(to_json(r));
    return Json{{"divider", ladder.divider}, {"rungs", rungs}};
}

Json to_json(const Certificate& cert)
{
    Json steps = Json::array();
    for (const auto& step : cert.steps) {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, BigItemReduction>) {
                    steps.push_back({{"step", "big-item"}, {"agent", s.agent}, {"item", s.item}});
                } else if constexpr (std::is_same_v<T, LadderBuilt>) {
                    Json rungs = Json::array();
                    for (const auto& r : s.rungs) rungs.push_back(to_json(r));
                    steps.push_back({{"step", "ladder"}, {"divider", s.divider}, {"names", s.names}, {"rungs", rungs}});
                } else if constexpr (std::is_same_v<T, CaseApplied>) {
                    Json roles = Json::array();
                    for (const auto& [role, agent] : s.roles) roles.push_back({{"role", role}, {"agent", agent}});
                    Json checks = Json::array();
                    for (const auto& c : s.checks) checks.push_back(check_json(c));
                    steps.push_back({{"step", "case"},
                                     {"agents", s.agents},
                                     {"lemma", s.lemma},
                                     {"roles", roles},
                                     {"checks", checks}});
                } else if constexpr (std::is_same_v<T, Assignment>) {
                    Json a{{"step", "assign"}, {"agent", s.agent}, {"items", to_json(s.items)}, {"basis", basis_name(s.basis)}};
                    if (s.basis == Basis::DividerRung) a["rung"] = s.rung;
                    steps.push_back(a);
                } else {
                    steps.push_back({{"step", "split"},
                                     {"agents", s.agents},
                                     {"items", to_json(s.items)},
                                     {"child", s.child}});
                }
            },
            step);
    }
    Json children = Json::array();
    for (const auto& c : cert.children) children.push_back(to_json(c));
    return Json{{"agents", cert.agents}, {"items", cert.items}, {"steps", steps}, {"children", children}};
}

Certificate certificate_from_json(const Json& doc)
{
    Certificate cert;
    cert.agents = field<std::size_t>(doc, "agents");
    cert.items = field<std::size_t>(doc, "items");
    for (const auto& s : field<Json>(doc, "steps")) {
        const auto kind = field<std::string>(s, "step");
        if (kind == "big-item") {
            cert.steps.push_back(BigItemReduction{field<std::size_t>(s, "agent"), field<std::size_t>(s, "item")});
        } else if (kind == "ladder") {
            LadderBuilt l;
            l.divider = field<std::size_t>(s, "divider");
            l.names = field<std::vector<std::string>>(s, "names");
            for (const auto& r : field<Json>(s, "rungs")) l.rungs.push_back(bundle_from_json(r));
            cert.steps.push_back(std::move(l));
        } else if (kind == "case") {
            CaseApplied c;
            c.agents = field<std::size_t>(s, "agents");
            c.lemma = field<std::string>(s, "lemma");
            for (const auto& r : field<Json>(s, "roles"))
                c.roles.emplace_back(field<std::string>(r, "role"), field<std::size_t>(r, "agent"));
            for (const auto& t : field<Json>(s, "checks")) c.checks.push_back(check_from_json(t));
            cert.steps.push_back(std::move(c));
        } else if (kind == "assign") {
            Assignment a;
            a.agent = field<std::size_t>(s, "agent");
            a.items = bundle_from_json(field<Json>(s, "items"));
            a.basis = parse_basis(field<std::string>(s, "basis"));
            if (a.basis == Basis::DividerRung) a.rung = field<std::string>(s, "rung");
            cert.steps.push_back(std::move(a));
        } else if (kind == "split") {
            SubSplit p;
            p.agents = field<std::vector<std::size_t>>(s, "agents");
            p.items = bundle_from_json(field<Json>(s, "items"));
            p.child = field<std::size_t>(s, "child");
            cert.steps.push_back(std::move(p));
        } else {
            throw InputError("unknown certificate step '" + kind + "'");
        }
    }
    for (const auto& c : field<Json>(doc, "children")) cert.children.push_back(certificate_from_json(c));
    return cert;
}

Json to_json(const ExistenceResult& r)
{
    Json out{{"notion", std::string(notion_name(r.notion))},
             {"exists", r.exists},
             {"allocations_checked", r.allocations_checked}};
    if (r.witness) {
        out["witness"] = to_json(*r.witness)["bundles"];
        out["witness_index"] = *r.witness_index;
    }
    return out;
}

Json to_json(const AuditReport& report)
{
    Json list = Json::array();
    for (const auto& r : report.implications) {
        Json examples = Json::array();
        for (const auto& e : r.examples)
            examples.push_back({{"index", e.index}, {"agent", e.agent}, {"bundles", to_json(e.allocation)["bundles"]}});
        list.push_back({{"implication", r.name()},
                        {"premise_holds", r.premise_holds},
                        {"violations", r.violations},
                        {"examples", examples}});
    }
    return Json{{"allocations_checked", report.allocations_checked}, {"clean", report.clean()}, {"implications", list}};
}

Json to_json(const AdjustedProfile& p)
{
    return Json{{"values", strings(p.values)}, {"shares", strings(p.shares)}, {"sorted_shares", strings(p.sorted)}};
}

Json to_json(const EnvyGraph& g)
{
    Json edges = Json::array();
    for (std::size_t i = 0; i < g.out.size(); ++i)
        for (std::size_t j : g.out[i]) edges.push_back({i, j});
    return Json{{"agents", g.agents}, {"edges", edges}};
}

}  // namespace propm::io
