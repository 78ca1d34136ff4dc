#include "propm/solver.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "propm/cpsets.hpp"
#include "propm/fairness.hpp"

namespace propm {

namespace {

std::string union_label(std::string_view names)
{
    std::string out;
    for (char c : names) {
        if (!out.empty()) out += "∪";
        out += c;
    }
    return out;
}

// Mutable state of one certificate node: the active (unreduced) agents and
// items, the ladder, pending threshold checks and the bundles built so far.
class Node {
public:
    explicit Node(const Instance& inst) : inst_(inst), bundles_(inst.agents())
    {
        cert_.agents = inst.agents();
        cert_.items = inst.items();
        for (std::size_t i = 0; i < inst.agents(); ++i) active_.push_back(i);
        items_ = Bundle::range(inst.items());
    }

    const Instance& instance() const { return inst_; }
    const std::vector<std::size_t>& active() const { return active_; }
    const Bundle& items() const { return items_; }
    std::size_t divider() const { return active_.front(); }
    const std::vector<Step>& steps() const { return cert_.steps; }

    std::vector<std::size_t> others() const { return {active_.begin() + 1, active_.end()}; }

    Value residual_total(std::size_t agent) const { return value_of(inst_, agent, items_); }

    std::optional<std::pair<std::size_t, std::size_t>> find_big() const
    {
        const auto n = static_cast<Value>(active_.size());
        for (std::size_t i : active_) {
            const Value total = residual_total(i);
            for (std::size_t j : items_)
                if (n * inst_.value(i, j) > total) return std::pair{i, j};
        }
        return std::nullopt;
    }

    void reduce()
    {
        while (auto big = find_big()) {
            auto [i, j] = *big;
            cert_.steps.push_back(BigItemReduction{i, j});
            bundles_[i] = Bundle{j};
            active_.erase(std::find(active_.begin(), active_.end(), i));
            items_ = items_.without(Bundle{j});
        }
    }

    void build_ladder(std::span<const std::string_view> names)
    {
        CpLadder ladder = cp_ladder(inst_, divider(), active_.size(), items_);
        LadderBuilt step;
        step.divider = divider();
        for (std::size_t r = 0; r < names.size(); ++r) {
            rungs_[names[r][0]] = ladder.rungs[r];
            step.names.emplace_back(names[r]);
            step.rungs.push_back(ladder.rungs[r]);
        }
        cert_.steps.push_back(std::move(step));
    }

    /// Union of the named rungs, e.g. rungs("ABE").
    Bundle rungs(std::string_view names) const
    {
        Bundle out;
        for (char c : names) out = out.united(rungs_.at(c));
        return out;
    }

    Value value(std::size_t agent, std::string_view names) const { return value_of(inst_, agent, rungs(names)); }

    /// Records whether v(names) >= p/q of the residual total and returns the verdict.
    bool probe(std::size_t agent, std::string_view names, Value p, Value q)
    {
        ThresholdCheck c;
        c.agent = agent;
        c.label = union_label(names);
        c.items = rungs(names);
        c.numerator = p;
        c.denominator = q;
        c.value = value_of(inst_, agent, c.items);
        c.total = residual_total(agent);
        const bool holds = at_least_fraction(c.value, c.total, p, q);
        c.relation = holds ? Relation::AtLeast : Relation::Below;
        checks_.push_back(std::move(c));
        return holds;
    }

    void apply(std::string lemma, std::vector<std::pair<std::string, std::size_t>> roles)
    {
        CaseApplied step;
        step.agents = active_.size();
        step.lemma = std::move(lemma);
        step.roles = std::move(roles);
        step.checks = std::move(checks_);
        checks_.clear();
        cert_.steps.push_back(std::move(step));
    }

    void give(std::size_t agent, std::string_view names)
    {
        Bundle items = rungs(names);
        Basis basis = Basis::Proportional;
        std::string rung;
        if (agent == divider() && names.size() == 1) {
            basis = Basis::DividerRung;
            rung = std::string(names);
        }
        bundles_[agent] = items;
        cert_.steps.push_back(Assignment{agent, std::move(items), basis, std::move(rung)});
    }

    void give_sole()
    {
        bundles_[active_.front()] = items_;
        cert_.steps.push_back(Assignment{active_.front(), items_, Basis::Sole, {}});
    }

    void split(std::vector<std::size_t> group, std::string_view names)
    {
        std::sort(group.begin(), group.end());
        Bundle items = rungs(names);
        Restriction sub = restrict(inst_, group, items);
        Solution child = solve_propm(sub.instance);
        auto lifted = sub.lift(child.allocation);
        for (std::size_t k = 0; k < group.size(); ++k) bundles_[group[k]] = lifted[k];
        cert_.steps.push_back(SubSplit{group, items, cert_.children.size()});
        cert_.children.push_back(std::move(child.certificate));
    }

    /// Bundle name among candidates with the largest value for agent; earlier names win ties.
    char favorite(std::size_t agent, std::string_view candidates) const
    {
        char best = candidates.front();
        for (char c : candidates)
            if (value(agent, std::string_view(&c, 1)) > value(agent, std::string_view(&best, 1))) best = c;
        return best;
    }

    Solution finish()
    {
        Allocation x(bundles_);
        if (!check(inst_, x, Notion::PropM).all_satisfied)
            throw InvariantViolation("solver produced an allocation that is not PROPm");
        return {std::move(x), std::move(cert_)};
    }

private:
    const Instance& inst_;
    Certificate cert_;
    std::vector<Bundle> bundles_;
    std::vector<std::size_t> active_;
    Bundle items_;
    std::map<char, Bundle> rungs_;
    std::vector<ThresholdCheck> checks_;
};

constexpr std::string_view kNames2[] = {"A", "B"};
constexpr std::string_view kNames3[] = {"B", "A", "C"};
constexpr std::string_view kNames4[] = {"C", "B", "A", "D"};
constexpr std::string_view kNames5[] = {"D", "C", "B", "A", "E"};

std::string one(char c) { return std::string(1, c); }

/// First assignment of distinct bundles (tried in the given order) to the two
/// agents such that each likes its bundle at 1/q.
std::optional<std::pair<char, char>> match_pair(Node& node, std::size_t p, std::size_t q, std::string_view names,
                                                Value den)
{
    const Instance& inst = node.instance();
    auto likes = [&](std::size_t a, char c) {
        return at_least_fraction(value_of(inst, a, node.rungs(std::string_view(&c, 1))), node.residual_total(a), 1, den);
    };
    for (char x : names)
        for (char y : names)
            if (x != y && likes(p, x) && likes(q, y)) return std::pair{x, y};
    return std::nullopt;
}

void case2(Node& node)
{
    node.build_ladder(kNames2);
    const std::size_t d = node.divider(), c = node.others()[0];
    node.probe(c, "A", 1, 2);
    node.probe(c, "B", 1, 2);
    const bool takes_a = node.value(c, "A") >= node.value(c, "B");
    node.apply("n2.cut-and-choose", {{"divider", d}, {"chooser", c}});
    node.give(c, takes_a ? "A" : "B");
    node.give(d, takes_a ? "B" : "A");
}

void case3(Node& node)
{
    node.build_ladder(kNames3);
    const std::size_t d = node.divider();
    const auto o = node.others();
    std::string liked;
    for (std::size_t a : o)
        for (char x : std::string_view("ABC"))
            if (node.probe(a, one(x), 1, 3) && liked.find(x) == std::string::npos) liked += x;

    if (liked.size() >= 2) {
        auto m = match_pair(node, o[0], o[1], "ABC", 3);
        if (!m) throw InvariantViolation("n3: no matching of liked bundles");
        std::string rest = "ABC";
        std::erase(rest, m->first);
        std::erase(rest, m->second);
        node.apply("n3.two-bundles", {{"divider", d}, {"first", o[0]}, {"second", o[1]}});
        node.give(o[0], one(m->first));
        node.give(o[1], one(m->second));
        node.give(d, rest);
    } else if (liked == "A" || liked == "B") {
        node.apply("n3.one-bundle/AB", {{"divider", d}, {"first", o[0]}, {"second", o[1]}});
        node.give(d, "C");
        node.split(o, "AB");
    } else if (liked == "C") {
        node.apply("n3.one-bundle/C", {{"divider", d}, {"first", o[0]}, {"second", o[1]}});
        node.give(d, "B");
        node.split(o, "AC");
    } else {
        throw InvariantViolation("n3: no agent likes any bundle");
    }
}

void case4(Node& node)
{
    node.build_ladder(kNames4);
    const std::size_t d = node.divider();
    const auto o = node.others();
    std::vector<std::size_t> high, low;
    for (std::size_t a : o) (node.probe(a, "AD", 1, 2) ? high : low).push_back(a);

    switch (high.size()) {
    case 0: {
        std::optional<std::size_t> k;
        for (std::size_t a : o)
            if (node.probe(a, "D", 1, 4) && !k) k = a;
        if (k) {
            std::vector<std::size_t> rest;
            for (std::size_t a : o)
                if (a != *k) rest.push_back(a);
            node.apply("n4.c=0/D-to-other", {{"divider", d}, {"recipient", *k}});
            node.give(*k, "D");
            node.give(d, "A");
            node.split(rest, "BC");
        } else {
            node.apply("n4.c=0/D-to-divider", {{"divider", d}});
            node.give(d, "D");
            node.split(o, "ABC");
        }
        return;
    }
    case 1:
        node.apply("n4.c=1", {{"divider", d}, {"high", high[0]}});
        node.split({d, high[0]}, "AD");
        node.split(low, "BC");
        return;
    case 2: {
        const std::size_t l = low[0];
        node.probe(l, "B", 1, 4);
        node.probe(l, "C", 1, 4);
        const char fav = node.favorite(l, "BC");
        node.apply("n4.c=2", {{"divider", d}, {"low", l}});
        node.give(l, one(fav));
        node.give(d, fav == 'B' ? "C" : "B");
        node.split(high, "AD");
        return;
    }
    case 3: {
        std::optional<std::size_t> k;
        std::string qualifying;
        for (std::size_t a : o) {
            std::string q;
            if (node.probe(a, "B", 1, 4)) q += 'B';
            if (node.probe(a, "C", 1, 4)) q += 'C';
            if (!q.empty() && !k) {
                k = a;
                qualifying = q;
            }
        }
        if (k) {
            const char fav = node.favorite(*k, qualifying);
            std::vector<std::size_t> rest;
            for (std::size_t a : o)
                if (a != *k) rest.push_back(a);
            node.apply("n4.c=3/BC-other", {{"divider", d}, {"recipient", *k}});
            node.give(*k, one(fav));
            node.give(d, fav == 'B' ? "C" : "B");
            node.split(rest, "AD");
        } else {
            node.apply("n4.c=3/C-to-divider", {{"divider", d}});
            node.give(d, "C");
            node.split(o, "ABD");
        }
        return;
    }
    default:
        throw InvariantViolation("n4: case dispatch exhausted");
    }
}

std::vector<std::size_t> without(const std::vector<std::size_t>& set, std::initializer_list<std::size_t> drop)
{
    std::vector<std::size_t> out;
    for (std::size_t a : set)
        if (std::find(drop.begin(), drop.end(), a) == drop.end()) out.push_back(a);
    return out;
}

void case5_ae(Node& node, const std::vector<std::size_t>& abe_high, const std::vector<std::size_t>& ae_high,
              const std::vector<std::size_t>& ae_low)
{
    const std::size_t d = node.divider();
    const auto o = node.others();
    const std::string c_abe = ".cABE=" + std::to_string(abe_high.size());

    switch (ae_high.size()) {
    case 2: {
        const std::size_t p = ae_low[0], q = ae_low[1];
        std::string liked;
        for (std::size_t a : ae_low)
            for (char x : std::string_view("BCD"))
                if (node.probe(a, one(x), 1, 5) && liked.find(x) == std::string::npos) liked += x;
        if (liked.size() >= 2) {
            auto m = match_pair(node, p, q, "BCD", 5);
            if (!m) throw InvariantViolation("n5: no matching of liked bundles");
            std::string rest = "BCD";
            std::erase(rest, m->first);
            std::erase(rest, m->second);
            node.apply("n5.cAE=2/two-bundles", {{"divider", d}, {"low", p}, {"low", q}});
            node.give(p, one(m->first));
            node.give(q, one(m->second));
            node.give(d, rest);
        } else if (liked == "B" || liked == "C") {
            node.apply("n5.cAE=2/one-bundle-BC", {{"divider", d}, {"low", p}, {"low", q}});
            node.give(d, "D");
            node.split(ae_low, "BC");
        } else if (liked == "D") {
            node.apply("n5.cAE=2/one-bundle-D", {{"divider", d}, {"low", p}, {"low", q}});
            node.give(d, "B");
            node.split(ae_low, "CD");
        } else {
            throw InvariantViolation("n5: no low agent likes B, C or D");
        }
        node.split(ae_high, "AE");
        return;
    }
    case 1:
        node.apply("n5.cAE=1", {{"divider", d}, {"high", ae_high[0]}});
        node.split({d, ae_high[0]}, "AE");
        node.split(ae_low, "BCD");
        return;
    case 0: {
        std::optional<std::size_t> k;
        for (std::size_t a : o)
            if (node.probe(a, "E", 1, 5) && !k) k = a;
        if (k) {
            node.apply("n5.cAE=0/E-to-other", {{"divider", d}, {"recipient", *k}});
            node.give(*k, "E");
            node.give(d, "A");
            node.split(without(o, {*k}), "BCD");
        } else {
            node.apply("n5.cAE=0/E-to-divider", {{"divider", d}});
            node.give(d, "E");
            node.split(o, "ABCD");
        }
        return;
    }
    case 4:
        if (abe_high.empty()) {
            node.apply("n5.cAE=4" + c_abe, {{"divider", d}});
            node.give(d, "B");
            node.split({o[0], o[1]}, "AE");
            node.split({o[2], o[3]}, "CD");
        } else {
            const std::size_t h = abe_high[0];
            const std::size_t l = without(o, {h})[0];
            node.apply("n5.cAE=4" + c_abe, {{"divider", d}, {"abe-high", h}, {"partner", l}});
            node.give(d, "B");
            node.split({h, l}, "AE");
            node.split(without(o, {h, l}), "CD");
        }
        return;
    case 3: {
        const std::size_t x = ae_low[0];
        const auto& hi = ae_high;
        if (abe_high.empty()) {
            node.apply("n5.cAE=3" + c_abe, {{"divider", d}, {"ae-low", x}});
            node.give(d, "B");
            node.split({hi[0], hi[1]}, "AE");
            node.split({x, hi[2]}, "CD");
            return;
        }
        const std::size_t h = abe_high[0];
        if (h == x) {
            node.probe(h, "B", 1, 5);
            node.apply("n5.cAE=3" + c_abe + "/same", {{"divider", d}, {"ae-low", x}, {"abe-high", h}});
            node.give(h, "B");
            node.split({d, hi[0]}, "AE");
            node.split({hi[1], hi[2]}, "CD");
        } else {
            const auto rest = without(hi, {h});
            node.apply("n5.cAE=3" + c_abe + "/distinct", {{"divider", d}, {"ae-low", x}, {"abe-high", h}});
            node.give(d, "B");
            node.split({x, rest[0]}, "CD");
            node.split({h, rest[1]}, "AE");
        }
        return;
    }
    default:
        throw InvariantViolation("n5: case dispatch exhausted");
    }
}

void case5(Node& node)
{
    node.build_ladder(kNames5);
    const std::size_t d = node.divider();
    const auto o = node.others();
    std::vector<std::size_t> abe_high, abe_low, ae_high, ae_low;
    for (std::size_t a : o) {
        (node.probe(a, "ABE", 3, 5) ? abe_high : abe_low).push_back(a);
        (node.probe(a, "AE", 2, 5) ? ae_high : ae_low).push_back(a);
    }

    switch (abe_high.size()) {
    case 4: {
        std::optional<std::size_t> k;
        std::string qualifying;
        for (std::size_t a : o) {
            std::string q;
            if (node.probe(a, "C", 1, 5)) q += 'C';
            if (node.probe(a, "D", 1, 5)) q += 'D';
            if (!q.empty() && !k) {
                k = a;
                qualifying = q;
            }
        }
        if (k) {
            const char fav = node.favorite(*k, qualifying);
            node.apply("n5.cABE=4/CD-other", {{"divider", d}, {"recipient", *k}});
            node.give(*k, one(fav));
            node.give(d, fav == 'C' ? "D" : "C");
            node.split(without(o, {*k}), "ABE");
        } else {
            node.apply("n5.cABE=4/D-to-divider", {{"divider", d}});
            node.give(d, "D");
            node.split(o, "ABCE");
        }
        return;
    }
    case 3: {
        const std::size_t l = abe_low[0];
        node.probe(l, "C", 1, 5);
        node.probe(l, "D", 1, 5);
        const char fav = node.favorite(l, "CD");
        node.apply("n5.cABE=3", {{"divider", d}, {"low", l}});
        node.give(l, one(fav));
        node.give(d, fav == 'C' ? "D" : "C");
        node.split(abe_high, "ABE");
        return;
    }
    case 2: {
        node.apply("n5.cABE=2", {{"divider", d}, {"high", abe_high[0]}, {"high", abe_high[1]}});
        node.split(abe_low, "CD");
        node.split({d, abe_high[0], abe_high[1]}, "ABE");
        return;
    }
    default:
        case5_ae(node, abe_high, ae_high, ae_low);
    }
}

void dispatch(Node& node)
{
    switch (node.active().size()) {
    case 1: node.give_sole(); return;
    case 2: case2(node); return;
    case 3: case3(node); return;
    case 4: case4(node); return;
    case 5: case5(node); return;
    default:
        throw UnsupportedSize("solver supports at most 5 agents after big-item reductions, got " +
                              std::to_string(node.active().size()));
    }
}

Solution solve_exact(const Instance& inst, std::size_t n)
{
    if (inst.agents() != n)
        throw InputError("solve" + std::to_string(n) + ": expected " + std::to_string(n) + " agents, got " +
                         std::to_string(inst.agents()));
    Node node(inst);
    dispatch(node);
    return node.finish();
}

}  // namespace

Reduction reduce_big_items(const Instance& inst)
{
    Node node(inst);
    node.reduce();
    Reduction out;
    for (const auto& step : node.steps()) out.assignments.push_back(std::get<BigItemReduction>(step));
    out.residual = restrict(inst, node.active(), node.items());
    return out;
}

Solution solve_propm(const Instance& inst, const SolveOptions& options)
{
    Node node(inst);
    if (options.reduce) node.reduce();
    dispatch(node);
    return node.finish();
}

Solution solve1(const Instance& inst) { return solve_exact(inst, 1); }
Solution solve2(const Instance& inst) { return solve_exact(inst, 2); }
Solution solve3(const Instance& inst) { return solve_exact(inst, 3); }
Solution solve4(const Instance& inst) { return solve_exact(inst, 4); }
Solution solve5(const Instance& inst) { return solve_exact(inst, 5); }

std::span<const std::string_view> rung_names(std::size_t agents)
{
    switch (agents) {
    case 2: return kNames2;
    case 3: return kNames3;
    case 4: return kNames4;
    case 5: return kNames5;
    default: return {};
    }
}

}  // namespace propm
