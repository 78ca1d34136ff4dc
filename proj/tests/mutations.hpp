#pragma once

// Single-field certificate corruptions. Each kind targets one recorded fact
// that the verifier replays; a mutation is only applied where it changes the
// recorded value.

#include <random>
#include <string>
#include <vector>

#include "propm/solver.hpp"

namespace mutations {

using namespace propm;

enum class Kind {
    FlipRelation,
    CheckValue,
    CheckTotal,
    Lemma,
    AssignmentAgent,
    AssignmentItems,
    ReductionItem,
    RungItem,
    SplitItems,
    SplitAgents,
    LadderDivider,
    BasisChange,
};

inline constexpr Kind kAllKinds[] = {
    Kind::FlipRelation,    Kind::CheckValue,  Kind::CheckTotal, Kind::Lemma,
    Kind::AssignmentAgent, Kind::AssignmentItems, Kind::ReductionItem, Kind::RungItem,
    Kind::SplitItems,      Kind::SplitAgents, Kind::LadderDivider, Kind::BasisChange,
};

inline const char* kind_name(Kind k)
{
    switch (k) {
    case Kind::FlipRelation: return "flip-relation";
    case Kind::CheckValue: return "check-value";
    case Kind::CheckTotal: return "check-total";
    case Kind::Lemma: return "lemma";
    case Kind::AssignmentAgent: return "assignment-agent";
    case Kind::AssignmentItems: return "assignment-items";
    case Kind::ReductionItem: return "reduction-item";
    case Kind::RungItem: return "rung-item";
    case Kind::SplitItems: return "split-items";
    case Kind::SplitAgents: return "split-agents";
    case Kind::LadderDivider: return "ladder-divider";
    case Kind::BasisChange: return "basis-change";
    }
    return "?";
}

inline void collect(Certificate& c, std::vector<Certificate*>& out)
{
    out.push_back(&c);
    for (auto& child : c.children) collect(child, out);
}

/// A mutation site: a node and a step within it.
struct Site {
    Certificate* node;
    std::size_t step;
};

inline bool applicable(Kind kind, const Certificate& node, const Step& s)
{
    switch (kind) {
    case Kind::FlipRelation:
    case Kind::CheckValue:
    case Kind::CheckTotal:
        return std::holds_alternative<CaseApplied>(s) && !std::get<CaseApplied>(s).checks.empty();
    case Kind::Lemma: return std::holds_alternative<CaseApplied>(s);
    case Kind::AssignmentAgent: return std::holds_alternative<Assignment>(s) && node.agents > 1;
    case Kind::AssignmentItems:
        return std::holds_alternative<Assignment>(s) && (!std::get<Assignment>(s).items.empty() || node.items > 0);
    case Kind::ReductionItem: return std::holds_alternative<BigItemReduction>(s) && node.items > 1;
    case Kind::RungItem: {
        if (!std::holds_alternative<LadderBuilt>(s)) return false;
        const auto& rungs = std::get<LadderBuilt>(s).rungs;
        for (std::size_t k = 0; k + 1 < rungs.size(); ++k)
            if (!rungs[k].empty()) return true;
        return false;
    }
    case Kind::SplitItems: return std::holds_alternative<SubSplit>(s) && node.items > 0;
    case Kind::SplitAgents: return std::holds_alternative<SubSplit>(s);
    case Kind::LadderDivider: return std::holds_alternative<LadderBuilt>(s) && node.agents > 1;
    case Kind::BasisChange: return std::holds_alternative<Assignment>(s);
    }
    return false;
}

inline std::vector<Site> sites(Kind kind, Certificate& root)
{
    std::vector<Certificate*> nodes;
    collect(root, nodes);
    std::vector<Site> out;
    for (Certificate* n : nodes)
        for (std::size_t k = 0; k < n->steps.size(); ++k)
            if (applicable(kind, *n, n->steps[k])) out.push_back({n, k});
    return out;
}

/// Toggles membership of one item in b.
inline Bundle toggle(const Bundle& b, std::size_t item)
{
    return b.contains(item) ? b.without(Bundle{item}) : b.united(Bundle{item});
}

/// Applies one mutation of the given kind at a site drawn from rng.
/// Returns false when the certificate has no applicable site.
inline bool mutate(Certificate& root, Kind kind, std::mt19937_64& rng)
{
    auto candidates = sites(kind, root);
    if (candidates.empty()) return false;
    Site site = candidates[rng() % candidates.size()];
    Certificate& node = *site.node;
    Step& s = node.steps[site.step];
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

    switch (kind) {
    case Kind::FlipRelation: {
        auto& c = std::get<CaseApplied>(s).checks;
        auto& chk = c[pick(c.size())];
        chk.relation = chk.relation == Relation::AtLeast ? Relation::Below : Relation::AtLeast;
        return true;
    }
    case Kind::CheckValue: {
        auto& c = std::get<CaseApplied>(s).checks;
        c[pick(c.size())].value += 1;
        return true;
    }
    case Kind::CheckTotal: {
        auto& c = std::get<CaseApplied>(s).checks;
        c[pick(c.size())].total += 1;
        return true;
    }
    case Kind::Lemma: {
        auto& step = std::get<CaseApplied>(s);
        const std::string prefix = "n" + std::to_string(step.agents) + ".";
        std::vector<std::string> others;
        for (auto id : lemma_ids())
            if (id.starts_with(prefix) && id != step.lemma) others.emplace_back(id);
        if (others.empty()) return false;
        step.lemma = others[pick(others.size())];
        return true;
    }
    case Kind::AssignmentAgent: {
        auto& a = std::get<Assignment>(s);
        a.agent = (a.agent + 1 + pick(node.agents - 1)) % node.agents;
        return true;
    }
    case Kind::AssignmentItems: {
        auto& a = std::get<Assignment>(s);
        if (!a.items.empty() && rng() % 2 == 0) {
            std::vector<std::size_t> v(a.items.begin(), a.items.end());
            a.items = a.items.without(Bundle{v[pick(v.size())]});
        } else {
            std::vector<std::size_t> outside;
            for (std::size_t j = 0; j < node.items; ++j)
                if (!a.items.contains(j)) outside.push_back(j);
            if (outside.empty()) {
                std::vector<std::size_t> v(a.items.begin(), a.items.end());
                a.items = a.items.without(Bundle{v[pick(v.size())]});
            } else {
                a.items = a.items.united(Bundle{outside[pick(outside.size())]});
            }
        }
        return true;
    }
    case Kind::ReductionItem: {
        auto& r = std::get<BigItemReduction>(s);
        r.item = (r.item + 1 + pick(node.items - 1)) % node.items;
        return true;
    }
    case Kind::RungItem: {
        auto& l = std::get<LadderBuilt>(s);
        // Items move to a lower rung only. Moving a zero-valued item upward
        // yields another ladder with the same arithmetic properties.
        std::vector<std::size_t> from;
        for (std::size_t k = 0; k + 1 < l.rungs.size(); ++k)
            if (!l.rungs[k].empty()) from.push_back(k);
        std::size_t src = from[pick(from.size())];
        std::vector<std::size_t> items(l.rungs[src].begin(), l.rungs[src].end());
        std::size_t item = items[pick(items.size())];
        std::size_t dst = src + 1 + pick(l.rungs.size() - 1 - src);
        l.rungs[src] = l.rungs[src].without(Bundle{item});
        l.rungs[dst] = l.rungs[dst].united(Bundle{item});
        return true;
    }
    case Kind::SplitItems: {
        auto& sp = std::get<SubSplit>(s);
        sp.items = toggle(sp.items, pick(node.items));
        return true;
    }
    case Kind::SplitAgents: {
        auto& sp = std::get<SubSplit>(s);
        std::size_t a = pick(node.agents);
        std::vector<std::size_t> g;
        bool found = false;
        for (std::size_t x : sp.agents) {
            if (x == a) found = true;
            else g.push_back(x);
        }
        if (!found) {
            g.push_back(a);
            std::sort(g.begin(), g.end());
        }
        sp.agents = g;
        return true;
    }
    case Kind::LadderDivider: {
        auto& l = std::get<LadderBuilt>(s);
        l.divider = (l.divider + 1 + pick(node.agents - 1)) % node.agents;
        return true;
    }
    case Kind::BasisChange: {
        auto& a = std::get<Assignment>(s);
        switch (a.basis) {
        case Basis::Proportional:
            a.basis = rng() % 2 ? Basis::Sole : Basis::DividerRung;
            if (a.basis == Basis::DividerRung) a.rung = "A";
            break;
        case Basis::DividerRung:
            a.basis = rng() % 2 ? Basis::Sole : Basis::Proportional;
            a.rung.clear();
            break;
        case Basis::Sole: a.basis = Basis::DividerRung; a.rung = "A"; break;
        }
        return true;
    }
    }
    return false;
}

}  // namespace mutations
