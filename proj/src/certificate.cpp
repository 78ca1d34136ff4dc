// Certificate replay. Uses only core and the fairness verifier; nothing here
// calls the CP search or the solver's case code.

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <optional>

#include "propm/fairness.hpp"
#include "propm/solver.hpp"

namespace propm {

namespace {

struct LemmaRule {
    std::string_view id;
    std::size_t agents;
    std::string_view divider;  ///< rungs the divider may keep; empty = divider joins a split
    std::string_view some_at_least = {};  ///< some other agent has an AtLeast check on one of these rungs
    std::string_view all_below = {};      ///< every other agent has Below checks on all of these rungs
    Value den = 1;                        ///< fraction 1/den of the two lists above
    /// Single rungs some other agent likes at 1/den, drawn from `candidates`:
    /// with liked_min == 2 at least two distinct ones; with liked_min == 1 exactly
    /// one, and it must be listed in `liked`.
    std::string_view candidates = {};
    std::string_view liked = {};
    std::size_t liked_min = 0;
};

constexpr LemmaRule kLemmas[] = {
    {"n2.cut-and-choose", 2, "AB"},
    {"n3.two-bundles", 3, "ABC", {}, {}, 3, "ABC", "ABC", 2},
    {"n3.one-bundle/AB", 3, "C", {}, "C", 3, "ABC", "AB", 1},
    {"n3.one-bundle/C", 3, "B", {}, "AB", 3, "ABC", "C", 1},
    {"n4.c=0/D-to-divider", 4, "D", {}, "D", 4},
    {"n4.c=0/D-to-other", 4, "A", "D", {}, 4},
    {"n4.c=1", 4, ""},
    {"n4.c=2", 4, "BC"},
    {"n4.c=3/BC-other", 4, "BC", "BC", {}, 4},
    {"n4.c=3/C-to-divider", 4, "C", {}, "BC", 4},
    {"n5.cABE=4/CD-other", 5, "CD", "CD", {}, 5},
    {"n5.cABE=4/D-to-divider", 5, "D", {}, "CD", 5},
    {"n5.cABE=3", 5, "CD"},
    {"n5.cABE=2", 5, ""},
    {"n5.cAE=2/two-bundles", 5, "BCD", {}, {}, 5, "BCD", "BCD", 2},
    {"n5.cAE=2/one-bundle-BC", 5, "D", {}, {}, 5, "BCD", "BC", 1},
    {"n5.cAE=2/one-bundle-D", 5, "B", {}, {}, 5, "BCD", "D", 1},
    {"n5.cAE=1", 5, ""},
    {"n5.cAE=0/E-to-divider", 5, "E", {}, "E", 5},
    {"n5.cAE=0/E-to-other", 5, "A", "E", {}, 5},
    {"n5.cAE=4.cABE=0", 5, "B"},
    {"n5.cAE=4.cABE=1", 5, "B"},
    {"n5.cAE=3.cABE=0", 5, "B"},
    {"n5.cAE=3.cABE=1/same", 5, ""},
    {"n5.cAE=3.cABE=1/distinct", 5, "B"},
};

constexpr auto kLemmaIds = [] {
    std::array<std::string_view, std::size(kLemmas)> ids{};
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = kLemmas[i].id;
    return ids;
}();

const LemmaRule* find_lemma(std::string_view id)
{
    for (const auto& l : kLemmas)
        if (l.id == id) return &l;
    return nullptr;
}

/// "key=value" fields of a lemma id, e.g. n5.cAE=3.cABE=1/same -> {cAE:3, cABE:1}.
std::map<std::string, std::size_t> lemma_counts(std::string_view id)
{
    std::map<std::string, std::size_t> out;
    std::size_t pos = 0;
    while ((pos = id.find('=', pos)) != std::string_view::npos) {
        std::size_t start = id.find_last_of("./", pos) + 1;
        std::size_t value = 0;
        auto [end, ec] = std::from_chars(id.data() + pos + 1, id.data() + id.size(), value);
        if (ec == std::errc()) out[std::string(id.substr(start, pos - start))] = value;
        pos = static_cast<std::size_t>(end - id.data());
    }
    return out;
}

std::string rung_label(std::string_view names)
{
    std::string out;
    for (char c : names) {
        if (!out.empty()) out += "∪";
        out += c;
    }
    return out;
}

/// Rung names in a label such as "A∪B∪E"; nullopt if it is not of that form.
std::optional<std::string> parse_label(std::string_view label)
{
    std::string names;
    std::size_t pos = 0;
    while (pos < label.size()) {
        char c = label[pos];
        if (c < 'A' || c > 'Z') return std::nullopt;
        names += c;
        ++pos;
        if (pos == label.size()) break;
        if (label.substr(pos, 3) != "∪") return std::nullopt;
        pos += 3;
    }
    if (names.empty()) return std::nullopt;
    return names;
}

struct Failure {};

void require(bool condition)
{
    if (!condition) throw Failure{};
}

class Replay {
public:
    explicit Replay(const Instance& inst) : inst_(inst), bundles_(inst.agents()), assigned_(inst.agents(), false)
    {
        for (std::size_t i = 0; i < inst.agents(); ++i) active_.push_back(i);
        items_ = Bundle::range(inst.items());
    }

    std::vector<Bundle> run(const Certificate& cert)
    {
        require(cert.agents == inst_.agents() && cert.items == inst_.items());
        std::vector<bool> child_used(cert.children.size(), false);
        for (const auto& step : cert.steps) {
            std::visit(
                [&](const auto& s) {
                    using T = std::decay_t<decltype(s)>;
                    if constexpr (std::is_same_v<T, BigItemReduction>) reduction(s);
                    if constexpr (std::is_same_v<T, LadderBuilt>) ladder(s);
                    if constexpr (std::is_same_v<T, CaseApplied>) lemma(s);
                    if constexpr (std::is_same_v<T, Assignment>) assignment(s);
                    if constexpr (std::is_same_v<T, SubSplit>) subsplit(s, cert, child_used);
                },
                step);
        }
        finish(child_used);
        return bundles_;
    }

private:
    Value total(std::size_t agent) const { return value_of(inst_, agent, items_); }
    Value n() const { return static_cast<Value>(active_.size()); }
    bool active(std::size_t agent) const { return std::find(active_.begin(), active_.end(), agent) != active_.end(); }
    bool inside(const Bundle& b) const { return b.without(items_).empty(); }
    bool after_ladder() const { return !names_.empty(); }

    const Bundle& rung(char name) const
    {
        auto it = rungs_.find(name);
        require(it != rungs_.end());
        return it->second;
    }

    Bundle rungs(std::string_view names) const
    {
        Bundle out;
        for (char c : names) out = out.united(rung(c));
        return out;
    }

    void reduction(const BigItemReduction& s)
    {
        require(!after_ladder() && !distributing_);
        require(s.agent < inst_.agents() && active(s.agent) && items_.contains(s.item));
        require(n() * inst_.value(s.agent, s.item) > total(s.agent));
        bundles_[s.agent] = Bundle{s.item};
        assigned_[s.agent] = true;
        active_.erase(std::find(active_.begin(), active_.end(), s.agent));
        items_ = items_.without(Bundle{s.item});
    }

    void ladder(const LadderBuilt& s)
    {
        require(!after_ladder() && !distributing_ && active_.size() >= 2);
        require(s.divider == active_.front());
        auto expected = rung_names(active_.size());
        require(s.names.size() == expected.size() && s.rungs.size() == expected.size());
        for (std::size_t r = 0; r < expected.size(); ++r) require(s.names[r] == expected[r]);

        const std::size_t i = s.divider;
        const Value whole = total(i);
        Bundle rest = items_;
        for (std::size_t r = 0; r < s.rungs.size(); ++r) {
            const Bundle& rung = s.rungs[r];
            const auto k = static_cast<Value>(s.rungs.size() - r);
            require(inside(rung) && rung.without(rest).empty());
            const Value rest_value = value_of(inst_, i, rest);
            const Value rung_value = value_of(inst_, i, rung);
            require(k * rung_value <= rest_value);
            // No single remaining item could be added without breaking the bound.
            for (std::size_t j : rest.without(rung)) require(k * (rung_value + inst_.value(i, j)) > rest_value);
            rest = rest.without(rung);
            require(n() * value_of(inst_, i, rest) >= (k - 1) * whole);
            rungs_[s.names[r][0]] = rung;
        }
        require(rest.empty());
        for (const auto& name : s.names) names_ += name;
    }

    const ThresholdCheck* find_check(const CaseApplied& s, std::size_t agent, std::string_view label, Value p,
                                     Value q) const
    {
        const ThresholdCheck* found = nullptr;
        for (const auto& c : s.checks) {
            if (c.agent != agent || c.label != label || c.numerator != p || c.denominator != q) continue;
            require(found == nullptr);
            found = &c;
        }
        return found;
    }

    /// Number of other agents meeting the key threshold; each must have exactly one record.
    std::size_t count(const CaseApplied& s, std::string_view names, Value p, Value q) const
    {
        std::size_t c = 0;
        for (std::size_t a : others()) {
            const auto* check = find_check(s, a, rung_label(names), p, q);
            require(check != nullptr);
            if (check->relation == Relation::AtLeast) ++c;
        }
        return c;
    }

    std::vector<std::size_t> others() const { return {active_.begin() + 1, active_.end()}; }

    void lemma(const CaseApplied& s)
    {
        require(after_ladder() && !case_ && !distributing_);
        const LemmaRule* rule = find_lemma(s.lemma);
        require(rule != nullptr && rule->agents == active_.size() && s.agents == active_.size());

        for (const auto& c : s.checks) {
            require(active(c.agent) && inside(c.items) && c.denominator > 0 && c.numerator >= 0);
            require(c.value == value_of(inst_, c.agent, c.items) && c.total == total(c.agent));
            const bool holds = at_least_fraction(c.value, c.total, c.numerator, c.denominator);
            require(holds == (c.relation == Relation::AtLeast));
            if (auto names = parse_label(c.label)) require(rungs(*names) == c.items);
        }
        for (const auto& [role, agent] : s.roles) require(active(agent));

        auto counts = lemma_counts(s.lemma);
        if (auto it = counts.find("c"); it != counts.end()) require(count(s, "AD", 1, 2) == it->second);
        if (rule->agents == 5) {
            const std::size_t abe = count(s, "ABE", 3, 5);
            const std::size_t ae = count(s, "AE", 2, 5);
            if (auto it = counts.find("cABE"); it != counts.end()) require(abe == it->second);
            if (auto it = counts.find("cAE"); it != counts.end()) {
                require(abe <= 1 && ae == it->second);
                if (it->second == 3 && abe == 1) {
                    std::size_t h = 0, x = 0;
                    for (std::size_t a : others()) {
                        if (find_check(s, a, rung_label("ABE"), 3, 5)->relation == Relation::AtLeast) h = a;
                        if (find_check(s, a, rung_label("AE"), 2, 5)->relation == Relation::Below) x = a;
                    }
                    const bool same = s.lemma.ends_with("/same");
                    require(same == (h == x));
                }
            }
        }

        if (!rule->some_at_least.empty()) {
            bool any = false;
            for (std::size_t a : others())
                for (char r : rule->some_at_least)
                    if (const auto* c = find_check(s, a, rung_label(std::string_view(&r, 1)), 1, rule->den))
                        any = any || c->relation == Relation::AtLeast;
            require(any);
        }
        for (std::size_t a : others())
            for (char r : rule->all_below) {
                const auto* c = find_check(s, a, rung_label(std::string_view(&r, 1)), 1, rule->den);
                require(c != nullptr && c->relation == Relation::Below);
            }
        if (rule->liked_min > 0) {
            std::string liked;
            for (std::size_t a : others())
                for (char r : rule->candidates)
                    if (const auto* c = find_check(s, a, rung_label(std::string_view(&r, 1)), 1, rule->den))
                        if (c->relation == Relation::AtLeast && liked.find(r) == std::string::npos) liked += r;
            if (rule->liked_min == 2) {
                require(liked.size() >= 2);
            } else {
                require(liked.size() == 1 && rule->liked.find(liked[0]) != std::string_view::npos);
            }
        }
        case_ = rule;
    }

    void claim(std::size_t agent, const Bundle& items)
    {
        require(agent < inst_.agents() && active(agent) && !assigned_[agent]);
        require(inside(items) && !items.intersects(handed_out_));
        handed_out_ = handed_out_.united(items);
        bundles_[agent] = items;
        assigned_[agent] = true;
    }

    void assignment(const Assignment& s)
    {
        require(case_ != nullptr || active_.size() == 1);
        distributing_ = true;
        claim(s.agent, s.items);
        switch (s.basis) {
        case Basis::Proportional:
            require(n() * value_of(inst_, s.agent, s.items) >= total(s.agent));
            break;
        case Basis::DividerRung:
            require(after_ladder() && s.agent == active_.front() && s.rung.size() == 1);
            require(rung(s.rung[0]) == s.items);
            require(case_->divider.find(s.rung[0]) != std::string_view::npos);
            divider_rung_ = s.rung[0];
            break;
        case Basis::Sole:
            require(active_.size() == 1 && s.items == items_);
            break;
        }
    }

    void subsplit(const SubSplit& s, const Certificate& cert, std::vector<bool>& child_used)
    {
        require(case_ != nullptr);
        distributing_ = true;
        require(!s.agents.empty() && std::is_sorted(s.agents.begin(), s.agents.end()));
        require(std::adjacent_find(s.agents.begin(), s.agents.end()) == s.agents.end());
        const auto group = static_cast<Value>(s.agents.size());
        for (std::size_t a : s.agents) {
            require(a < inst_.agents() && active(a));
            require(n() * value_of(inst_, a, s.items) >= group * total(a));
        }
        require(s.child < cert.children.size() && !child_used[s.child]);
        child_used[s.child] = true;

        Restriction sub = restrict(inst_, s.agents, s.items);
        Replay nested(sub.instance);
        auto bundles = nested.run(cert.children[s.child]);
        auto lifted = sub.lift(Allocation(std::move(bundles)));
        for (std::size_t k = 0; k < s.agents.size(); ++k) claim(s.agents[k], lifted[k]);
    }

    void finish(const std::vector<bool>& child_used)
    {
        for (bool used : child_used) require(used);
        for (std::size_t a : active_) require(assigned_[a]);
        require(handed_out_ == items_);
        require(case_ != nullptr || active_.size() <= 1);
        if (case_ != nullptr) {
            const std::size_t d = active_.front();
            if (case_->divider.empty()) {
                require(!divider_rung_);
            } else {
                require(divider_rung_.has_value());
                // Non-mixing: no other bundle takes items from both sides of the divider's rung.
                const std::size_t pos = names_.find(*divider_rung_);
                Bundle higher = rungs(names_.substr(0, pos));
                Bundle lower = rungs(names_.substr(pos + 1));
                for (std::size_t a : active_)
                    if (a != d) require(!(bundles_[a].intersects(higher) && bundles_[a].intersects(lower)));
            }
        }
        Allocation x(bundles_);
        require(x.is_complete(inst_));
        require(check(inst_, x, Notion::PropM).all_satisfied);
    }

    const Instance& inst_;
    std::vector<Bundle> bundles_;
    std::vector<bool> assigned_;
    std::vector<std::size_t> active_;
    Bundle items_;
    Bundle handed_out_;
    std::string names_;
    std::map<char, Bundle> rungs_;
    const LemmaRule* case_ = nullptr;
    std::optional<char> divider_rung_;
    bool distributing_ = false;
};

}  // namespace

std::span<const std::string_view> lemma_ids()
{
    return kLemmaIds;
}

bool verify_certificate(const Instance& inst, const Allocation& allocation, const Certificate& certificate)
{
    try {
        if (!allocation.is_complete(inst)) return false;
        Replay replay(inst);
        return Allocation(replay.run(certificate)) == allocation;
    } catch (const Failure&) {
        return false;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace propm
