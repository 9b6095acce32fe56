#include "streamlog/fragment.hpp"

#include <algorithm>

namespace streamlog {

namespace {

// All positions where variable v occurs in the given atoms.
std::set<Position> occurrences(const std::vector<Atom>& atoms, const std::string& v) {
    std::set<Position> out;
    for (const Atom& a : atoms)
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i].isVariable() && a.args[i].symbol() == v)
                out.insert({a.predicate, i + 1});
    return out;
}

bool subsetOf(const std::set<Position>& sub, const std::set<Position>& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// Number of distinct body atoms of r that mention v.
std::size_t atomCount(const TGD& r, const std::string& v) {
    std::size_t n = 0;
    for (const Atom& a : r.body)
        for (const Term& t : a.args)
            if (t.isVariable() && t.symbol() == v) {
                ++n;
                break;
            }
    return n;
}

// Propagation step shared by the affected and invaded fixpoints: a frontier
// variable whose body occurrences all lie in `set` pushes its head positions
// into `set`.
bool propagate(const Program& prog, std::set<Position>& set) {
    bool changed = false;
    for (const TGD& r : prog.rules) {
        for (const std::string& v : r.frontierVars) {
            if (!subsetOf(occurrences(r.body, v), set)) continue;
            for (const Position& p : occurrences(r.head, v))
                changed |= set.insert(p).second;
        }
    }
    return changed;
}

}  // namespace

std::set<Position> affectedPositions(const Program& prog) {
    std::set<Position> aff;
    for (const TGD& r : prog.rules)
        for (const std::string& z : r.existentialVars)
            for (const Position& p : occurrences(r.head, z))
                aff.insert(p);
    while (propagate(prog, aff)) {
    }
    return aff;
}

std::map<Position, std::set<Origin>> invasionMap(const Program& prog) {
    std::map<Position, std::set<Origin>> inv;
    for (const TGD& r : prog.rules) {
        for (const std::string& z : r.existentialVars) {
            Origin origin{r.id, z};
            std::set<Position> reach = occurrences(r.head, z);
            while (propagate(prog, reach)) {
            }
            for (const Position& p : reach) inv[p].insert(origin);
        }
    }
    return inv;
}

FragmentReport classifyProgram(const Program& prog) {
    FragmentReport rep;
    rep.affected = affectedPositions(prog);
    rep.invaded = invasionMap(prog);

    // Origins in a deterministic order, matching rule order.
    std::vector<Origin> origins;
    std::map<Origin, std::set<Position>> reach;
    for (const TGD& r : prog.rules)
        for (const std::string& z : r.existentialVars)
            origins.push_back({r.id, z});
    for (const auto& [pos, origs] : rep.invaded)
        for (const Origin& o : origs) reach[o].insert(pos);

    for (const TGD& r : prog.rules) {
        RuleReport rr;
        rr.ruleId = r.id;
        std::set<std::string> headVars;
        for (const Atom& a : r.head)
            for (const Term& t : a.args)
                if (t.isVariable()) headVars.insert(t.symbol());

        for (const std::string& v : r.bodyVars()) {
            VarClass vc;
            vc.inHead = headVars.count(v) != 0;
            vc.join = atomCount(r, v) >= 2;
            std::set<Position> bodyPos = occurrences(r.body, v);
            vc.harmful = subsetOf(bodyPos, rep.affected);
            vc.dangerous = vc.harmful && vc.inHead;
            for (const Origin& o : origins)
                if (subsetOf(bodyPos, reach[o])) vc.attackers.push_back(o);
            rr.vars.emplace(v, std::move(vc));
        }

        // Wardedness: all dangerous variables confined to a single body atom
        // that shares only harmless variables with the rest of the body.
        std::vector<std::string> dangerous;
        for (const auto& [v, vc] : rr.vars)
            if (vc.dangerous) dangerous.push_back(v);
        if (!dangerous.empty()) {
            rr.warded = false;
            for (std::size_t i = 0; i < r.body.size() && !rr.warded; ++i) {
                bool confined = true;
                for (const std::string& v : dangerous) {
                    if (atomCount(r, v) != 1) { confined = false; break; }
                    bool inThis = false;
                    for (const Term& t : r.body[i].args)
                        if (t.isVariable() && t.symbol() == v) inThis = true;
                    if (!inThis) { confined = false; break; }
                }
                if (!confined) continue;
                bool sharesOk = true;
                for (std::size_t j = 0; j < r.body.size() && sharesOk; ++j) {
                    if (j == i) continue;
                    for (const Term& t : r.body[i].args) {
                        if (!t.isVariable()) continue;
                        bool shared = false;
                        for (const Term& u : r.body[j].args)
                            if (u.isVariable() && u.symbol() == t.symbol()) shared = true;
                        if (shared && rr.vars.at(t.symbol()).harmful) { sharesOk = false; break; }
                    }
                }
                if (sharesOk) {
                    rr.warded = true;
                    rr.wardIndex = static_cast<int>(i);
                }
            }
        }

        // Attacked harmful joins.
        for (const auto& [v, vc] : rr.vars)
            if (vc.join && vc.attacked()) rr.ahjVars.push_back(v);

        // Shyness: (i) join variables are protected; (ii) two distinct head
        // variables occurring in different body atoms have no common attacker.
        rr.shy = rr.ahjVars.empty();
        if (rr.shy) {
            std::vector<std::string> headBodyVars;
            for (const std::string& v : r.frontierVars)
                if (rr.vars.count(v)) headBodyVars.push_back(v);
            for (std::size_t i = 0; i < headBodyVars.size() && rr.shy; ++i) {
                for (std::size_t j = i + 1; j < headBodyVars.size() && rr.shy; ++j) {
                    const std::string& x = headBodyVars[i];
                    const std::string& y = headBodyVars[j];
                    bool differentAtoms = false;
                    for (std::size_t ai = 0; ai < r.body.size() && !differentAtoms; ++ai)
                        for (std::size_t aj = 0; aj < r.body.size(); ++aj) {
                            if (ai == aj) continue;
                            bool xi = occurrences({r.body[ai]}, x).size() > 0;
                            bool yj = occurrences({r.body[aj]}, y).size() > 0;
                            if (xi && yj) { differentAtoms = true; break; }
                        }
                    if (!differentAtoms) continue;
                    const auto& ax = rr.vars.at(x).attackers;
                    const auto& ay = rr.vars.at(y).attackers;
                    for (const Origin& o : ax)
                        if (std::find(ay.begin(), ay.end(), o) != ay.end()) {
                            rr.shy = false;
                            break;
                        }
                }
            }
        }

        rep.isShy = rep.isShy && rr.shy;
        rep.isWarded = rep.isWarded && rr.warded;
        for (const std::string& v : rr.ahjVars) rep.ahjRules.emplace_back(r.id, v);
        rep.rules.push_back(std::move(rr));
    }

    rep.isProtected = rep.isWarded && rep.ahjRules.empty();
    return rep;
}

std::string FragmentReport::toString() const {
    std::string s;
    auto flag = [](bool b) { return b ? "true" : "false"; };
    s += std::string("shy=") + flag(isShy) + "\n";
    s += std::string("warded=") + flag(isWarded) + "\n";
    s += std::string("protected=") + flag(isProtected) + "\n";
    s += "ahj=[";
    std::vector<std::string> ids;
    for (const auto& [rule, var] : ahjRules)
        if (std::find(ids.begin(), ids.end(), rule) == ids.end()) ids.push_back(rule);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ',';
        s += ids[i];
    }
    s += "]\n";
    s += "affected=[";
    bool first = true;
    for (const Position& p : affected) {
        if (!first) s += ',';
        first = false;
        s += p.toString();
    }
    s += "]\n";
    for (const auto& [pos, origs] : invaded) {
        s += "invaded[" + pos.toString() + "]=[";
        first = true;
        for (const Origin& o : origs) {
            if (!first) s += ',';
            first = false;
            s += o.toString();
        }
        s += "]\n";
    }
    for (const RuleReport& rr : rules) {
        if (rr.wardIndex >= 0)
            s += "ward[" + rr.ruleId + "]=" + std::to_string(rr.wardIndex + 1) + "\n";
        for (const auto& [v, vc] : rr.vars) {
            s += "var[" + rr.ruleId + "." + v + "]=";
            s += vc.harmful ? "harmful" : "harmless";
            if (vc.dangerous) s += ",dangerous";
            s += vc.attacked() ? ",attacked" : ",protected";
            s += "\n";
        }
        for (const std::string& v : rr.ahjVars)
            s += "ahj[" + rr.ruleId + "]=" + v + "\n";
    }
    return s;
}

}  // namespace streamlog
