#include "streamlog/program.hpp"

#include <algorithm>

namespace streamlog {

std::set<std::string> TGD::bodyVars() const {
    std::set<std::string> vars;
    for (const Atom& a : body)
        for (const Term& t : a.args)
            if (t.isVariable()) vars.insert(t.symbol());
    return vars;
}

void TGD::computeVarPartition() {
    existentialVars.clear();
    frontierVars.clear();
    std::set<std::string> inBody = bodyVars();
    std::set<std::string> seen;
    for (const Atom& a : head) {
        for (const Term& t : a.args) {
            if (!t.isVariable()) continue;
            if (!seen.insert(t.symbol()).second) continue;
            if (inBody.count(t.symbol()))
                frontierVars.push_back(t.symbol());
            else
                existentialVars.push_back(t.symbol());
        }
    }
}

static std::string atomList(const std::vector<Atom>& atoms) {
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) s += ", ";
        s += atoms[i].toString();
    }
    return s;
}

std::string TGD::toString() const {
    std::string s;
    if (!id.empty()) {
        s += id;
        s += ": ";
    }
    s += atomList(head);
    s += " :- ";
    s += atomList(body);
    s += '.';
    return s;
}

const TGD* Program::ruleById(const std::string& id) const {
    auto it = std::find_if(rules.begin(), rules.end(),
                           [&](const TGD& r) { return r.id == id; });
    return it == rules.end() ? nullptr : &*it;
}

std::string Program::toString() const {
    std::string s;
    for (const TGD& r : rules) {
        s += r.toString();
        s += '\n';
    }
    return s;
}

std::set<std::string> BCQ::vars() const {
    std::set<std::string> vars;
    for (const Atom& a : atoms)
        for (const Term& t : a.args)
            if (t.isVariable()) vars.insert(t.symbol());
    return vars;
}

std::string BCQ::toString() const {
    return "? :- " + atomList(atoms) + ".";
}

std::uint32_t maxRes(const BCQ& q) {
    return static_cast<std::uint32_t>(q.vars().size()) + 1;
}

}  // namespace streamlog
