#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "streamlog/atom.hpp"

namespace streamlog {

// An existential rule body1,...,bodyn -> exists z1..zk . head1,...,headm.
// Variables that occur in the head but not in the body are existential; the
// remaining head variables form the frontier.
struct TGD {
    std::string id;
    std::vector<Atom> body;
    std::vector<Atom> head;
    // In order of first occurrence in the head.
    std::vector<std::string> existentialVars;
    // Body variables shared with the head, in order of first occurrence in the head.
    std::vector<std::string> frontierVars;

    bool hasExistentials() const { return !existentialVars.empty(); }
    std::set<std::string> bodyVars() const;
    std::string toString() const;  // head-left rule syntax

    // Recomputes existentialVars/frontierVars from body/head.
    void computeVarPartition();
};

struct Program {
    std::vector<TGD> rules;
    // predicate -> arity, fixed by first use.
    std::map<std::string, std::size_t> signature;

    const TGD* ruleById(const std::string& id) const;
    std::string toString() const;
};

// Boolean conjunctive query ?- atom1, ..., atomn.
struct BCQ {
    std::vector<Atom> atoms;

    std::set<std::string> vars() const;
    std::string toString() const;
};

// Resumption bound |vars(q)| + 1.
std::uint32_t maxRes(const BCQ& q);

}  // namespace streamlog
