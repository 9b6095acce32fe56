#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "streamlog/program.hpp"

namespace streamlog {

// Predicate position pi[i], with 1-based i to match the usual notation.
struct Position {
    std::string predicate;
    std::size_t index;

    bool operator==(const Position& o) const {
        return predicate == o.predicate && index == o.index;
    }
    bool operator<(const Position& o) const {
        if (predicate != o.predicate) return predicate < o.predicate;
        return index < o.index;
    }
    std::string toString() const { return predicate + "[" + std::to_string(index) + "]"; }
};

// An existential variable of a rule, seen as the source of labelled nulls.
struct Origin {
    std::string ruleId;
    std::string var;

    bool operator==(const Origin& o) const { return ruleId == o.ruleId && var == o.var; }
    bool operator<(const Origin& o) const {
        if (ruleId != o.ruleId) return ruleId < o.ruleId;
        return var < o.var;
    }
    std::string toString() const { return ruleId + ":" + var; }
};

// Classification of one universal variable within one rule.
struct VarClass {
    bool inHead = false;
    bool join = false;      // occurs in >= 2 distinct body atoms
    bool harmful = false;   // all body occurrences at affected positions
    bool dangerous = false; // harmful and occurs in the head
    std::vector<Origin> attackers;  // origins whose invaded positions cover it

    bool attacked() const { return !attackers.empty(); }
};

struct RuleReport {
    std::string ruleId;
    std::map<std::string, VarClass> vars;
    // 0-based index of the ward body atom; -1 when the rule has no dangerous
    // variables (no ward needed).
    int wardIndex = -1;
    bool warded = true;
    bool shy = true;
    std::vector<std::string> ahjVars;  // attacked join variables
};

struct FragmentReport {
    std::set<Position> affected;
    std::map<Position, std::set<Origin>> invaded;
    std::vector<RuleReport> rules;
    bool isShy = true;
    bool isWarded = true;
    bool isProtected = true;
    std::vector<std::pair<std::string, std::string>> ahjRules;  // (ruleId, variable)

    // Line-oriented key=value rendering with stable ordering.
    std::string toString() const;
};

// Least fixpoint of positions that may host labelled nulls.
std::set<Position> affectedPositions(const Program& prog);

// Least fixpoint per origin: which positions nulls from that origin can reach.
std::map<Position, std::set<Origin>> invasionMap(const Program& prog);

FragmentReport classifyProgram(const Program& prog);

}  // namespace streamlog
