#pragma once

#include "streamlog/instance.hpp"
#include "streamlog/program.hpp"

namespace streamlog {

// Compiled scan graph: one source scan per database predicate, one scan per
// rule, and a query scan on top. An edge b -> a exists when what b produces
// can feed a: the head of rule b (or the predicate of source b) unifies with
// a body atom of rule a, respectively with a query atom.
struct PipelineNode {
    enum class Kind { Source, Rule, Query };
    Kind kind;
    std::string label;          // predicate / rule id / "query"
    std::size_t ruleIndex = 0;  // valid for Kind::Rule
    std::vector<std::size_t> parents;   // producers feeding this scan
    std::vector<std::size_t> children;  // consumers of this scan's output
};

struct Pipeline {
    std::vector<PipelineNode> nodes;  // sources, then rules, then the query
    std::size_t firstRule = 0;

    std::size_t queryNode() const { return nodes.size() - 1; }
    // "b->a" lines over node labels, in parent-list order.
    std::string toString() const;
};

// Predicate, arity and constant positions are compatible.
bool atomsUnify(const Atom& produced, const Atom& consumed);

Pipeline compilePipeline(const Instance& db, const Program& prog, const BCQ& q);

}  // namespace streamlog
