#include "streamlog/pipeline.hpp"

#include <algorithm>

namespace streamlog {

bool atomsUnify(const Atom& produced, const Atom& consumed) {
    if (produced.predicate != consumed.predicate || produced.arity() != consumed.arity())
        return false;
    for (std::size_t i = 0; i < produced.args.size(); ++i) {
        const Term& a = produced.args[i];
        const Term& b = consumed.args[i];
        if (a.isConstant() && b.isConstant() && a != b) return false;
    }
    return true;
}

namespace {

void addParent(PipelineNode& node, std::size_t parent) {
    if (std::find(node.parents.begin(), node.parents.end(), parent) == node.parents.end())
        node.parents.push_back(parent);
}

// Producers for one consumed atom: source scans by predicate, rule scans by
// head unification. Order: sources first, then rules in program order.
void wireAtom(Pipeline& pipe, std::size_t consumer, const Atom& atom, const Program& prog) {
    for (std::size_t n = 0; n < pipe.firstRule; ++n)
        if (pipe.nodes[n].label == atom.predicate) addParent(pipe.nodes[consumer], n);
    for (std::size_t r = 0; r < prog.rules.size(); ++r)
        for (const Atom& head : prog.rules[r].head)
            if (atomsUnify(head, atom)) {
                addParent(pipe.nodes[consumer], pipe.firstRule + r);
                break;
            }
}

}  // namespace

Pipeline compilePipeline(const Instance& db, const Program& prog, const BCQ& q) {
    Pipeline pipe;

    // Source scans, one per database predicate in first-appearance order.
    std::vector<std::string> sourcePreds;
    for (const Fact& f : db.facts())
        if (std::find(sourcePreds.begin(), sourcePreds.end(), f.atom.predicate) ==
            sourcePreds.end())
            sourcePreds.push_back(f.atom.predicate);
    for (const std::string& p : sourcePreds)
        pipe.nodes.push_back({PipelineNode::Kind::Source, p});
    pipe.firstRule = pipe.nodes.size();

    for (std::size_t r = 0; r < prog.rules.size(); ++r) {
        PipelineNode node{PipelineNode::Kind::Rule, prog.rules[r].id};
        node.ruleIndex = r;
        pipe.nodes.push_back(std::move(node));
    }
    pipe.nodes.push_back({PipelineNode::Kind::Query, "query"});

    for (std::size_t r = 0; r < prog.rules.size(); ++r)
        for (const Atom& atom : prog.rules[r].body)
            wireAtom(pipe, pipe.firstRule + r, atom, prog);
    for (const Atom& atom : q.atoms) wireAtom(pipe, pipe.queryNode(), atom, prog);

    for (std::size_t n = 0; n < pipe.nodes.size(); ++n)
        for (std::size_t p : pipe.nodes[n].parents) pipe.nodes[p].children.push_back(n);

    return pipe;
}

std::string Pipeline::toString() const {
    auto name = [](const PipelineNode& n) {
        return n.kind == PipelineNode::Kind::Source ? "source(" + n.label + ")" : n.label;
    };
    std::string s;
    for (const PipelineNode& node : nodes)
        for (std::size_t p : node.parents)
            s += name(nodes[p]) + "->" + name(node) + "\n";
    return s;
}

}  // namespace streamlog
