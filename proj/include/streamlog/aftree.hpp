#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "streamlog/atom.hpp"

namespace streamlog {

// Null-to-term bindings built up while visiting a tree; shared across trees
// when a conjunction of facts is checked under one mapping.
using NullMap = std::unordered_map<Term, Term, TermHash>;

// Prefix tree over the facts of one predicate: the root is the empty prefix,
// edges are labelled by terms, and every root-to-leaf path of length arity
// spells exactly one stored fact. Children keep insertion order, so visits
// are deterministic.
class AfTree {
public:
    AfTree(std::string predicate, std::size_t arity);

    // Returns true when the fact was new.
    bool insert(const Atom& fact);
    bool contains(const Atom& fact) const;

    // Is there a homomorphism mapping `args` onto some stored fact?
    // Constants and frozen nulls must follow equally-labelled edges; an
    // unfrozen null follows its nullMap binding when present, otherwise it
    // backtracks over all child edges, extending and retracting nullMap.
    // onLeaf is evaluated at each complete match; returning true accepts it,
    // false keeps searching (this is what chains trees for conjunctions).
    bool homExists(std::span<const Term> args, NullMap& nullMap,
                   const std::function<bool()>& onLeaf = {}) const;

    // Root-to-leaf paths in insertion order; reconstructs the stored facts.
    std::vector<Atom> enumerate() const;

    std::size_t factCount() const { return facts_; }
    const std::string& predicate() const { return predicate_; }
    std::size_t arity() const { return arity_; }

private:
    struct Node {
        std::vector<std::pair<Term, std::size_t>> children;  // label -> node
    };

    std::size_t childOf(std::size_t node, const Term& label) const;  // npos if absent
    bool visit(std::span<const Term> args, std::size_t i, std::size_t node,
               NullMap& nullMap, const std::function<bool()>& onLeaf) const;
    void collect(std::size_t node, Atom& prefix, std::vector<Atom>& out) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::string predicate_;
    std::size_t arity_;
    std::vector<Node> nodes_;
    std::size_t facts_ = 0;
};

}  // namespace streamlog
