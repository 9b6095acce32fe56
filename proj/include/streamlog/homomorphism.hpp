#pragma once

#include <optional>
#include <span>
#include <vector>

#include "streamlog/instance.hpp"

namespace streamlog {

// A partial substitution over variables and unfrozen nulls. Constants and
// frozen nulls are rigid: they always map to themselves and cannot be bound.
class Mapping {
public:
    // Image of a term: rigid terms map to themselves, bound terms to their
    // binding, everything else is not mapped.
    std::optional<Term> image(const Term& t) const;
    bool bound(const Term& t) const { return map_.count(t) != 0; }

    // t must be a variable or an unfrozen null; image must be ground.
    void bind(const Term& t, const Term& image);
    void unbind(const Term& t);

    std::size_t size() const { return map_.size(); }
    const std::unordered_map<Term, Term, TermHash>& entries() const { return map_; }
    std::string toString() const;  // sorted, for diagnostics

private:
    std::unordered_map<Term, Term, TermHash> map_;
};

// Applies a mapping to a conjunction. With requireGround, an unmapped
// variable raises std::invalid_argument; otherwise unmapped terms are kept.
std::vector<Atom> apply(const Mapping& m, std::span<const Atom> atoms,
                        bool requireGround = false);
Atom apply(const Mapping& m, const Atom& atom, bool requireGround = false);

struct HomOptions {
    // Distinct unfrozen nulls of the source must take distinct images
    // (used for embeddings modulo null renaming).
    bool injectiveNulls = false;
};

// Backtracking search for a homomorphism from the conjunction src into dst:
// constants and frozen nulls are fixed, variables and unfrozen nulls map to
// ground terms of dst. Atoms are matched left to right, candidate facts in
// insertion order, so the witness returned for a satisfiable search is
// deterministic. seed entries are respected and extended.
std::optional<Mapping> findHomomorphism(std::span<const Atom> src, const Instance& dst,
                                        Mapping seed = {}, HomOptions opts = {});

// True iff the two ground atoms are isomorphic: same predicate, identical
// rigid positions, and a position-wise bijection between unfrozen nulls.
bool isIsomorphicFacts(const Atom& a, const Atom& b);

// Freezing: every unfrozen null becomes its frozen twin (same id).
Term freezeTerm(const Term& t);
Atom freezeAtom(const Atom& a);
Fact freezeFact(const Fact& f);   // resIt and provenance preserved
Instance freezeInstance(const Instance& inst);

// Every fact of a has a homomorphic image in b under one shared mapping.
bool embedsInto(const Instance& a, const Instance& b, HomOptions opts = {});

// The two instances are equal up to a bijective renaming of null ids
// (frozen/unfrozen flags preserved per occurrence).
bool isomorphicInstances(const Instance& a, const Instance& b);

}  // namespace streamlog
