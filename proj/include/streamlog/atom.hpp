#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamlog/term.hpp"

namespace streamlog {

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool isGround() const;

    bool operator==(const Atom& o) const {
        return predicate == o.predicate && args == o.args;
    }
    bool operator!=(const Atom& o) const { return !(*this == o); }

    std::size_t hashValue() const;
    std::string toString() const;
};

struct AtomHash {
    std::size_t operator()(const Atom& a) const { return a.hashValue(); }
};

// Where a derived fact came from: the rule that fired and the indices of the
// parent facts (into the same Instance / stream log), plus how many freeze
// steps were applied to the fact itself after derivation.
struct Provenance {
    std::string ruleId;
    std::vector<std::size_t> parents;
    std::uint32_t freezes = 0;
};

// A fact is a ground atom plus the resumption iteration it belongs to
// (0 for database facts) and optional provenance.
struct Fact {
    Atom atom;
    std::uint32_t resIt = 0;
    std::optional<Provenance> provenance;

    Fact() = default;
    explicit Fact(Atom a, std::uint32_t res = 0) : atom(std::move(a)), resIt(res) {}

    std::string toString() const { return atom.toString(); }
};

}  // namespace streamlog
