#pragma once

#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "streamlog/aftree.hpp"
#include "streamlog/canonical.hpp"

namespace streamlog {

enum class FiringKind { Homomorphism, Isomorphism };
enum class HeadCheckMode { PerAtom, Conjunction };

// Streaming-friendly firing condition: decides for each candidate fact
// whether the fire is admissible and, when it is, absorbs the fact into its
// own state. registerFact seeds the state without a check (database facts).
class FiringCondition {
public:
    virtual ~FiringCondition() = default;

    virtual bool admit(const Atom& fact) = 0;
    virtual void registerFact(const Atom& fact) = 0;

    // All head facts of one fire. In per-atom mode each fact is checked and
    // admitted independently, left to right, against the state updated by
    // its siblings. Conditions that support a conjunctive check override
    // this. Fills `admitted` and returns true when at least one fact passed.
    virtual bool admitAll(const std::vector<Atom>& facts, HeadCheckMode mode,
                          std::vector<bool>& admitted);
};

// Blocks a fact when some stored fact is a homomorphic image of it; one
// af-tree per predicate. In conjunction mode the whole instantiated head is
// blocked iff a single null map sends every head fact into the trees.
class HomomorphismCheckS : public FiringCondition {
public:
    bool admit(const Atom& fact) override;
    void registerFact(const Atom& fact) override;
    bool admitAll(const std::vector<Atom>& facts, HeadCheckMode mode,
                  std::vector<bool>& admitted) override;

    const AfTree* tree(const std::string& predicate) const;

private:
    AfTree& treeFor(const Atom& fact);
    std::map<std::string, AfTree> trees_;
};

// Blocks a fact when an isomorphic fact was admitted before: canonicalize,
// hash, and test membership of the 256-bit digest. With paranoid on, the
// canonical facts are stored and compared on every hash hit, so a silent
// collision turns into a loud error.
class IsomorphismCheckS : public FiringCondition {
public:
    explicit IsomorphismCheckS(bool paranoid = false) : paranoid_(paranoid) {}

    bool admit(const Atom& fact) override;
    void registerFact(const Atom& fact) override;

    std::size_t size() const { return seen_.size(); }

private:
    bool insertCanonical(const Atom& canonical);

    bool paranoid_;
    std::unordered_set<Digest, DigestHash> seen_;
    std::unordered_map<Digest, Atom, DigestHash> stored_;
};

std::unique_ptr<FiringCondition> makeFiringCondition(FiringKind kind, bool paranoid = false);

}  // namespace streamlog
