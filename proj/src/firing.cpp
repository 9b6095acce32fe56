#include "streamlog/firing.hpp"

#include <stdexcept>

namespace streamlog {

bool FiringCondition::admitAll(const std::vector<Atom>& facts, HeadCheckMode,
                               std::vector<bool>& admitted) {
    admitted.assign(facts.size(), false);
    bool any = false;
    for (std::size_t i = 0; i < facts.size(); ++i) {
        admitted[i] = admit(facts[i]);
        any = any || admitted[i];
    }
    return any;
}

AfTree& HomomorphismCheckS::treeFor(const Atom& fact) {
    auto it = trees_.find(fact.predicate);
    if (it == trees_.end())
        it = trees_.emplace(fact.predicate, AfTree(fact.predicate, fact.arity())).first;
    return it->second;
}

const AfTree* HomomorphismCheckS::tree(const std::string& predicate) const {
    auto it = trees_.find(predicate);
    return it == trees_.end() ? nullptr : &it->second;
}

bool HomomorphismCheckS::admit(const Atom& fact) {
    AfTree& tree = treeFor(fact);
    NullMap nm;
    if (tree.homExists(fact.args, nm)) return false;
    tree.insert(fact);
    return true;
}

void HomomorphismCheckS::registerFact(const Atom& fact) { treeFor(fact).insert(fact); }

bool HomomorphismCheckS::admitAll(const std::vector<Atom>& facts, HeadCheckMode mode,
                                  std::vector<bool>& admitted) {
    if (mode == HeadCheckMode::PerAtom || facts.size() <= 1)
        return FiringCondition::admitAll(facts, HeadCheckMode::PerAtom, admitted);

    // Conjunctive check: one shared null map must send every head fact into
    // the trees for the fire to be blocked. Trees without facts for some
    // predicate make the conjunction unsatisfiable immediately.
    std::function<bool(std::size_t, NullMap&)> chain = [&](std::size_t k, NullMap& nm) -> bool {
        if (k == facts.size()) return true;
        const AfTree* t = tree(facts[k].predicate);
        if (t == nullptr) return false;
        return t->homExists(facts[k].args, nm, [&] { return chain(k + 1, nm); });
    };
    NullMap nm;
    if (chain(0, nm)) {
        admitted.assign(facts.size(), false);
        return false;
    }
    admitted.assign(facts.size(), true);
    for (const Atom& f : facts) treeFor(f).insert(f);
    return true;
}

bool IsomorphismCheckS::insertCanonical(const Atom& canonical) {
    Digest d = canonicalDigest(canonical);
    if (seen_.count(d)) {
        if (paranoid_) {
            auto it = stored_.find(d);
            if (it == stored_.end() || it->second != canonical)
                throw std::runtime_error("canonical hash collision on " + canonical.toString());
        }
        return false;
    }
    seen_.insert(d);
    if (paranoid_) stored_.emplace(d, canonical);
    return true;
}

bool IsomorphismCheckS::admit(const Atom& fact) {
    return insertCanonical(canonicalizeAtom(fact));
}

void IsomorphismCheckS::registerFact(const Atom& fact) {
    insertCanonical(canonicalizeAtom(fact));
}

std::unique_ptr<FiringCondition> makeFiringCondition(FiringKind kind, bool paranoid) {
    if (kind == FiringKind::Homomorphism) return std::make_unique<HomomorphismCheckS>();
    return std::make_unique<IsomorphismCheckS>(paranoid);
}

}  // namespace streamlog
