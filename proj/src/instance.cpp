#include "streamlog/instance.hpp"

#include <stdexcept>

namespace streamlog {

Instance::InsertResult Instance::insert(Fact f) {
    if (!f.atom.isGround())
        throw std::invalid_argument("Instance::insert: fact is not ground: " + f.atom.toString());
    auto it = index_.find(f.atom);
    if (it != index_.end()) {
        Fact& stored = facts_[it->second];
        if (f.resIt < stored.resIt) stored.resIt = f.resIt;
        return {it->second, false};
    }
    std::size_t idx = facts_.size();
    index_.emplace(f.atom, idx);
    byPredicate_[f.atom.predicate].push_back(idx);
    facts_.push_back(std::move(f));
    return {idx, true};
}

std::size_t Instance::indexOf(const Atom& a) const {
    auto it = index_.find(a);
    return it == index_.end() ? facts_.size() : it->second;
}

const std::vector<std::size_t>& Instance::withPredicate(const std::string& pred) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = byPredicate_.find(pred);
    return it == byPredicate_.end() ? kEmpty : it->second;
}

std::string Instance::toString() const {
    std::string s;
    for (const Fact& f : facts_) {
        s += f.atom.toString();
        s += '\n';
    }
    return s;
}

}  // namespace streamlog
