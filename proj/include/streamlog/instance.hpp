#pragma once

#include <unordered_map>
#include <vector>

#include "streamlog/atom.hpp"

namespace streamlog {

// A set of facts with stable insertion order and a per-predicate index.
// Duplicates (term-identical atoms) are never stored twice; re-inserting an
// existing fact keeps the minimum resIt seen for it.
class Instance {
public:
    struct InsertResult {
        std::size_t index;
        bool inserted;
    };

    InsertResult insert(Fact f);

    bool contains(const Atom& a) const { return index_.count(a) != 0; }
    std::size_t indexOf(const Atom& a) const;  // size() when absent

    std::size_t size() const { return facts_.size(); }
    bool empty() const { return facts_.empty(); }
    const Fact& operator[](std::size_t i) const { return facts_[i]; }
    const std::vector<Fact>& facts() const { return facts_; }

    // Indices of facts with the given predicate, in insertion order.
    const std::vector<std::size_t>& withPredicate(const std::string& pred) const;

    std::string toString() const;  // one fact per line, insertion order

private:
    std::vector<Fact> facts_;
    std::unordered_map<Atom, std::size_t, AtomHash> index_;
    std::unordered_map<std::string, std::vector<std::size_t>> byPredicate_;
};

}  // namespace streamlog
