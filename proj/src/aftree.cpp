#include "streamlog/aftree.hpp"

#include <stdexcept>

namespace streamlog {

AfTree::AfTree(std::string predicate, std::size_t arity)
    : predicate_(std::move(predicate)), arity_(arity) {
    nodes_.emplace_back();  // root
}

std::size_t AfTree::childOf(std::size_t node, const Term& label) const {
    for (const auto& [l, idx] : nodes_[node].children)
        if (l == label) return idx;
    return npos;
}

bool AfTree::insert(const Atom& fact) {
    if (fact.predicate != predicate_ || fact.arity() != arity_)
        throw std::invalid_argument("AfTree::insert: fact does not match " + predicate_ + "/" +
                                    std::to_string(arity_));
    std::size_t node = 0;
    bool fresh = false;
    for (const Term& t : fact.args) {
        if (!t.isGround())
            throw std::invalid_argument("AfTree::insert: non-ground fact " + fact.toString());
        std::size_t next = childOf(node, t);
        if (next == npos) {
            next = nodes_.size();
            nodes_.emplace_back();
            nodes_[node].children.emplace_back(t, next);
            fresh = true;
        }
        node = next;
    }
    if (fresh) ++facts_;
    return fresh;
}

bool AfTree::contains(const Atom& fact) const {
    std::size_t node = 0;
    for (const Term& t : fact.args) {
        node = childOf(node, t);
        if (node == npos) return false;
    }
    return true;
}

bool AfTree::visit(std::span<const Term> args, std::size_t i, std::size_t node,
                   NullMap& nullMap, const std::function<bool()>& onLeaf) const {
    if (i == args.size())  // complete root-to-leaf path
        return onLeaf ? onLeaf() : true;
    const Term& t = args[i];
    if (t.isRigid()) {
        std::size_t next = childOf(node, t);
        return next != npos && visit(args, i + 1, next, nullMap, onLeaf);
    }
    if (!t.isUnfrozenNull())
        throw std::invalid_argument("AfTree::homExists: non-ground argument " + t.toString());
    auto bound = nullMap.find(t);
    if (bound != nullMap.end()) {
        std::size_t next = childOf(node, bound->second);
        return next != npos && visit(args, i + 1, next, nullMap, onLeaf);
    }
    for (const auto& [label, next] : nodes_[node].children) {
        nullMap.emplace(t, label);
        if (visit(args, i + 1, next, nullMap, onLeaf)) return true;
        nullMap.erase(t);
    }
    return false;
}

bool AfTree::homExists(std::span<const Term> args, NullMap& nullMap,
                       const std::function<bool()>& onLeaf) const {
    if (args.size() != arity_)
        throw std::invalid_argument("AfTree::homExists: arity mismatch for " + predicate_);
    return visit(args, 0, 0, nullMap, onLeaf);
}

void AfTree::collect(std::size_t node, Atom& prefix, std::vector<Atom>& out) const {
    if (prefix.args.size() == arity_) {
        out.push_back(prefix);
        return;
    }
    for (const auto& [label, next] : nodes_[node].children) {
        prefix.args.push_back(label);
        collect(next, prefix, out);
        prefix.args.pop_back();
    }
}

std::vector<Atom> AfTree::enumerate() const {
    std::vector<Atom> out;
    Atom prefix;
    prefix.predicate = predicate_;
    collect(0, prefix, out);
    return out;
}

}  // namespace streamlog
