#include "streamlog/homomorphism.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace streamlog {

std::optional<Term> Mapping::image(const Term& t) const {
    if (t.isRigid()) return t;
    auto it = map_.find(t);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void Mapping::bind(const Term& t, const Term& image) {
    if (t.isRigid())
        throw std::invalid_argument("Mapping::bind: cannot bind " + t.toString());
    if (!image.isGround())
        throw std::invalid_argument("Mapping::bind: image is not ground: " + image.toString());
    map_[t] = image;
}

void Mapping::unbind(const Term& t) { map_.erase(t); }

std::string Mapping::toString() const {
    std::map<Term, Term> sorted(map_.begin(), map_.end());
    std::string s = "{";
    bool first = true;
    for (const auto& [k, v] : sorted) {
        if (!first) s += ", ";
        first = false;
        s += k.toString() + " -> " + v.toString();
    }
    s += "}";
    return s;
}

Atom apply(const Mapping& m, const Atom& atom, bool requireGround) {
    Atom out;
    out.predicate = atom.predicate;
    out.args.reserve(atom.args.size());
    for (const Term& t : atom.args) {
        std::optional<Term> img = m.image(t);
        if (img) {
            out.args.push_back(*img);
        } else {
            if (requireGround && t.isVariable())
                throw std::invalid_argument("apply: unmapped variable " + t.symbol() +
                                            " in " + atom.toString());
            out.args.push_back(t);
        }
    }
    return out;
}

std::vector<Atom> apply(const Mapping& m, std::span<const Atom> atoms, bool requireGround) {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const Atom& a : atoms) out.push_back(apply(m, a, requireGround));
    return out;
}

namespace {

// Tries to extend m so that pattern maps onto the ground atom fact; records
// the bindings it added in trail so the caller can undo them.
bool unifyInto(const Atom& pattern, const Atom& fact, Mapping& m,
               std::vector<Term>& trail, const HomOptions& opts) {
    if (pattern.predicate != fact.predicate || pattern.arity() != fact.arity())
        return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& p = pattern.args[i];
        const Term& f = fact.args[i];
        if (p.isRigid()) {
            if (p != f) return false;
            continue;
        }
        std::optional<Term> img = m.image(p);
        if (img) {
            if (*img != f) return false;
            continue;
        }
        if (opts.injectiveNulls && p.isUnfrozenNull()) {
            bool taken = false;
            for (const auto& [src, dst] : m.entries())
                if (src.isUnfrozenNull() && dst == f) { taken = true; break; }
            if (taken) return false;
        }
        m.bind(p, f);
        trail.push_back(p);
    }
    return true;
}

bool search(std::span<const Atom> src, std::size_t k, const Instance& dst, Mapping& m,
            const HomOptions& opts) {
    if (k == src.size()) return true;
    const Atom& atom = src[k];
    for (std::size_t idx : dst.withPredicate(atom.predicate)) {
        std::vector<Term> trail;
        if (unifyInto(atom, dst[idx].atom, m, trail, opts)) {
            if (search(src, k + 1, dst, m, opts)) return true;
        }
        for (const Term& t : trail) m.unbind(t);
    }
    return false;
}

}  // namespace

std::optional<Mapping> findHomomorphism(std::span<const Atom> src, const Instance& dst,
                                        Mapping seed, HomOptions opts) {
    if (search(src, 0, dst, seed, opts)) return seed;
    return std::nullopt;
}

bool isIsomorphicFacts(const Atom& a, const Atom& b) {
    if (!a.isGround() || !b.isGround())
        throw std::invalid_argument("isIsomorphicFacts: atoms must be ground");
    if (a.predicate != b.predicate || a.arity() != b.arity()) return false;
    std::unordered_map<Term, Term, TermHash> fwd, bwd;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        const Term& x = a.args[i];
        const Term& y = b.args[i];
        if (x.isRigid() || y.isRigid()) {
            if (x != y) return false;
            continue;
        }
        auto f = fwd.find(x);
        if (f != fwd.end() && f->second != y) return false;
        auto g = bwd.find(y);
        if (g != bwd.end() && g->second != x) return false;
        fwd.emplace(x, y);
        bwd.emplace(y, x);
    }
    return true;
}

Term freezeTerm(const Term& t) { return t.frozenTwin(); }

Atom freezeAtom(const Atom& a) {
    Atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(t.frozenTwin());
    return out;
}

Fact freezeFact(const Fact& f) {
    Fact out = f;
    out.atom = freezeAtom(f.atom);
    return out;
}

Instance freezeInstance(const Instance& inst) {
    Instance out;
    for (const Fact& f : inst.facts()) out.insert(freezeFact(f));
    return out;
}

bool embedsInto(const Instance& a, const Instance& b, HomOptions opts) {
    std::vector<Atom> src;
    src.reserve(a.size());
    for (const Fact& f : a.facts()) src.push_back(f.atom);
    return findHomomorphism(src, b, {}, opts).has_value();
}

namespace {

// Backtracking match of a's facts onto distinct facts of b under one
// bijective renaming of null ids.
struct IsoState {
    std::unordered_map<NullId, NullId> fwd, bwd;
    std::vector<bool> used;
};

bool renameMatches(const Atom& a, const Atom& b, IsoState& st,
                   std::vector<std::pair<NullId, NullId>>& trail) {
    if (a.predicate != b.predicate || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        const Term& x = a.args[i];
        const Term& y = b.args[i];
        if (x.isNull() != y.isNull()) return false;
        if (!x.isNull()) {
            if (x != y) return false;
            continue;
        }
        if (x.frozen() != y.frozen()) return false;
        auto f = st.fwd.find(x.nullId());
        auto g = st.bwd.find(y.nullId());
        if (f != st.fwd.end()) {
            if (f->second != y.nullId()) return false;
            continue;
        }
        if (g != st.bwd.end()) return false;  // y already taken by another id
        st.fwd.emplace(x.nullId(), y.nullId());
        st.bwd.emplace(y.nullId(), x.nullId());
        trail.emplace_back(x.nullId(), y.nullId());
    }
    return true;
}

bool isoSearch(const Instance& a, std::size_t k, const Instance& b, IsoState& st) {
    if (k == a.size()) return true;
    const Atom& atom = a[k].atom;
    for (std::size_t idx : b.withPredicate(atom.predicate)) {
        if (st.used[idx]) continue;
        std::vector<std::pair<NullId, NullId>> trail;
        if (renameMatches(atom, b[idx].atom, st, trail)) {
            st.used[idx] = true;
            if (isoSearch(a, k + 1, b, st)) return true;
            st.used[idx] = false;
        }
        for (const auto& [x, y] : trail) {
            st.fwd.erase(x);
            st.bwd.erase(y);
        }
    }
    return false;
}

}  // namespace

bool isomorphicInstances(const Instance& a, const Instance& b) {
    if (a.size() != b.size()) return false;
    IsoState st;
    st.used.assign(b.size(), false);
    return isoSearch(a, 0, b, st);
}

}  // namespace streamlog
