// Seeded random generators for property tests. Everything draws from a
// caller-owned mt19937_64 so failures reproduce from the seed alone.
#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "streamlog/atom.hpp"
#include "streamlog/fragment.hpp"
#include "streamlog/instance.hpp"
#include "streamlog/program.hpp"
#include "streamlog/term.hpp"

namespace gen {

using namespace streamlog;
using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline const std::vector<std::string>& constantPool() {
    static const std::vector<std::string> pool{"a", "b", "c", "d", "e"};
    return pool;
}

// Ground term: constant, shared unfrozen null (ids 1..4) or frozen null.
inline Term randomGroundTerm(Rng& rng) {
    double roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (roll < 0.45) return Term::constant(constantPool()[pick(rng, 5)]);
    if (roll < 0.85) return Term::null(1 + pick(rng, 4));
    return Term::null(1 + pick(rng, 4), /*frozen=*/true);
}

inline Atom randomGroundAtom(Rng& rng, const std::string& pred, std::size_t arity) {
    Atom a;
    a.predicate = pred;
    for (std::size_t i = 0; i < arity; ++i) a.args.push_back(randomGroundTerm(rng));
    return a;
}

inline std::vector<Atom> randomGroundAtoms(Rng& rng, const std::string& pred,
                                           std::size_t arity, std::size_t count) {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(randomGroundAtom(rng, pred, arity));
    return out;
}

// Renames the unfrozen nulls of an atom consistently (yields an isomorph).
inline Atom renameNulls(Rng& rng, const Atom& a) {
    std::map<NullId, NullId> ren;
    Atom out = a;
    NullId base = 100 + pick(rng, 50);
    for (Term& t : out.args)
        if (t.isUnfrozenNull()) {
            auto [it, fresh] = ren.try_emplace(t.nullId(), base + ren.size());
            t = Term::null(it->second);
        }
    return out;
}

// Random program over a small predicate pool. Bodies have 1-2 atoms, heads 1
// atom, at most one existential per rule. Arities are fixed per predicate.
inline Program randomProgram(Rng& rng) {
    static const std::vector<std::string> preds{"p", "q", "r", "s", "t"};
    std::map<std::string, std::size_t> arity;
    for (const auto& p : preds) arity[p] = 1 + pick(rng, 2);  // 1 or 2

    static const std::vector<std::string> vars{"X", "Y", "Z"};
    Program prog;
    std::size_t nRules = 1 + pick(rng, 4);
    for (std::size_t ri = 0; ri < nRules; ++ri) {
        TGD rule;
        rule.id = "g" + std::to_string(ri + 1);
        std::size_t nBody = 1 + (chance(rng, 0.4) ? 1 : 0);
        std::set<std::string> bodyVars;
        for (std::size_t bi = 0; bi < nBody; ++bi) {
            const std::string& p = preds[pick(rng, preds.size())];
            Atom a;
            a.predicate = p;
            for (std::size_t i = 0; i < arity[p]; ++i) {
                if (chance(rng, 0.15))
                    a.args.push_back(Term::constant(constantPool()[pick(rng, 5)]));
                else {
                    const std::string& v = vars[pick(rng, vars.size())];
                    a.args.push_back(Term::variable(v));
                    bodyVars.insert(v);
                }
            }
            rule.body.push_back(std::move(a));
        }
        if (bodyVars.empty()) {
            // keep every rule safe: force one variable into the body
            rule.body[0].args[0] = Term::variable("X");
            bodyVars.insert("X");
        }
        const std::string& hp = preds[pick(rng, preds.size())];
        Atom h;
        h.predicate = hp;
        bool usedExistential = false;
        std::vector<std::string> bv(bodyVars.begin(), bodyVars.end());
        for (std::size_t i = 0; i < arity[hp]; ++i) {
            if (!usedExistential && chance(rng, 0.35)) {
                h.args.push_back(Term::variable("W"));  // existential
                usedExistential = true;
            } else {
                h.args.push_back(Term::variable(bv[pick(rng, bv.size())]));
            }
        }
        rule.head.push_back(std::move(h));
        rule.computeVarPartition();
        prog.rules.push_back(std::move(rule));
    }
    for (const auto& [p, ar] : arity) prog.signature[p] = ar;
    return prog;
}

// Rejection-samples a program inside the given fragment.
inline Program randomShyProgram(Rng& rng) {
    for (;;) {
        Program prog = randomProgram(rng);
        if (classifyProgram(prog).isShy) return prog;
    }
}

// Constant-only database over the program's signature, <= maxFacts facts.
inline Instance randomDatabase(Rng& rng, const Program& prog, std::size_t maxFacts = 12) {
    Instance db;
    std::vector<std::pair<std::string, std::size_t>> sig(prog.signature.begin(),
                                                         prog.signature.end());
    std::size_t n = 1 + pick(rng, maxFacts);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [p, ar] = sig[pick(rng, sig.size())];
        Atom a;
        a.predicate = p;
        for (std::size_t j = 0; j < ar; ++j)
            a.args.push_back(Term::constant(constantPool()[pick(rng, 5)]));
        db.insert(Fact(std::move(a)));
    }
    return db;
}

// BCQ with <= maxAtoms atoms and <= 2 distinct variables over the signature.
inline BCQ randomQuery(Rng& rng, const Program& prog, std::size_t maxAtoms = 3) {
    static const std::vector<std::string> qvars{"U", "V"};
    std::vector<std::pair<std::string, std::size_t>> sig(prog.signature.begin(),
                                                         prog.signature.end());
    BCQ q;
    std::size_t n = 1 + pick(rng, maxAtoms);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [p, ar] = sig[pick(rng, sig.size())];
        Atom a;
        a.predicate = p;
        for (std::size_t j = 0; j < ar; ++j) {
            if (chance(rng, 0.55))
                a.args.push_back(Term::variable(qvars[pick(rng, 2)]));
            else
                a.args.push_back(Term::constant(constantPool()[pick(rng, 5)]));
        }
        q.atoms.push_back(std::move(a));
    }
    return q;
}

// Single-atom (atomic) Boolean query.
inline BCQ randomAtomicQuery(Rng& rng, const Program& prog) {
    return randomQuery(rng, prog, 1);
}

}  // namespace gen
