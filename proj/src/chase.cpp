#include "streamlog/chase.hpp"

#include <deque>
#include <random>
#include <stdexcept>

namespace streamlog {

std::string variantName(ChaseVariant v) {
    switch (v) {
        case ChaseVariant::Oblivious: return "ochase";
        case ChaseVariant::Parsimonious: return "pchase";
        case ChaseVariant::Isomorphic: return "ichase";
    }
    return "?";
}

RoutingPolicy RoutingPolicy::parse(const std::string& text) {
    RoutingPolicy p;
    if (text == "rr") {
        p.kind = Kind::RoundRobin;
    } else if (text == "dfs") {
        p.kind = Kind::DepthFirst;
    } else if (text == "rand") {
        p.kind = Kind::Random;
    } else if (text.rfind("rand:", 0) == 0) {
        p.kind = Kind::Random;
        p.seed = std::stoull(text.substr(5));
    } else {
        throw std::invalid_argument("unknown routing '" + text + "' (want rr|dfs|rand:SEED)");
    }
    return p;
}

std::string RoutingPolicy::toString() const {
    switch (kind) {
        case Kind::RoundRobin: return "rr";
        case Kind::DepthFirst: return "dfs";
        case Kind::Random: return "rand:" + std::to_string(seed);
    }
    return "?";
}

std::string ChaseStats::toString() const {
    std::string s;
    s += "fires_attempted=" + std::to_string(firesAttempted) + "\n";
    s += "fires_admitted=" + std::to_string(firesAdmitted) + "\n";
    s += "facts_admitted=" + std::to_string(factsAdmitted) + "\n";
    s += "blocked=" + std::to_string(blocked) + "\n";
    for (std::size_t i = 0; i < factsPerResumption.size(); ++i)
        s += "facts_resumption_" + std::to_string(i) + "=" +
             std::to_string(factsPerResumption[i]) + "\n";
    return s;
}

namespace {

// A fully matched rule body: one instance fact per body atom.
struct Trigger {
    std::size_t rule;
    std::vector<std::size_t> facts;
};

class TriggerScheduler {
public:
    TriggerScheduler(RoutingPolicy policy, std::size_t numRules)
        : policy_(policy), perRule_(numRules), rng_(policy.seed) {}

    void push(Trigger t) {
        ++pending_;
        if (policy_.kind == RoutingPolicy::Kind::RoundRobin)
            perRule_[t.rule].push_back(std::move(t));
        else
            flat_.push_back(std::move(t));
    }

    std::optional<Trigger> pop() {
        if (pending_ == 0) return std::nullopt;
        --pending_;
        switch (policy_.kind) {
            case RoutingPolicy::Kind::RoundRobin: {
                // Serve every trigger that was already queued for the current
                // rule when its turn began; triggers discovered while the rule
                // is firing wait for the next cycle.
                if (drainRemaining_ == 0) {
                    for (std::size_t off = 0; off <= perRule_.size(); ++off) {
                        std::size_t r = (cursor_ + off) % perRule_.size();
                        if (!perRule_[r].empty()) {
                            cursor_ = r;
                            drainRemaining_ = perRule_[r].size();
                            break;
                        }
                    }
                    if (drainRemaining_ == 0)
                        return std::nullopt;  // unreachable while pending_ is accurate
                }
                Trigger t = std::move(perRule_[cursor_].front());
                perRule_[cursor_].pop_front();
                if (--drainRemaining_ == 0) cursor_ = (cursor_ + 1) % perRule_.size();
                return t;
            }
            case RoutingPolicy::Kind::DepthFirst: {
                Trigger t = std::move(flat_.back());
                flat_.pop_back();
                return t;
            }
            case RoutingPolicy::Kind::Random: {
                std::size_t i = std::uniform_int_distribution<std::size_t>(
                    0, flat_.size() - 1)(rng_);
                Trigger t = std::move(flat_[i]);
                flat_.erase(flat_.begin() + static_cast<std::ptrdiff_t>(i));
                return t;
            }
        }
        return std::nullopt;
    }

    bool empty() const { return pending_ == 0; }

private:
    RoutingPolicy policy_;
    std::size_t cursor_ = 0;
    std::size_t drainRemaining_ = 0;
    std::vector<std::deque<Trigger>> perRule_;
    std::vector<Trigger> flat_;
    std::mt19937_64 rng_;
    std::size_t pending_ = 0;
};

// Extends m so that the body atom maps onto the fact; trail records added
// bindings for undo.
bool matchAtom(const Atom& pattern, const Atom& fact, Mapping& m, std::vector<Term>& trail) {
    if (pattern.predicate != fact.predicate || pattern.arity() != fact.arity()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& p = pattern.args[i];
        if (p.isRigid()) {
            if (p != fact.args[i]) return false;
            continue;
        }
        std::optional<Term> img = m.image(p);
        if (img) {
            if (*img != fact.args[i]) return false;
            continue;
        }
        m.bind(p, fact.args[i]);
        trail.push_back(p);
    }
    return true;
}

class BatchChase {
public:
    BatchChase(const Instance& db, const Program& prog, const ChaseConfig& cfg,
               NullFactory& nulls, std::uint32_t resTag)
        : prog_(prog), cfg_(cfg), nulls_(nulls), resTag_(resTag),
          sched_(cfg.routing, prog.rules.size()) {
        if (cfg.variant == ChaseVariant::Oblivious && !cfg.budget) {
            for (const TGD& r : prog.rules)
                if (r.hasExistentials())
                    throw std::invalid_argument(
                        "ochase on a program with existentials requires a budget");
        }
        result_.instance = db;
    }

    ChaseResult run() {
        for (std::size_t i = 0; i < result_.instance.size(); ++i) discover(i);
        while (!sched_.empty()) {
            if (cfg_.budget && result_.stats.firesAdmitted >= *cfg_.budget) {
                result_.truncated = true;
                break;
            }
            std::optional<Trigger> t = sched_.pop();
            if (!t) break;
            fire(*t);
        }
        return std::move(result_);
    }

private:
    // Finds every new trigger whose newest fact is fIdx: the seed body atom
    // is the first one holding fIdx, earlier atoms use strictly older facts,
    // later ones anything up to fIdx. Each trigger is discovered exactly once.
    void discover(std::size_t fIdx) {
        const Fact& f = result_.instance[fIdx];
        for (std::size_t r = 0; r < prog_.rules.size(); ++r) {
            const TGD& rule = prog_.rules[r];
            for (std::size_t i = 0; i < rule.body.size(); ++i) {
                Mapping m;
                std::vector<Term> trail;
                if (!matchAtom(rule.body[i], f.atom, m, trail)) continue;
                std::vector<std::size_t> chosen(rule.body.size());
                chosen[i] = fIdx;
                enumerate(r, i, fIdx, 0, m, chosen);
            }
        }
    }

    void enumerate(std::size_t r, std::size_t seedAtom, std::size_t fIdx, std::size_t atomIdx,
                   Mapping& m, std::vector<std::size_t>& chosen) {
        const TGD& rule = prog_.rules[r];
        if (atomIdx == rule.body.size()) {
            sched_.push({r, chosen});
            return;
        }
        if (atomIdx == seedAtom) {
            enumerate(r, seedAtom, fIdx, atomIdx + 1, m, chosen);
            return;
        }
        std::size_t limit = atomIdx < seedAtom ? fIdx : fIdx + 1;
        for (std::size_t idx : result_.instance.withPredicate(rule.body[atomIdx].predicate)) {
            if (idx >= limit) break;
            std::vector<Term> trail;
            if (matchAtom(rule.body[atomIdx], result_.instance[idx].atom, m, trail)) {
                chosen[atomIdx] = idx;
                enumerate(r, seedAtom, fIdx, atomIdx + 1, m, chosen);
            }
            for (const Term& t : trail) m.unbind(t);
        }
    }

    bool blockedByCondition(const Atom& candidate) {
        switch (cfg_.variant) {
            case ChaseVariant::Oblivious:
                return false;
            case ChaseVariant::Parsimonious: {
                const Atom atoms[] = {candidate};
                return findHomomorphism(atoms, result_.instance).has_value();
            }
            case ChaseVariant::Isomorphic: {
                for (std::size_t idx : result_.instance.withPredicate(candidate.predicate))
                    if (isIsomorphicFacts(candidate, result_.instance[idx].atom)) return true;
                return false;
            }
        }
        return false;
    }

    void fire(const Trigger& t) {
        const TGD& rule = prog_.rules[t.rule];
        ++result_.stats.firesAttempted;

        Mapping theta;
        std::vector<Term> trail;
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            bool ok = matchAtom(rule.body[i], result_.instance[t.facts[i]].atom, theta, trail);
            if (!ok) throw std::logic_error("stale trigger");  // facts never change
        }

        std::vector<Term> frontier;
        for (const std::string& v : rule.frontierVars)
            frontier.push_back(*theta.image(Term::variable(v)));
        std::uint64_t salt = 0;
        if (cfg_.variant == ChaseVariant::Oblivious && rule.hasExistentials())
            salt = nulls_.bumpFire(rule.id, frontier);
        for (const std::string& z : rule.existentialVars)
            theta.bind(Term::variable(z), nulls_.make(rule.id, z, frontier, salt));

        std::vector<Atom> headFacts = apply(theta, rule.head, /*requireGround=*/true);

        bool admittedAny = false;
        auto admitFact = [&](const Atom& a) {
            Fact f(a, resTag_);
            f.provenance = Provenance{rule.id, t.facts, 0};
            auto [idx, inserted] = result_.instance.insert(std::move(f));
            if (inserted) {
                ++result_.stats.factsAdmitted;
                admittedAny = true;
                discover(idx);
            }
        };

        if (cfg_.variant == ChaseVariant::Parsimonious &&
            cfg_.headCheck == HeadCheckMode::Conjunction && headFacts.size() > 1) {
            if (findHomomorphism(headFacts, result_.instance).has_value()) {
                result_.stats.blocked += headFacts.size();
            } else {
                for (const Atom& a : headFacts) admitFact(a);
            }
        } else {
            for (const Atom& a : headFacts) {
                if (blockedByCondition(a)) {
                    ++result_.stats.blocked;
                    continue;
                }
                admitFact(a);
            }
        }

        if (admittedAny) ++result_.stats.firesAdmitted;
        // The oblivious chase keeps refiring existential triggers; each fire
        // invents fresh nulls, so the running example really is infinite.
        if (cfg_.variant == ChaseVariant::Oblivious && rule.hasExistentials()) sched_.push(t);
    }

    const Program& prog_;
    const ChaseConfig& cfg_;
    NullFactory& nulls_;
    std::uint32_t resTag_;
    TriggerScheduler sched_;
    ChaseResult result_;
};

}  // namespace

ChaseResult chaseBatch(const Instance& db, const Program& prog, const ChaseConfig& cfg,
                       NullFactory& nulls, std::uint32_t resTag) {
    return BatchChase(db, prog, cfg, nulls, resTag).run();
}

ChaseResult chaseResumed(const Instance& db, const Program& prog, std::uint32_t iterations,
                         const ChaseConfig& cfg, NullFactory& nulls) {
    ChaseResult out;
    out.instance = db;
    for (std::uint32_t k = 1; k <= iterations; ++k) {
        Instance input = freezeInstance(out.instance);
        std::size_t before = input.size();
        ChaseResult round = chaseBatch(input, prog, cfg, nulls, k - 1);
        out.truncated = out.truncated || round.truncated;
        out.stats.firesAttempted += round.stats.firesAttempted;
        out.stats.firesAdmitted += round.stats.firesAdmitted;
        out.stats.factsAdmitted += round.stats.factsAdmitted;
        out.stats.blocked += round.stats.blocked;
        out.stats.factsPerResumption.push_back(round.instance.size() - before);
        out.instance = std::move(round.instance);
    }
    return out;
}

}  // namespace streamlog
