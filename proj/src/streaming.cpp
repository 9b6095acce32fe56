#include "streamlog/streaming.hpp"

#include <deque>
#include <random>

#include "streamlog/fragment.hpp"

namespace streamlog {

std::string StreamStats::toString() const {
    std::string s;
    s += "next_calls=" + std::to_string(nextCalls) + "\n";
    s += "get_calls=" + std::to_string(getCalls) + "\n";
    s += "source_facts=" + std::to_string(sourceFacts) + "\n";
    s += "fires=" + std::to_string(fires) + "\n";
    s += "admissions=" + std::to_string(admissions) + "\n";
    s += "blocks=" + std::to_string(blocks) + "\n";
    s += "freezes=" + std::to_string(freezes()) + "\n";
    s += "freezes_on_blocked=" + std::to_string(freezesOnBlocked) + "\n";
    s += "freezes_on_admitted=" + std::to_string(freezesOnAdmitted) + "\n";
    for (const auto& [res, n] : admittedPerResIt)
        s += "admitted_res_" + std::to_string(res) + "=" + std::to_string(n) + "\n";
    s += std::string("answered_early=") + (answeredEarly ? "true" : "false") + "\n";
    return s;
}

std::string StreamTraceEvent::toString() const {
    const char* name = "?";
    switch (kind) {
        case Kind::Inject: name = "INJECT"; break;
        case Kind::Read: name = "READ"; break;
        case Kind::Fire: name = "FIRE"; break;
        case Kind::Admit: name = "ADMIT"; break;
        case Kind::Block: name = "BLOCK"; break;
        case Kind::Freeze: name = "FREEZE"; break;
    }
    return std::string(name) + " rule=" + scope + " fact=" + fact.toString() +
           " resIt=" + std::to_string(resIt);
}

StreamRouting parseStreamRouting(const std::string& text) {
    if (text == "demand") return StreamRouting::Demand;
    if (text == "rr") return StreamRouting::RoundRobin;
    if (text == "dfs") return StreamRouting::DepthFirst;
    if (text.rfind("rand", 0) == 0) return StreamRouting::Random;
    throw std::invalid_argument("unknown routing '" + text + "' (want demand|rr|dfs|rand:SEED)");
}

namespace {

bool hasUnfrozenNulls(const Atom& a) {
    for (const Term& t : a.args)
        if (t.isUnfrozenNull()) return true;
    return false;
}

// Extends m so the pattern maps onto the fact (same as the batch matcher).
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

// Incremental query matcher: keeps the facts relevant to the query and, on
// each arrival, retries the query seeded at every atom the new fact can fill.
class QueryMatcher {
public:
    explicit QueryMatcher(const BCQ& q) : q_(q) {}

    bool offer(const Fact& f) {
        bool relevant = false;
        for (const Atom& a : q_.atoms)
            if (a.predicate == f.atom.predicate && a.arity() == f.atom.arity()) relevant = true;
        if (!relevant) return false;
        view_.insert(f);
        for (const Atom& a : q_.atoms) {
            Mapping seed;
            std::vector<Term> trail;
            if (!matchAtom(a, f.atom, seed, trail)) continue;
            if (findHomomorphism(q_.atoms, view_, seed).has_value()) return true;
        }
        return false;
    }

private:
    const BCQ& q_;
    Instance view_;
};

class StreamingChase {
public:
    StreamingChase(const Instance& db, const Program& prog, const BCQ& q,
                   const StreamOptions& opts, NullFactory& nulls)
        : prog_(prog), q_(q), opts_(opts), nulls_(nulls), matcher_(q),
          pipe_(compilePipeline(db, prog, q)), db_(db),
          rng_(opts.seed) {
        maxRes_ = opts.maxResOverride.value_or(maxRes(q));
        condition_ = makeFiringCondition(opts.firing, opts.paranoidHash);
        scans_.resize(pipe_.nodes.size());
        for (std::size_t n = 0; n < pipe_.nodes.size(); ++n) {
            if (pipe_.nodes[n].kind != PipelineNode::Kind::Rule) continue;
            scans_[n].perAtom.resize(prog.rules[pipe_.nodes[n].ruleIndex].body.size());
        }
    }

    StreamResult run() {
        FragmentReport rep = classifyProgram(prog_);
        if (!rep.isProtected) {
            result_.fragmentWarning = true;
            result_.fragmentNote = std::string("program is outside the protected fragment (") +
                                   "shy=" + (rep.isShy ? "true" : "false") +
                                   ", warded=" + (rep.isWarded ? "true" : "false") +
                                   "); streaming answers may be incomplete";
        }
        result_.maxRes = maxRes_;

        if (inject()) return finish(true);
        while (auto ev = nextEvent()) {
            if (processRead(ev->first, ev->second)) return finish(true);
        }
        result_.exhausted = true;
        return finish(false);
    }

private:
    struct ScanState {
        std::deque<std::size_t> inbox;                 // pending log indices
        std::vector<std::size_t> read;                 // log indices in read order
        std::vector<std::vector<std::size_t>> perAtom; // read seqs per body atom
    };

    StreamResult finish(bool answer) {
        result_.answer = answer;
        result_.stats.answeredEarly = answer;
        return std::move(result_);
    }

    void trace(StreamTraceEvent::Kind kind, const std::string& scope, const Atom& fact,
               std::uint32_t resIt) {
        if (opts_.trace) opts_.trace({kind, scope, fact, resIt});
    }

    // Feeds every database fact through its source scan: registered with the
    // firing condition, delivered to the children, offered to the query.
    // Returns true if the query is already answered by the database.
    bool inject() {
        bool answered = false;
        for (std::size_t n = 0; n < pipe_.firstRule; ++n) {
            const PipelineNode& node = pipe_.nodes[n];
            for (std::size_t idx : db_.withPredicate(node.label)) {
                Fact f = db_[idx];
                f.resIt = 0;
                ++result_.stats.sourceFacts;
                condition_->registerFact(f.atom);
                trace(StreamTraceEvent::Kind::Inject, node.label, f.atom, f.resIt);
                std::size_t logIdx = append(std::move(f));
                deliver(n, logIdx);
                if (matcher_.offer(log_[logIdx])) answered = true;
            }
        }
        return answered;
    }

    std::size_t append(Fact f) {
        log_.push_back(f);
        result_.admitted.insert(std::move(f));
        return log_.size() - 1;
    }

    void deliver(std::size_t producer, std::size_t logIdx) {
        for (std::size_t child : pipe_.nodes[producer].children)
            scans_[child].inbox.push_back(logIdx);
    }

    // One ⟨scan, fact⟩ read, chosen by the routing policy.
    std::optional<std::pair<std::size_t, std::size_t>> nextEvent() {
        switch (opts_.routing) {
            case StreamRouting::Demand: {
                std::vector<bool> visited(pipe_.nodes.size(), false);
                return demandSearch(pipe_.queryNode(), visited);
            }
            case StreamRouting::RoundRobin: {
                for (std::size_t off = 0; off < pipe_.nodes.size(); ++off) {
                    std::size_t n = (rrCursor_ + off) % pipe_.nodes.size();
                    ++result_.stats.nextCalls;
                    if (!scans_[n].inbox.empty()) {
                        rrCursor_ = n + 1;
                        return pop(n);
                    }
                }
                return std::nullopt;
            }
            case StreamRouting::DepthFirst: {
                // Newest-fact-first: the scan whose pending front is youngest.
                std::optional<std::size_t> best;
                for (std::size_t n = 0; n < pipe_.nodes.size(); ++n) {
                    ++result_.stats.nextCalls;
                    if (scans_[n].inbox.empty()) continue;
                    if (!best || scans_[n].inbox.back() > scans_[*best].inbox.back()) best = n;
                }
                if (!best) return std::nullopt;
                std::size_t idx = scans_[*best].inbox.back();
                scans_[*best].inbox.pop_back();
                ++result_.stats.getCalls;
                return std::make_pair(*best, idx);
            }
            case StreamRouting::Random: {
                std::vector<std::size_t> ready;
                for (std::size_t n = 0; n < pipe_.nodes.size(); ++n) {
                    ++result_.stats.nextCalls;
                    if (!scans_[n].inbox.empty()) ready.push_back(n);
                }
                if (ready.empty()) return std::nullopt;
                std::size_t n = ready[std::uniform_int_distribution<std::size_t>(
                    0, ready.size() - 1)(rng_)];
                return pop(n);
            }
        }
        return std::nullopt;
    }

    // Demand propagation: a scan first lets its parents produce (post-order),
    // then reads its own oldest pending fact. FIFO inboxes keep parents fair.
    std::optional<std::pair<std::size_t, std::size_t>> demandSearch(std::size_t n,
                                                                    std::vector<bool>& visited) {
        visited[n] = true;
        ++result_.stats.nextCalls;
        for (std::size_t p : pipe_.nodes[n].parents) {
            if (visited[p]) continue;
            if (auto ev = demandSearch(p, visited)) return ev;
        }
        if (!scans_[n].inbox.empty()) return pop(n);
        return std::nullopt;
    }

    std::optional<std::pair<std::size_t, std::size_t>> pop(std::size_t n) {
        std::size_t idx = scans_[n].inbox.front();
        scans_[n].inbox.pop_front();
        ++result_.stats.getCalls;
        return std::make_pair(n, idx);
    }

    // A scan consumes one fact: query/source scans only account for it; rule
    // scans look for newly completed body matches and fire them.
    bool processRead(std::size_t n, std::size_t logIdx) {
        const PipelineNode& node = pipe_.nodes[n];
        trace(StreamTraceEvent::Kind::Read, node.label, log_[logIdx].atom, log_[logIdx].resIt);
        if (node.kind != PipelineNode::Kind::Rule) return false;

        ScanState& scan = scans_[n];
        const TGD& rule = prog_.rules[node.ruleIndex];
        std::size_t seq = scan.read.size();
        scan.read.push_back(logIdx);
        const Atom& atom = log_[logIdx].atom;

        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            if (rule.body[i].predicate == atom.predicate &&
                rule.body[i].arity() == atom.arity())
                scan.perAtom[i].push_back(seq);
        }
        // Seed each body atom the new fact can fill; older atoms take
        // strictly older reads so every trigger fires exactly once.
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            if (rule.body[i].predicate != atom.predicate ||
                rule.body[i].arity() != atom.arity())
                continue;
            Mapping m;
            std::vector<Term> trail;
            if (!matchAtom(rule.body[i], atom, m, trail)) continue;
            std::vector<std::size_t> chosen(rule.body.size());
            chosen[i] = logIdx;
            if (enumerate(n, rule, i, seq, 0, m, chosen)) return true;
        }
        return false;
    }

    bool enumerate(std::size_t n, const TGD& rule, std::size_t seedAtom, std::size_t seedSeq,
                   std::size_t atomIdx, Mapping& m, std::vector<std::size_t>& chosen) {
        if (atomIdx == rule.body.size()) return fire(n, rule, chosen);
        if (atomIdx == seedAtom)
            return enumerate(n, rule, seedAtom, seedSeq, atomIdx + 1, m, chosen);
        ScanState& scan = scans_[n];
        std::size_t limit = atomIdx < seedAtom ? seedSeq : seedSeq + 1;
        for (std::size_t s : scan.perAtom[atomIdx]) {
            if (s >= limit) break;
            std::size_t logIdx = scan.read[s];
            std::vector<Term> trail;
            if (matchAtom(rule.body[atomIdx], log_[logIdx].atom, m, trail)) {
                chosen[atomIdx] = logIdx;
                if (enumerate(n, rule, seedAtom, seedSeq, atomIdx + 1, m, chosen)) return true;
            }
            for (const Term& t : trail) m.unbind(t);
        }
        return false;
    }

    // Instantiates the head of one trigger and pushes the candidates through
    // the firing condition, with the fact-level freeze-and-retry step.
    // Returns true as soon as the query is answered.
    bool fire(std::size_t n, const TGD& rule, const std::vector<std::size_t>& parents) {
        Mapping theta;
        std::vector<Term> trail;
        for (std::size_t i = 0; i < rule.body.size(); ++i)
            matchAtom(rule.body[i], log_[parents[i]].atom, theta, trail);

        std::vector<Term> frontier;
        for (const std::string& v : rule.frontierVars)
            frontier.push_back(*theta.image(Term::variable(v)));
        for (const std::string& z : rule.existentialVars)
            theta.bind(Term::variable(z), nulls_.make(rule.id, z, frontier));

        std::uint32_t resIt = 0;
        for (std::size_t p : parents) resIt = std::max(resIt, log_[p].resIt);

        std::vector<Atom> headFacts = apply(theta, rule.head, /*requireGround=*/true);

        if (opts_.firing == FiringKind::Homomorphism &&
            opts_.headCheck == HeadCheckMode::Conjunction && headFacts.size() > 1)
            return fireConjunction(n, rule, parents, headFacts, resIt);

        for (const Atom& a : headFacts)
            if (firePerAtom(n, rule, parents, a, resIt)) return true;
        return false;
    }

    bool firePerAtom(std::size_t n, const TGD& rule, const std::vector<std::size_t>& parents,
                     Atom candidate, std::uint32_t resIt) {
        std::uint32_t freezes = 0;
        while (true) {
            ++result_.stats.fires;
            trace(StreamTraceEvent::Kind::Fire, rule.id, candidate, resIt);
            bool ok = condition_->admit(candidate);
            if (ok) {
                if (admit(n, rule.id, candidate, resIt, parents, freezes)) return true;
            } else {
                ++result_.stats.blocks;
                trace(StreamTraceEvent::Kind::Block, rule.id, candidate, resIt);
            }
            bool wantFreeze = ok ? opts_.freezeAdmitted : true;
            if (!wantFreeze || !hasUnfrozenNulls(candidate) || resIt + 1 >= maxRes_) return false;
            (ok ? result_.stats.freezesOnAdmitted : result_.stats.freezesOnBlocked)++;
            candidate = freezeAtom(candidate);
            ++resIt;
            ++freezes;
            trace(StreamTraceEvent::Kind::Freeze, rule.id, candidate, resIt);
        }
    }

    bool fireConjunction(std::size_t n, const TGD& rule, const std::vector<std::size_t>& parents,
                         std::vector<Atom> headFacts, std::uint32_t resIt) {
        std::uint32_t freezes = 0;
        while (true) {
            std::vector<bool> admitted;
            result_.stats.fires += headFacts.size();
            for (const Atom& a : headFacts) trace(StreamTraceEvent::Kind::Fire, rule.id, a, resIt);
            bool any = condition_->admitAll(headFacts, HeadCheckMode::Conjunction, admitted);
            if (any) {
                for (std::size_t i = 0; i < headFacts.size(); ++i)
                    if (admitted[i] &&
                        admit(n, rule.id, headFacts[i], resIt, parents, freezes))
                        return true;
            } else {
                result_.stats.blocks += headFacts.size();
                for (const Atom& a : headFacts)
                    trace(StreamTraceEvent::Kind::Block, rule.id, a, resIt);
            }
            bool unfrozen = false;
            for (const Atom& a : headFacts) unfrozen = unfrozen || hasUnfrozenNulls(a);
            bool wantFreeze = any ? opts_.freezeAdmitted : true;
            if (!wantFreeze || !unfrozen || resIt + 1 >= maxRes_) return false;
            (any ? result_.stats.freezesOnAdmitted : result_.stats.freezesOnBlocked)++;
            for (Atom& a : headFacts) {
                a = freezeAtom(a);
                trace(StreamTraceEvent::Kind::Freeze, rule.id, a, resIt + 1);
            }
            ++resIt;
            ++freezes;
        }
    }

    // A candidate passed the condition: log it, hand it to the children and
    // the query matcher. Returns true when the query just became true.
    bool admit(std::size_t n, const std::string& ruleId, const Atom& a, std::uint32_t resIt,
               const std::vector<std::size_t>& parents, std::uint32_t freezes) {
        ++result_.stats.admissions;
        ++result_.stats.admittedPerResIt[resIt];
        trace(StreamTraceEvent::Kind::Admit, ruleId, a, resIt);
        Fact f(a, resIt);
        f.provenance = Provenance{ruleId, parents, freezes};
        std::size_t logIdx = append(std::move(f));
        deliver(n, logIdx);
        return matcher_.offer(log_[logIdx]);
    }

    const Program& prog_;
    const BCQ& q_;
    const StreamOptions& opts_;
    NullFactory& nulls_;
    QueryMatcher matcher_;
    Pipeline pipe_;
    const Instance& db_;
    std::mt19937_64 rng_;
    std::uint32_t maxRes_ = 1;

    std::unique_ptr<FiringCondition> condition_;
    std::vector<Fact> log_;
    std::vector<ScanState> scans_;
    std::size_t rrCursor_ = 0;
    StreamResult result_;
};

}  // namespace

StreamResult chaseStreaming(const Instance& db, const Program& prog, const BCQ& q,
                            const StreamOptions& opts, NullFactory& nulls) {
    return StreamingChase(db, prog, q, opts, nulls).run();
}

}  // namespace streamlog
