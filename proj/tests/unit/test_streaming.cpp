#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "streamlog/chase.hpp"
#include "streamlog/homomorphism.hpp"
#include "streamlog/parser.hpp"
#include "streamlog/pipeline.hpp"
#include "streamlog/query.hpp"
#include "streamlog/streaming.hpp"
#include "support/fixtures.hpp"

using namespace streamlog;
using fixtures::atom;

namespace {

struct Setup {
    Program prog;
    Instance db;
    Signature sig;

    Setup() : prog(fixtures::runningProgram()), db(fixtures::runningDb(prog)) {
        sig = prog.signature;
    }

    BCQ query(const std::string& text) { return parseQuery(text, sig); }
};

std::set<std::string> edgeSet(const Pipeline& p) {
    std::set<std::string> out;
    std::istringstream in(p.toString());
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.insert(line);
    return out;
}

// runs the streaming chase collecting the trace
StreamResult runStream(Setup& s, const std::string& queryText, StreamOptions opts,
                       std::vector<StreamTraceEvent>* events = nullptr) {
    if (events != nullptr)
        opts.trace = [events](const StreamTraceEvent& e) { events->push_back(e); };
    NullFactory nulls;
    BCQ q = s.query(queryText);
    return chaseStreaming(s.db, s.prog, q, opts, nulls);
}

}  // namespace

TEST_CASE("atom unification for pipeline wiring") {
    Atom head = atom("p", {Term::constant("a"), Term::variable("X")});
    CHECK(atomsUnify(head, atom("p", {Term::variable("Y"), Term::constant("b")})));
    CHECK_FALSE(atomsUnify(head, atom("p", {Term::constant("b"), Term::variable("Y")})));
    CHECK_FALSE(atomsUnify(head, atom("q", {Term::constant("a"), Term::variable("X")})));
    CHECK_FALSE(atomsUnify(head, atom("p", {Term::constant("a")})));
}

TEST_CASE("the employee pipeline has ten edges including the beta self-loop") {
    Setup s;
    BCQ q = s.query("? :- knows(alice,bob).");
    Pipeline pipe = compilePipeline(s.db, s.prog, q);

    // sources first (database order), then rules (program order), query last
    REQUIRE(pipe.nodes.size() == 7);
    CHECK(pipe.nodes[0].label == "employee");
    CHECK(pipe.nodes[1].label == "hasBoss");
    CHECK(pipe.firstRule == 2);
    CHECK(pipe.nodes[pipe.queryNode()].kind == PipelineNode::Kind::Query);

    std::set<std::string> expect{
        "source(employee)->alpha",
        "source(hasBoss)->beta",
        "alpha->beta", "beta->beta", "delta->beta",
        "alpha->gamma", "beta->gamma", "delta->gamma",
        "gamma->delta",
        "gamma->query",
    };
    CHECK(edgeSet(pipe) == expect);
}

TEST_CASE("walkthrough: resumption inside the stream answers the boss query") {
    Setup s;
    StreamOptions opts;
    opts.firing = FiringKind::Isomorphism;
    opts.maxResOverride = 2;

    std::vector<StreamTraceEvent> events;
    StreamResult res = runStream(s, "? :- knows(alice,bob).", opts, &events);

    CHECK(res.answer);
    CHECK(res.maxRes == 2);
    CHECK(res.stats.answeredEarly);
    CHECK(res.fragmentWarning);  // warded but not protected

    // the first resumption level carries exactly the four round-one facts
    CHECK(res.stats.admittedPerResIt.at(0) == 4);

    auto indexOf = [&](StreamTraceEvent::Kind k, const std::string& pred,
                       const std::string& arg0) {
        for (std::size_t i = 0; i < events.size(); ++i)
            if (events[i].kind == k && events[i].fact.predicate == pred &&
                events[i].fact.args[0].symbol() == arg0)
                return static_cast<std::ptrdiff_t>(i);
        return std::ptrdiff_t{-1};
    };

    // the boss fact worksFor(bob, nu1) is blocked, frozen, and only then do
    // the cross knows-facts become derivable
    std::ptrdiff_t freezeBob = indexOf(StreamTraceEvent::Kind::Freeze, "worksFor", "bob");
    std::ptrdiff_t crossBA = -1, crossAB = -1;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].kind != StreamTraceEvent::Kind::Admit) continue;
        if (events[i].fact.predicate != "knows") continue;
        if (events[i].fact.args[0].symbol() == "bob" &&
            events[i].fact.args[1].symbol() == "alice")
            crossBA = static_cast<std::ptrdiff_t>(i);
        if (events[i].fact.args[0].symbol() == "alice" &&
            events[i].fact.args[1].symbol() == "bob")
            crossAB = static_cast<std::ptrdiff_t>(i);
    }
    REQUIRE(freezeBob >= 0);
    REQUIRE(crossBA >= 0);
    REQUIRE(crossAB >= 0);
    CHECK(freezeBob < crossBA);
    CHECK(crossBA < crossAB);

    // the answering fact is the last admission: early exit
    CHECK(events.back().kind == StreamTraceEvent::Kind::Admit);
    CHECK(events.back().fact.toString() == "knows(alice,bob)");
}

TEST_CASE("ground queries default to a single resumption level") {
    Setup s;
    StreamOptions opts;
    opts.firing = FiringKind::Isomorphism;

    StreamResult res = runStream(s, "? :- knows(alice,bob).", opts);
    CHECK(res.maxRes == 1);
    CHECK_FALSE(res.answer);
    CHECK(res.exhausted);
    CHECK(res.stats.freezes() == 0);  // resIt+1 < maxRes never holds
    // without freezing the stream settles on the saturation
    CHECK(isomorphicInstances(res.admitted, fixtures::expectedSaturation7()));
}

TEST_CASE("the hom-firing stream answers like the resumed parsimonious chase") {
    Setup s;
    StreamOptions opts;
    opts.firing = FiringKind::Homomorphism;
    opts.maxResOverride = 2;
    StreamResult res = runStream(s, "? :- knows(alice,bob).", opts);
    CHECK(res.answer);

    // batch cross-check
    ChaseConfig cfg;
    cfg.variant = ChaseVariant::Parsimonious;
    NullFactory nulls;
    ChaseResult batch = chaseResumed(s.db, s.prog, 2, cfg, nulls);
    CHECK(bcqEntails(batch.instance, s.query("? :- knows(alice,bob).")));
}

TEST_CASE("exhausted streams materialize the batch instance") {
    Setup s;
    BCQ unsat = s.query("? :- knows(alice,carol).");

    for (FiringKind firing : {FiringKind::Isomorphism, FiringKind::Homomorphism}) {
        StreamOptions opts;
        opts.firing = firing;
        opts.routing = StreamRouting::RoundRobin;
        NullFactory nulls;
        StreamResult res = chaseStreaming(s.db, s.prog, unsat, opts, nulls);
        CHECK_FALSE(res.answer);
        CHECK(res.exhausted);

        ChaseConfig cfg;
        cfg.variant = firing == FiringKind::Isomorphism ? ChaseVariant::Isomorphic
                                                        : ChaseVariant::Parsimonious;
        NullFactory batchNulls;
        ChaseResult batch = chaseResumed(s.db, s.prog, 1, cfg, batchNulls);
        CHECK(isomorphicInstances(res.admitted, batch.instance));
    }
}

TEST_CASE("freezing admitted facts is what keeps the stream complete") {
    Program prog = parseProgram(
        "w1: f(X,W) :- a(X).\n"
        "w2: g(Z) :- f(X,Z).\n");
    Instance db;
    db.insert(Fact(atom("a", {Term::constant("u")})));
    db.insert(Fact(atom("a", {Term::constant("v")})));
    Signature sig = prog.signature;
    BCQ q = parseQuery("? :- f(v,V), g(V).", sig);

    // batch reference: one resumption proves the query
    ChaseConfig cfg;
    cfg.variant = ChaseVariant::Parsimonious;
    NullFactory n1;
    CHECK(bcqEntails(chaseResumed(db, prog, 2, cfg, n1).instance, q));

    StreamOptions on;  // freezeAdmitted defaults to true
    NullFactory n2;
    CHECK(chaseStreaming(db, prog, q, on, n2).answer);

    StreamOptions off = on;
    off.freezeAdmitted = false;
    NullFactory n3;
    StreamResult lossy = chaseStreaming(db, prog, q, off, n3);
    CHECK_FALSE(lossy.answer);  // g(nu) exists but no frozen f(v,.) join partner
    CHECK(lossy.exhausted);
}

TEST_CASE("database hits answer with zero fires") {
    Setup s;
    StreamOptions opts;
    StreamResult res = runStream(s, "? :- employee(alice).", opts);
    CHECK(res.answer);
    CHECK(res.stats.fires == 0);
    CHECK(res.stats.answeredEarly);
    CHECK(res.stats.sourceFacts >= 1);
}

TEST_CASE("routing choices do not change the walkthrough answer") {
    Setup s;
    for (StreamRouting routing : {StreamRouting::Demand, StreamRouting::RoundRobin,
                                  StreamRouting::DepthFirst, StreamRouting::Random}) {
        StreamOptions opts;
        opts.firing = FiringKind::Isomorphism;
        opts.maxResOverride = 2;
        opts.routing = routing;
        opts.seed = 424242;
        StreamResult res = runStream(s, "? :- knows(alice,bob).", opts);
        CAPTURE(static_cast<int>(routing));
        CHECK(res.answer);
    }
}

TEST_CASE("resumption bookkeeping stays within bounds") {
    Setup s;
    StreamOptions opts;
    opts.firing = FiringKind::Isomorphism;
    opts.maxResOverride = 3;
    StreamResult res = runStream(s, "? :- knows(carol,dave).", opts);  // unsat
    CHECK_FALSE(res.answer);
    CHECK(res.exhausted);

    CHECK(res.stats.admissions <= res.stats.fires);
    CHECK(res.stats.freezesOnBlocked <= res.stats.blocks);
    for (const Fact& f : res.admitted.facts()) {
        CHECK(f.resIt < 3);
        if (f.provenance.has_value()) CHECK(f.provenance->freezes <= 2);
    }
    for (const auto& [resIt, count] : res.stats.admittedPerResIt) CHECK(resIt < 3);
}

TEST_CASE("stream routing parser") {
    CHECK(parseStreamRouting("demand") == StreamRouting::Demand);
    CHECK(parseStreamRouting("rr") == StreamRouting::RoundRobin);
    CHECK(parseStreamRouting("dfs") == StreamRouting::DepthFirst);
    CHECK(parseStreamRouting("rand") == StreamRouting::Random);
    CHECK(parseStreamRouting("rand:9") == StreamRouting::Random);
    CHECK_THROWS_AS(parseStreamRouting("bogus"), std::invalid_argument);
}

TEST_CASE("protected programs raise no fragment warning") {
    Program prog = parseProgram("r1: q(X,W) :- p(X).\nr2: r(X) :- q(X,Z1), q(X,Z2).\n");
    Instance db;
    db.insert(Fact(atom("p", {Term::constant("a")})));
    Signature sig = prog.signature;
    BCQ q = parseQuery("? :- r(a).", sig);

    NullFactory nulls;
    StreamResult res = chaseStreaming(db, prog, q, StreamOptions{}, nulls);
    CHECK_FALSE(res.fragmentWarning);
    CHECK(res.answer);  // q(a,nu) twice over the same null satisfies r2
}

TEST_CASE("trace events render in a fixed shape") {
    Setup s;
    std::vector<StreamTraceEvent> events;
    StreamOptions opts;
    StreamResult res = runStream(s, "? :- employee(alice).", opts, &events);
    REQUIRE(res.answer);
    REQUIRE_FALSE(events.empty());
    CHECK(events[0].toString() == "INJECT rule=employee fact=employee(alice) resIt=0");
}
