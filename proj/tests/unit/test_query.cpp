#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "streamlog/parser.hpp"
#include "streamlog/query.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

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

}  // namespace

TEST_CASE("bcq entailment over instances with nulls") {
    Instance inst;
    inst.insert(Fact(atom("worksFor", {Term::constant("alice"), Term::null(1)})));
    inst.insert(Fact(atom("worksFor", {Term::constant("bob"), Term::null(1)})));

    Signature sig{{"worksFor", 2}};
    CHECK(bcqEntails(inst, parseQuery("? :- worksFor(alice,X).", sig)));
    CHECK(bcqEntails(inst, parseQuery("? :- worksFor(alice,X), worksFor(bob,X).", sig)));
    CHECK_FALSE(bcqEntails(inst, parseQuery("? :- worksFor(carol,X).", sig)));
    // constants never match nulls
    CHECK_FALSE(bcqEntails(inst, parseQuery("? :- worksFor(alice,bob).", sig)));
}

TEST_CASE("bcq entailment matches the exhaustive oracle") {
    gen::Rng rng(60902);
    for (int i = 0; i < 200; ++i) {
        Program prog = gen::randomProgram(rng);
        Instance inst = gen::randomDatabase(rng, prog, 6);
        BCQ q = gen::randomQuery(rng, prog);
        CAPTURE(i);
        CHECK(bcqEntails(inst, q) == oracles::bruteForceHom(q.atoms, inst));
    }
}

TEST_CASE("batch answering defaults to maxRes(q) resumptions") {
    Setup s;
    AnswerOptions opts;  // batch pchase
    NullFactory nulls;

    // ground query: one round only, the cross fact is not derivable
    AnswerResult r1 = answer(s.db, s.prog, s.query("? :- knows(alice,bob)."), opts, nulls);
    CHECK_FALSE(r1.answer);
    CHECK(r1.resumptions == 1);

    // one variable: two rounds by default
    NullFactory nulls2;
    AnswerResult r2 = answer(s.db, s.prog, s.query("? :- knows(alice,X), knows(X,bob)."),
                             opts, nulls2);
    CHECK(r2.resumptions == 2);
    CHECK(r2.answer);  // X = alice after one resumption

    // explicit resumption count wins
    AnswerOptions explicitRounds;
    explicitRounds.resumptions = 2;
    NullFactory nulls3;
    AnswerResult r3 = answer(s.db, s.prog, s.query("? :- knows(alice,bob)."),
                             explicitRounds, nulls3);
    CHECK(r3.answer);
    CHECK(r3.resumptions == 2);
}

TEST_CASE("stream engine answers through the same entry point") {
    Setup s;
    AnswerOptions opts;
    opts.engine = EngineKind::Stream;
    opts.stream.firing = FiringKind::Isomorphism;
    opts.stream.maxResOverride = 2;

    NullFactory nulls;
    AnswerResult res = answer(s.db, s.prog, s.query("? :- knows(alice,bob)."), opts, nulls);
    CHECK(res.answer);
    CHECK(res.fragmentWarning);
    CHECK(res.streamStats.admissions > 0);
    CHECK(res.batchStats.firesAttempted == 0);  // untouched
}

TEST_CASE("budgeted batch answers report truncation") {
    Setup s;
    AnswerOptions opts;
    opts.variant = ChaseVariant::Oblivious;
    opts.budget = 3;
    NullFactory nulls;
    AnswerResult res = answer(s.db, s.prog, s.query("? :- knows(alice,alice)."), opts, nulls);
    CHECK(res.truncated);
}

TEST_CASE("batch and stream agree on the shy witness program") {
    Program prog = parseProgram(
        "w1: f(X,W) :- a(X).\n"
        "w2: g(Z) :- f(X,Z).\n");
    Instance db;
    db.insert(Fact(atom("a", {Term::constant("u")})));
    db.insert(Fact(atom("a", {Term::constant("v")})));
    Signature sig = prog.signature;

    for (const char* text : {"? :- f(v,V), g(V).", "? :- g(V).", "? :- f(u,u)."}) {
        BCQ q = parseQuery(text, sig);

        AnswerOptions batch;  // pchase_r @ maxRes(q)
        NullFactory n1;
        bool batchAnswer = answer(db, prog, q, batch, n1).answer;

        AnswerOptions stream;
        stream.engine = EngineKind::Stream;
        NullFactory n2;
        bool streamAnswer = answer(db, prog, q, stream, n2).answer;

        CAPTURE(text);
        CHECK(batchAnswer == streamAnswer);
    }
}

TEST_CASE("maxRes counts query variables plus one") {
    Signature sig{{"p", 2}, {"q", 1}};
    CHECK(maxRes(parseQuery("? :- p(a,b).", sig)) == 1);
    CHECK(maxRes(parseQuery("? :- p(X,Y).", sig)) == 3);
    CHECK(maxRes(parseQuery("? :- p(X,X), q(X).", sig)) == 2);
}
