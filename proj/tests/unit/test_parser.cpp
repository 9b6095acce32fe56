#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "streamlog/parser.hpp"
#include "support/fixtures.hpp"

using namespace streamlog;

TEST_CASE("labeled rules round-trip") {
    Program p = parseProgram(fixtures::kRunningRules);
    REQUIRE(p.rules.size() == 4);
    CHECK(p.rules[0].id == "alpha");
    CHECK(p.rules[1].id == "beta");
    CHECK(p.rules[2].id == "gamma");
    CHECK(p.rules[3].id == "delta");

    CHECK(p.signature.at("worksFor") == 2);
    CHECK(p.signature.at("employee") == 1);
    CHECK(p.signature.at("knows") == 2);
    CHECK(p.signature.at("hasBoss") == 2);

    // variable partition: alpha invents S, keeps X
    CHECK(p.rules[0].existentialVars == std::vector<std::string>{"S"});
    CHECK(p.rules[0].frontierVars == std::vector<std::string>{"X"});
    // beta propagates S, no invention
    CHECK_FALSE(p.rules[1].hasExistentials());
    // delta invents one S shared by both head atoms
    CHECK(p.rules[3].existentialVars == std::vector<std::string>{"S"});
    CHECK(p.rules[3].frontierVars == std::vector<std::string>{"X", "Y"});

    // toString parses back to the same program
    Program again = parseProgram(p.toString());
    CHECK(again.toString() == p.toString());
    REQUIRE(again.rules.size() == 4);
    CHECK(again.rules[2].id == "gamma");
}

TEST_CASE("unlabeled rules are numbered; multi-atom heads and bodies parse") {
    Program p = parseProgram(
        "q(X,W) :- p(X).\n"
        "r(X), r(Y) :- q(X,Z), q(Y,Z).\n");
    REQUIRE(p.rules.size() == 2);
    CHECK(p.rules[0].id == "r1");
    CHECK(p.rules[1].id == "r2");
    CHECK(p.rules[1].head.size() == 2);
    CHECK(p.rules[1].body.size() == 2);

    CHECK(p.ruleById("r2") != nullptr);
    CHECK(p.ruleById("zzz") == nullptr);
}

TEST_CASE("comments, whitespace and CRLF are tolerated") {
    Program p = parseProgram(
        "% a comment line\r\n"
        "one: p(X) :- q(X).  % trailing comment\r\n"
        "\r\n"
        "two: r(X) :- p(X).\r\n");
    REQUIRE(p.rules.size() == 2);
    CHECK(p.rules[0].id == "one");
    CHECK(p.rules[1].id == "two");
}

TEST_CASE("duplicate labels are rejected") {
    CHECK_THROWS_AS(parseProgram("a: p(X) :- q(X).\na: r(X) :- q(X).\n"), ParseError);
}

TEST_CASE("arity is fixed by first use") {
    try {
        parseProgram("p(a,b) :- q(X).\nr(X) :- p(X).\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);  // the offending atom starts on line 2
        CHECK(std::string(e.what()).find("p") != std::string::npos);
    }
}

TEST_CASE("error positions are 1-based line:column") {
    try {
        parseProgram("p(X) :- q(X)\n");  // missing period
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line >= 1);
        CHECK(e.column >= 1);
        // what() carries the location prefix
        CHECK(std::string(e.what()).find(':') != std::string::npos);
    }
}

TEST_CASE("facts are ground") {
    Signature sig;
    auto facts = parseFacts("p(a). q(a,b).\np(c).\n", sig);
    REQUIRE(facts.size() == 3);
    CHECK(facts[0].atom.toString() == "p(a)");
    CHECK(facts[1].atom.toString() == "q(a,b)");
    CHECK(sig.at("p") == 1);
    CHECK(sig.at("q") == 2);

    Signature sig2;
    CHECK_THROWS_AS(parseFacts("p(X).\n", sig2), ParseError);
}

TEST_CASE("fact arity must match an existing signature") {
    Signature sig{{"p", 2}};
    CHECK_THROWS_AS(parseFacts("p(a).\n", sig), ParseError);
}

TEST_CASE("queries") {
    Signature sig{{"knows", 2}};
    BCQ q = parseQuery("? :- knows(alice,X).", sig);
    REQUIRE(q.atoms.size() == 1);
    CHECK(q.vars() == std::set<std::string>{"X"});
    CHECK(maxRes(q) == 2);

    BCQ ground = parseQuery("? :- knows(alice,bob).", sig);
    CHECK(ground.vars().empty());
    CHECK(maxRes(ground) == 1);

    // round trip
    BCQ again = parseQuery(q.toString(), sig);
    CHECK(again.toString() == q.toString());

    CHECK_THROWS_AS(parseQuery("? :- knows(alice,X). extra", sig), ParseError);
    CHECK_THROWS_AS(parseQuery("knows(alice,X).", sig), ParseError);
}

TEST_CASE("identifiers may carry UTF-8 bytes") {
    Signature sig;
    auto facts = parseFacts("ville(montr\xc3\xa9al).\n", sig);
    REQUIRE(facts.size() == 1);
    CHECK(facts[0].atom.args[0].symbol() == "montr\xc3\xa9al");
}

TEST_CASE("csv facts") {
    Signature sig;
    auto facts = parseCsvFacts("edge", "a, b\nc,d\n\n", sig);
    REQUIRE(facts.size() == 2);
    CHECK(facts[0].atom.toString() == "edge(a,b)");  // cells are trimmed
    CHECK(facts[1].atom.toString() == "edge(c,d)");
    CHECK(sig.at("edge") == 2);

    // a pre-declared arity is enforced
    Signature sig2{{"edge", 2}};
    CHECK_THROWS_AS(parseCsvFacts("edge", "a,b,c\n", sig2), ParseError);
}

TEST_CASE("rules must have a body and a head") {
    CHECK_THROWS_AS(parseProgram("p(X) :- .\n"), ParseError);
    CHECK_THROWS_AS(parseProgram(":- q(X).\n"), ParseError);
}
