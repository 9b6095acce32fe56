// Shared fixtures: the four-rule employee example used across the suites,
// plus small helpers for building expected instances.
#pragma once

#include <cstdlib>
#include <string>

#include "streamlog/instance.hpp"
#include "streamlog/parser.hpp"
#include "streamlog/program.hpp"

namespace fixtures {

using namespace streamlog;

inline const char* kRunningRules =
    "alpha: worksFor(X,S) :- employee(X).\n"
    "beta:  worksFor(Y,S) :- hasBoss(X,Y), worksFor(X,S).\n"
    "gamma: knows(X,Y)    :- worksFor(X,S), worksFor(Y,S).\n"
    "delta: worksFor(X,S), worksFor(Y,S) :- knows(X,Y).\n";

inline const char* kRunningFacts =
    "employee(alice).\n"
    "employee(bob).\n"
    "hasBoss(alice,bob).\n";

inline Program runningProgram() { return parseProgram(kRunningRules); }

inline Instance runningDb(Program& prog) {
    Instance db;
    for (Fact& f : parseFacts(kRunningFacts, prog.signature)) db.insert(std::move(f));
    return db;
}

inline Atom atom(std::string pred, std::vector<Term> args) {
    Atom a;
    a.predicate = std::move(pred);
    a.args = std::move(args);
    return a;
}

// The saturation every isomorphism-firing run of the employee example reaches:
// both employees get their own department null and only the reflexive
// knows-facts are derivable.
inline Instance expectedSaturation7() {
    Term alice = Term::constant("alice"), bob = Term::constant("bob");
    Term n1 = Term::null(901), n2 = Term::null(902);
    Instance want;
    want.insert(Fact(atom("employee", {alice})));
    want.insert(Fact(atom("employee", {bob})));
    want.insert(Fact(atom("hasBoss", {alice, bob})));
    want.insert(Fact(atom("worksFor", {alice, n1})));
    want.insert(Fact(atom("worksFor", {bob, n2})));
    want.insert(Fact(atom("knows", {alice, alice})));
    want.insert(Fact(atom("knows", {bob, bob})));
    return want;
}

// One resumption later the frozen department nulls act as constants, the boss
// inherits alice's department and the cross knows-facts appear.
inline Instance expectedResumed10() {
    Term alice = Term::constant("alice"), bob = Term::constant("bob");
    Term f1 = Term::null(901, true), f2 = Term::null(902, true);
    Instance want;
    want.insert(Fact(atom("employee", {alice})));
    want.insert(Fact(atom("employee", {bob})));
    want.insert(Fact(atom("hasBoss", {alice, bob})));
    want.insert(Fact(atom("worksFor", {alice, f1})));
    want.insert(Fact(atom("worksFor", {bob, f2})));
    want.insert(Fact(atom("knows", {alice, alice})));
    want.insert(Fact(atom("knows", {bob, bob})));
    want.insert(Fact(atom("worksFor", {bob, f1})));
    want.insert(Fact(atom("knows", {bob, alice})));
    want.insert(Fact(atom("knows", {alice, bob})));
    return want;
}

// Directory holding the .dlgp/.facts files used by the CLI tests.
inline std::string dataDir() {
    if (const char* env = std::getenv("STREAMLOG_DATA")) return env;
    return "tests/data";
}

// Path of the CLI binary under test.
inline std::string cliBinary() {
    if (const char* env = std::getenv("STREAMLOG_BIN")) return env;
    return "./build/streamlog";
}

}  // namespace fixtures
