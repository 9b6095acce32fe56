#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "streamlog/program.hpp"

namespace streamlog {

// Raised on any syntax or consistency error; line/column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                             ": " + message),
          line(line), column(column), message(message) {}

    int line;
    int column;
    std::string message;
};

using Signature = std::map<std::string, std::size_t>;

// Rule files: one statement per line-oriented text,
//   [label:] head1, ..., headm :- body1, ..., bodyn.
// Lowercase-initial identifiers are constants/predicates, uppercase-initial
// are variables, '%' starts a comment. Head variables absent from the body
// are existential. Unlabelled rules are named r1, r2, ... in file order.
// Predicate arities are fixed by first use.
Program parseProgram(std::string_view text);

// Fact files: ground atoms `pred(c1,...,ck).` — variables are rejected.
// The signature is validated and extended (first use fixes the arity).
std::vector<Fact> parseFacts(std::string_view text, Signature& signature);

// `? :- atom1, ..., atomn.`
BCQ parseQuery(std::string_view text, Signature& signature);

// CSV ingestion: each row is one tuple of the given predicate. Cells are
// taken verbatim (trimmed) as constants; no quoting. The arity comes from
// the signature when known, otherwise from the first row.
std::vector<Fact> parseCsvFacts(const std::string& predicate, std::string_view csv,
                                Signature& signature);

}  // namespace streamlog
