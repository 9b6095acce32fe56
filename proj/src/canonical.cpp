#include "streamlog/canonical.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>
#include <string>

namespace streamlog {

Atom canonicalizeAtom(const Atom& fact) {
    Atom out;
    out.predicate = fact.predicate;
    out.args.reserve(fact.args.size());
    for (std::size_t i = 0; i < fact.args.size(); ++i) {
        const Term& t = fact.args[i];
        if (t.isVariable())
            throw std::invalid_argument("canonicalize: non-ground fact " + fact.toString());
        if (!t.isUnfrozenNull()) {
            out.args.push_back(t);
            continue;
        }
        std::size_t first = i;
        for (std::size_t j = 0; j < i; ++j)
            if (fact.args[j] == t) {
                first = j;
                break;
            }
        out.args.push_back(Term::canonicalNull(first + 1));
    }
    return out;
}

Fact canonicalizeFact(const Fact& fact) {
    Fact out = fact;
    out.atom = canonicalizeAtom(fact.atom);
    return out;
}

std::size_t DigestHash::operator()(const Digest& d) const {
    std::size_t h;
    std::memcpy(&h, d.data(), sizeof(h));
    return h;
}

namespace {

void putU64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void putString(std::string& buf, const std::string& s) {
    putU64(buf, s.size());
    buf += s;
}

}  // namespace

Digest canonicalDigest(const Atom& canonicalFact) {
    std::string buf;
    putString(buf, canonicalFact.predicate);
    putU64(buf, canonicalFact.arity());
    for (const Term& t : canonicalFact.args) {
        if (t.isConstant()) {
            buf.push_back('c');
            putString(buf, t.symbol());
        } else if (t.isFrozenNull()) {
            buf.push_back('f');
            putU64(buf, t.nullId());
        } else if (t.isCanonicalNull()) {
            buf.push_back('n');
            putU64(buf, t.nullId() - kCanonicalNullBase);
        } else {
            throw std::invalid_argument("canonicalDigest: fact is not canonical: " +
                                        canonicalFact.toString());
        }
    }

    Digest out{};
    unsigned int len = 0;
    if (!EVP_Digest(buf.data(), buf.size(), out.data(), &len, EVP_sha256(), nullptr) ||
        len != out.size())
        throw std::runtime_error("canonicalDigest: SHA-256 failed");
    return out;
}

}  // namespace streamlog
