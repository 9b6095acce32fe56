#pragma once

#include <array>
#include <cstdint>

#include "streamlog/atom.hpp"

namespace streamlog {

// Canonical renaming of a fact's unfrozen nulls: the null at (0-based)
// position i is replaced by the canonical placeholder indexed by the 1-based
// position of its first occurrence in the fact. Constants and frozen nulls
// are preserved. Two facts are isomorphic iff their canonical forms are
// term-identical, and the operation is idempotent.
Atom canonicalizeAtom(const Atom& fact);
Fact canonicalizeFact(const Fact& fact);

using Digest = std::array<std::uint8_t, 32>;

struct DigestHash {
    std::size_t operator()(const Digest& d) const;
};

// SHA-256 over a length-prefixed serialization of a canonical fact:
// the predicate as length+bytes, then one tag byte per argument followed by
// the constant symbol (length+bytes), the frozen null id, or the canonical
// null index. The input must already be canonical.
Digest canonicalDigest(const Atom& canonicalFact);

}  // namespace streamlog
