#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>

namespace streamlog {

using NullId = std::uint64_t;

// Ids at or above this value are reserved for canonical nulls (the ones
// produced by canonicalize()). The factory never allocates them, so canonical
// placeholders can never collide with nulls invented by the chase.
inline constexpr NullId kCanonicalNullBase = NullId{1} << 62;

// A term is a constant, a labelled null (frozen or not) or a variable.
// Constants and variables carry a symbol; nulls carry a numeric id.
// A frozen null behaves like a constant everywhere and compares equal only
// to the frozen null with the same id.
class Term {
public:
    enum class Kind : std::uint8_t { Constant, Null, Variable };

    Term() : kind_(Kind::Constant) {}

    static Term constant(std::string symbol);
    static Term variable(std::string name);
    static Term null(NullId id, bool frozen = false);
    // 1-based position index, see canonicalize().
    static Term canonicalNull(std::size_t position);

    Kind kind() const { return kind_; }
    bool isConstant() const { return kind_ == Kind::Constant; }
    bool isVariable() const { return kind_ == Kind::Variable; }
    bool isNull() const { return kind_ == Kind::Null; }
    bool isFrozenNull() const { return kind_ == Kind::Null && frozen_; }
    bool isUnfrozenNull() const { return kind_ == Kind::Null && !frozen_; }
    bool isCanonicalNull() const { return kind_ == Kind::Null && id_ >= kCanonicalNullBase; }
    // Ground terms are the ones that may appear in facts.
    bool isGround() const { return kind_ != Kind::Variable; }
    // True when a mapping must leave the term untouched.
    bool isRigid() const { return isConstant() || isFrozenNull(); }

    const std::string& symbol() const { return symbol_; }
    NullId nullId() const { return id_; }
    bool frozen() const { return frozen_; }

    // The frozen twin of a null (identity on everything already rigid).
    Term frozenTwin() const;

    bool operator==(const Term& o) const {
        if (kind_ != o.kind_) return false;
        if (kind_ == Kind::Null) return id_ == o.id_ && frozen_ == o.frozen_;
        return symbol_ == o.symbol_;
    }
    bool operator!=(const Term& o) const { return !(*this == o); }
    bool operator<(const Term& o) const;  // arbitrary total order, for sorted output

    std::size_t hashValue() const;

    // Constants and variables print as their symbol; nulls print as _:n<ID>,
    // frozen nulls as _:f<ID> and canonical nulls as _:c<J>.
    std::string toString() const;

private:
    Kind kind_;
    bool frozen_ = false;
    NullId id_ = 0;
    std::string symbol_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hashValue(); }
};

// Mints labelled nulls. Ids are unique within a factory (one per reasoning
// session) and functionally determined by (ruleId, existVar, frontierImage,
// salt): asking twice with the same key returns the same id. salt = 0 is the
// functional mode used by pchase/ichase and the streaming engine; the
// oblivious chase draws a fresh salt per fire via bumpFire so that repeated
// fires of one trigger keep inventing new nulls.
class NullFactory {
public:
    Term make(const std::string& ruleId, const std::string& existVar,
              std::span<const Term> frontierImage, std::uint64_t salt = 0);
    std::uint64_t bumpFire(const std::string& ruleId, std::span<const Term> frontierImage);

    NullId allocated() const { return next_ - 1; }

private:
    NullId next_ = 1;
    std::unordered_map<std::string, NullId> keyed_;
    std::unordered_map<std::string, std::uint64_t> fires_;
};

}  // namespace streamlog
