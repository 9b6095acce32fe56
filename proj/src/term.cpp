#include "streamlog/term.hpp"

#include <functional>
#include <stdexcept>

namespace streamlog {

Term Term::constant(std::string symbol) {
    Term t;
    t.kind_ = Kind::Constant;
    t.symbol_ = std::move(symbol);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Variable;
    t.symbol_ = std::move(name);
    return t;
}

Term Term::null(NullId id, bool frozen) {
    Term t;
    t.kind_ = Kind::Null;
    t.id_ = id;
    t.frozen_ = frozen;
    return t;
}

Term Term::canonicalNull(std::size_t position) {
    return null(kCanonicalNullBase + position, false);
}

Term Term::frozenTwin() const {
    if (isUnfrozenNull()) return null(id_, true);
    return *this;
}

bool Term::operator<(const Term& o) const {
    if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
    if (kind_ == Kind::Null) {
        if (id_ != o.id_) return id_ < o.id_;
        return frozen_ < o.frozen_;
    }
    return symbol_ < o.symbol_;
}

std::size_t Term::hashValue() const {
    std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ull;
    if (kind_ == Kind::Null) {
        h ^= std::hash<NullId>{}(id_) + (frozen_ ? 0x517cc1b727220a95ull : 0);
    } else {
        h ^= std::hash<std::string>{}(symbol_);
    }
    return h;
}

std::string Term::toString() const {
    switch (kind_) {
        case Kind::Constant:
        case Kind::Variable:
            return symbol_;
        case Kind::Null:
            if (isCanonicalNull())
                return "_:c" + std::to_string(id_ - kCanonicalNullBase);
            return (frozen_ ? "_:f" : "_:n") + std::to_string(id_);
    }
    return "?";
}

namespace {

// Serialized (ruleId, existVar, frontier, salt) key; '\x1f' never occurs in
// parsed symbols.
std::string nullKey(const std::string& ruleId, const std::string& existVar,
                    std::span<const Term> frontierImage, std::uint64_t salt) {
    std::string key = ruleId;
    key += '\x1f';
    key += existVar;
    for (const Term& t : frontierImage) {
        if (t.isVariable())
            throw std::invalid_argument("freshNull: frontier image contains a variable");
        key += '\x1f';
        if (t.isConstant()) {
            key += 'c';
            key += t.symbol();
        } else {
            key += t.frozen() ? 'f' : 'n';
            key += std::to_string(t.nullId());
        }
    }
    if (salt != 0) {
        key += '\x1e';
        key += std::to_string(salt);
    }
    return key;
}

}  // namespace

Term NullFactory::make(const std::string& ruleId, const std::string& existVar,
                       std::span<const Term> frontierImage, std::uint64_t salt) {
    std::string key = nullKey(ruleId, existVar, frontierImage, salt);
    auto [it, inserted] = keyed_.try_emplace(std::move(key), next_);
    if (inserted) ++next_;
    return Term::null(it->second);
}

std::uint64_t NullFactory::bumpFire(const std::string& ruleId,
                                    std::span<const Term> frontierImage) {
    std::string key = nullKey(ruleId, "", frontierImage, 0);
    return ++fires_[key];
}

}  // namespace streamlog
