#include "streamlog/atom.hpp"

namespace streamlog {

bool Atom::isGround() const {
    for (const Term& t : args)
        if (!t.isGround()) return false;
    return true;
}

std::size_t Atom::hashValue() const {
    std::size_t h = std::hash<std::string>{}(predicate);
    for (const Term& t : args)
        h = h * 31 + t.hashValue();
    return h;
}

std::string Atom::toString() const {
    std::string s = predicate;
    s += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ',';
        s += args[i].toString();
    }
    s += ')';
    return s;
}

}  // namespace streamlog
