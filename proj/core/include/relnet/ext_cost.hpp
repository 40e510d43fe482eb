#pragma once

#include "relnet/rational.hpp"

#include <string>

namespace relnet {

/// Cost value with the symbolic-infinity multiplicity tracked separately
/// from the finite part. Ordering is lexicographic: any positive Q
/// multiplicity dominates every finite amount. Differences may carry a
/// negative q (a move that removes Q terms).
struct ExtCost {
    long long q = 0;
    Rational finite = 0;

    bool is_unbounded() const { return q > 0; }

    friend ExtCost operator+(ExtCost a, const ExtCost& b) {
        a.q += b.q;
        a.finite += b.finite;
        return a;
    }
    friend ExtCost operator-(ExtCost a, const ExtCost& b) {
        a.q -= b.q;
        a.finite -= b.finite;
        return a;
    }
    ExtCost operator-() const { return {-q, -finite}; }
    ExtCost& operator+=(const ExtCost& b) { return *this = *this + b; }
    ExtCost& operator-=(const ExtCost& b) { return *this = *this - b; }

    friend bool operator==(const ExtCost& a, const ExtCost& b) {
        return a.q == b.q && a.finite == b.finite;
    }
    friend bool operator<(const ExtCost& a, const ExtCost& b) {
        return a.q != b.q ? a.q < b.q : a.finite < b.finite;
    }
    friend bool operator>(const ExtCost& a, const ExtCost& b) { return b < a; }
    friend bool operator<=(const ExtCost& a, const ExtCost& b) { return !(b < a); }
    friend bool operator>=(const ExtCost& a, const ExtCost& b) { return !(a < b); }
};

inline ExtCost finite_cost(Rational v) { return {0, std::move(v)}; }

inline std::string to_string(const ExtCost& c) {
    if (c.q == 0)
        return to_string(c.finite);
    std::string s = std::to_string(c.q) + "Q";
    if (c.finite != 0)
        s += (c.finite > 0 ? "+" : "") + to_string(c.finite);
    return s;
}

/// Ratio of two ExtCost values for the price metrics: finite, infinite, or
/// indeterminate (both unbounded).
struct ExtRatio {
    enum class Kind { Finite, Infinite, Indeterminate } kind = Kind::Finite;
    Rational value = 0; // meaningful only when Finite

    static ExtRatio of(const ExtCost& num, const ExtCost& den) {
        if (num.q > 0 && den.q > 0)
            return {Kind::Indeterminate, 0};
        if (num.q > 0)
            return {Kind::Infinite, 0};
        if (den.q > 0 || den.finite == 0)
            return {Kind::Finite, 0}; // degenerate: finite / unbounded
        return {Kind::Finite, num.finite / den.finite};
    }

    bool is_infinite() const { return kind == Kind::Infinite; }
};

inline std::string to_string(const ExtRatio& r) {
    switch (r.kind) {
    case ExtRatio::Kind::Finite:
        return to_string(r.value);
    case ExtRatio::Kind::Infinite:
        return "inf";
    default:
        return "indeterminate";
    }
}

} // namespace relnet
