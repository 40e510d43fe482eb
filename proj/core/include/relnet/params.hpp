#pragma once

#include "relnet/paths.hpp"
#include "relnet/rational.hpp"

namespace relnet {

/// All model constants for one game instance. Construct through make() so
/// the parameter constraints are checked once, up front.
struct GameParams {
    Rational a;   // weight of major-player targets, > 1
    Rational c_a; // link price paid by a major endpoint
    Rational c_b; // link price paid by a minor endpoint, >= c_a
    Rational delta = 1; // backup-path weight in [0, 1]
    int tau = 1;        // 1: backups required to everyone; 0: majors only
    DisjointnessMode mode = DisjointnessMode::NodeDisjoint;
    PairObjective objective = PairObjective::min_sum();
    bool transfers_enabled = false;

    static GameParams make(Rational a, Rational c_a, Rational c_b,
                           Rational delta = 1, int tau = 1,
                           DisjointnessMode mode = DisjointnessMode::NodeDisjoint,
                           PairObjective objective = PairObjective::min_sum(),
                           bool transfers = false) {
        if (a <= 1)
            throw InputError("A must exceed 1");
        if (c_a <= 0 || c_b <= 0)
            throw InputError("link prices must be positive");
        if (c_a > c_b)
            throw InputError("c_A must not exceed c_B");
        if (delta < 0 || delta > 1)
            throw InputError("delta must lie in [0, 1]");
        if (tau != 0 && tau != 1)
            throw InputError("tau must be 0 or 1");
        return {std::move(a),     std::move(c_a), std::move(c_b),
                std::move(delta), tau,            mode,
                std::move(objective), transfers};
    }

    /// Mean link price c = (c_A + c_B) / 2.
    Rational c() const { return (c_a + c_b) / 2; }

    const Rational& link_price(PlayerType t) const {
        return t == PlayerType::MajorA ? c_a : c_b;
    }
};

} // namespace relnet
