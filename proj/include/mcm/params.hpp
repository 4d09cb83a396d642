#pragma once

#include <stdexcept>

#include "mcm/rational.hpp"

namespace mcm {

// The three q-parameters, stored through their exact rational square roots
// zeta = q^{1/2}, zeta1 = q1^{1/2}, zeta2 = q2^{1/2}.
struct QParams {
    Rational zeta;
    Rational zeta1;
    Rational zeta2;

    Rational q() const { return zeta * zeta; }
    Rational q1() const { return zeta1 * zeta1; }
    Rational q2() const { return zeta2 * zeta2; }

    void require_nonzero() const {
        if (rat_is_zero(zeta) || rat_is_zero(zeta1) || rat_is_zero(zeta2))
            throw std::invalid_argument("QParams: zero zeta");
    }

    // q1^{N1} = q = q2^{N2}, exactly.
    bool bigraded(int N1, int N2) const {
        return rat_pow(q1(), N1) == q() && rat_pow(q2(), N2) == q();
    }

    void require_bigraded(int N1, int N2) const {
        if (!bigraded(N1, N2))
            throw std::invalid_argument("QParams: bigraded relation q1^N1 = q = q2^N2 violated");
    }
};

}  // namespace mcm
