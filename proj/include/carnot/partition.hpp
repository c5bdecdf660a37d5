#pragma once

#include <cmath>

#include "carnot/core.hpp"

namespace carnot {

/// Dyadic Littlewood-Paley cutoffs: chi is a smooth even bump with chi = 1 on
/// [0,1/4] and chi = 0 on [1,inf); psi(x) = chi(x/4) - chi(x), so the psi
/// rescalings telescope: chi(t) + sum_{j=0..J} psi(4^-j t) = chi(4^-(J+1) t).
struct DyadicPartition {
    int jmin = 0;
    int jmax = 0;

    static double bump(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }

    static double chi(double tau)
    {
        const double a = std::abs(tau);
        if (a <= 0.25) return 1.0;
        if (a >= 1.0) return 0.0;
        const double g1 = bump(1.0 - a);
        const double g2 = bump(a - 0.25);
        return g1 / (g1 + g2);
    }

    static double psi(double tau) { return chi(tau / 4.0) - chi(tau); }

    /// psi(2^{-2j} tau), the band-j symbol.
    static double psi_j(double tau, int j) { return psi(std::ldexp(tau, -2 * j)); }

    /// chi(2^{-2j} tau); j = 0 is the S_0 symbol.
    static double chi_j(double tau, int j) { return chi(std::ldexp(tau, -2 * j)); }
};

inline DyadicPartition build_partition(int jmin, int jmax)
{
    if (!(jmin <= 0 && 0 <= jmax))
        throw ValidationError("build_partition: need jmin <= 0 <= jmax");
    return DyadicPartition{jmin, jmax};
}

}  // namespace carnot
