#pragma once

#include <functional>
#include <vector>

#include "carnot/core.hpp"
#include "carnot/grid.hpp"

namespace carnot {

/// Chebyshev expansion of a function on [0, hi], applied to Hermitian
/// operators with spectrum in that interval via the three-term recurrence.
struct ChebyshevExpansion {
    double hi = 1;
    std::vector<double> coef;  // c_0 .. c_d, f(x) ~ sum c_k T_k(2x/hi - 1)

    int degree() const { return static_cast<int>(coef.size()) - 1; }

    double eval(double x) const
    {
        const double u = 2.0 * x / hi - 1.0;
        double tkm = 1.0, tk = u, acc = coef[0] + (coef.size() > 1 ? coef[1] * u : 0.0);
        for (std::size_t k = 2; k < coef.size(); ++k) {
            const double tkp = 2.0 * u * tk - tkm;
            acc += coef[k] * tkp;
            tkm = tk;
            tk = tkp;
        }
        return acc;
    }
};

namespace detail {

/// Chebyshev coefficients from d Chebyshev-Gauss nodes (type-II DCT by FFT
/// when d is a power of two, direct sums otherwise).
inline std::vector<double> chebyshev_coefficients(const std::function<double(double)>& f,
                                                  double hi, int d)
{
    std::vector<double> fx(d);
    for (int i = 0; i < d; ++i) {
        const double theta = pi * (i + 0.5) / d;
        fx[i] = f(0.5 * hi * (std::cos(theta) + 1.0));
    }
    std::vector<double> c(d, 0.0);
    if ((d & (d - 1)) == 0 && d >= 8) {
        // DCT-II via a complex FFT of length 2d.
        std::vector<cplx> buf(2 * d, cplx(0, 0));
        for (int i = 0; i < d; ++i) {
            buf[2 * i + 1] = fx[i];
            buf[2 * d - 1 - 2 * i] = fx[i];
        }
        dft_axis(buf.data(), 2 * d, 1, false);
        for (int k = 0; k < d; ++k) c[k] = (buf[k] * std::polar(1.0, -pi * k / (2 * d))).real() / d;
    } else {
        for (int k = 0; k < d; ++k) {
            double s = 0;
            for (int i = 0; i < d; ++i) s += fx[i] * std::cos(pi * k * (i + 0.5) / d);
            c[k] = 2.0 * s / d;
        }
        c[0] *= 0.5;
    }
    return c;
}

}  // namespace detail

/// Adaptive fit: the degree doubles until the top-half coefficient tail falls
/// under epsilon/2; failure to resolve within the cap throws.
inline ChebyshevExpansion fit_chebyshev(const std::function<double(double)>& f, double hi,
                                        double epsilon, const std::string& label,
                                        int maxdeg = 8192)
{
    if (!(hi > 0)) hi = 1.0;
    for (int d = 32; d <= maxdeg; d *= 2) {
        std::vector<double> c = detail::chebyshev_coefficients(f, hi, d);
        double tail = 0;
        for (int k = d / 2; k < d; ++k) tail += std::abs(c[k]);
        if (tail < 0.5 * epsilon) {
            // Trim trailing negligible coefficients.
            int last = d - 1;
            double run = 0;
            while (last > 0 && run + std::abs(c[last]) < 0.25 * epsilon) {
                run += std::abs(c[last]);
                --last;
            }
            c.resize(last + 1);
            return ChebyshevExpansion{hi, std::move(c)};
        }
    }
    throw UnresolvedMultiplierError("unresolved multiplier: " + label +
                                    " (degree cap reached with tail above epsilon)");
}

namespace detail {

/// Verify the DCT path: coefficients must match the direct formula.
inline double chebyshev_fft_selftest()
{
    auto f = [](double x) { return std::exp(-x) * std::cos(3 * x); };
    const int d = 64;
    std::vector<double> a = chebyshev_coefficients(f, 2.0, d);
    std::vector<double> b(d, 0.0);
    std::vector<double> fx(d);
    for (int i = 0; i < d; ++i)
        fx[i] = f(0.5 * 2.0 * (std::cos(pi * (i + 0.5) / d) + 1.0));
    for (int k = 0; k < d; ++k) {
        double s = 0;
        for (int i = 0; i < d; ++i) s += fx[i] * std::cos(pi * k * (i + 0.5) / d);
        b[k] = 2.0 * s / d;
    }
    b[0] *= 0.5;
    double err = 0;
    for (int k = 0; k < d; ++k) err = std::max(err, std::abs(a[k] - b[k]));
    return err;
}

}  // namespace detail

}  // namespace carnot
