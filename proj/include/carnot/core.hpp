#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace carnot {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;

inline std::string version_string()
{
#ifdef CARNOT_SPECTRA_VERSION
    return CARNOT_SPECTRA_VERSION;
#else
    return "0.0.0";
#endif
}

/// Base class of everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : Error {
    using Error::Error;
};

/// Group construction rejected (non-skew, dependent, or H-type violation).
struct ValidationError : Error {
    using Error::Error;
};

/// Chebyshev degree cap reached before the coefficient tail fell under epsilon.
struct UnresolvedMultiplierError : Error {
    using Error::Error;
};

/// Quadrature or basis truncation tail exceeded its budget.
struct TruncationError : Error {
    using Error::Error;
};

/// Translation pushed too much mass outside the horizontal box.
struct TranslationLeakError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// Deterministic RNG used everywhere a seed appears in a contract.
using Rng = std::mt19937_64;

inline int max_threads()
{
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("CARNOT_SPECTRA_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

/// Runs fn(i) for i in [0,n). Chunks are disjoint, so results are
/// independent of the thread count as long as fn writes only to slot i.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    const int nt = max_threads();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace carnot
