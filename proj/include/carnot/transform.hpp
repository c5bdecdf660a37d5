#pragma once

#include <vector>

#include "carnot/grid.hpp"

namespace carnot {

// Discrete transforms over the periodic central axes. Frequencies live on the
// lattice lambda = pi m / T with m in [-Nt/2, Nt/2). Blocks are indexed by the
// raw DFT index k (m = k for k < Nt/2, else k - Nt).

inline int signed_mode(int k, int n) { return k < n / 2 ? k : k - n; }

/// Central frequency vector of a t-site index (row-major over central axes).
inline Eigen::VectorXd lambda_of_tsite(const Grid& g, std::size_t tsite)
{
    Eigen::VectorXd lam(g.nc);
    for (int a = g.nc - 1; a >= 0; --a) {
        const int k = static_cast<int>(tsite % g.Nt);
        tsite /= g.Nt;
        lam[a] = pi * signed_mode(k, g.Nt) / g.T;
    }
    return lam;
}

/// Returns the t-site index whose lattice frequency equals lambda, or -1.
inline long tsite_of_lambda(const Grid& g, const Eigen::VectorXd& lam, double tol = 1e-9)
{
    if (lam.size() != g.nc) return -1;
    std::size_t site = 0;
    for (int a = 0; a < g.nc; ++a) {
        const double m = lam[a] * g.T / pi;
        const long mi = std::lround(m);
        if (std::abs(m - mi) > tol) return -1;
        if (mi < -g.Nt / 2 || mi >= g.Nt / 2) return -1;
        const long k = mi >= 0 ? mi : mi + g.Nt;
        site = site * g.Nt + static_cast<std::size_t>(k);
    }
    return static_cast<long>(site);
}

/// In-place unnormalized DFT over every central axis (forward: e^{-2pi i jk/N}).
inline void central_dft(GridFunction& f, bool inverse)
{
    const Grid& g = f.grid;
    const std::size_t ts = g.tsites();
    std::size_t block = ts;
    for (int a = 0; a < g.nc; ++a) {
        block /= g.Nt;
        parallel_for(g.zsites(), [&](std::size_t zs) {
            cplx* base = f.data.data() + zs * ts;
            const std::size_t nslices = ts / g.Nt;
            for (std::size_t s = 0; s < nslices; ++s) {
                const std::size_t off = (s / block) * block * g.Nt + (s % block);
                detail::dft_axis(base + off, g.Nt, static_cast<int>(block), inverse);
            }
        });
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(ts);
        for (auto& v : f.data) v *= scale;
    }
}

/// Per-frequency horizontal blocks: blocks[k][zsite] from data[zsite*ts + k].
inline std::vector<Eigen::VectorXcd> to_central_blocks(const GridFunction& fhat)
{
    const Grid& g = fhat.grid;
    const std::size_t ts = g.tsites(), zs = g.zsites();
    std::vector<Eigen::VectorXcd> blocks(ts, Eigen::VectorXcd(zs));
    for (std::size_t z = 0; z < zs; ++z)
        for (std::size_t k = 0; k < ts; ++k) blocks[k][z] = fhat[z * ts + k];
    return blocks;
}

inline void from_central_blocks(GridFunction& fhat, const std::vector<Eigen::VectorXcd>& blocks)
{
    const Grid& g = fhat.grid;
    const std::size_t ts = g.tsites(), zs = g.zsites();
    for (std::size_t z = 0; z < zs; ++z)
        for (std::size_t k = 0; k < ts; ++k) fhat[z * ts + k] = blocks[k][z];
}

}  // namespace carnot
