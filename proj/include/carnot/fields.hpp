#pragma once

#include "carnot/grid.hpp"
#include "carnot/transform.hpp"

namespace carnot {

// Horizontal left-invariant vector fields
//   W_i = d/dz_i + (1/2) sum_k (U^(k)T z)_i d/dt_k,   i = 0..2ell-1,
// discretized with fourth-order centered differences on the horizontal axes
// and exact spectral differentiation on the periodic central axes.

namespace detail {

/// Fourth-order centered first derivative along horizontal axis `axis`,
/// zero beyond the box.
inline GridFunction horizontal_derivative4(const GridFunction& f, int axis)
{
    const Grid& g = f.grid;
    GridFunction out(g);
    const std::size_t ts = g.tsites();
    const double ih = 1.0 / (12.0 * g.hz());
    // Stride of `axis` in z-site units.
    long stride = 1;
    for (int a = g.horiz_axes() - 1; a > axis; --a) stride *= g.Nz;

    parallel_for(g.zsites(), [&](std::size_t zs) {
        int idx[16];
        decode_z(g, zs, idx);
        const int i = idx[axis];
        auto pick = [&](long off) -> const cplx* {
            const long j = i + off;
            if (j < 0 || j >= g.Nz) return nullptr;
            return f.data.data() + (static_cast<long>(zs) + off * stride) * static_cast<long>(ts);
        };
        const cplx* m2 = pick(-2);
        const cplx* m1 = pick(-1);
        const cplx* p1 = pick(+1);
        const cplx* p2 = pick(+2);
        cplx* o = out.data.data() + zs * ts;
        for (std::size_t t = 0; t < ts; ++t) {
            cplx v(0, 0);
            if (p2) v -= p2[t];
            if (p1) v += 8.0 * p1[t];
            if (m1) v -= 8.0 * m1[t];
            if (m2) v += m2[t];
            o[t] = v * ih;
        }
    });
    return out;
}

/// Spectral d/dt_k on the periodic central axes.
inline GridFunction central_derivative(const GridFunction& f, int k)
{
    GridFunction fh = f;
    central_dft(fh, false);
    const Grid& g = f.grid;
    const std::size_t ts = g.tsites();
    std::vector<double> lam(ts);
    for (std::size_t t = 0; t < ts; ++t) lam[t] = lambda_of_tsite(g, t)[k];
    parallel_for(g.zsites(), [&](std::size_t zs) {
        cplx* p = fh.data.data() + zs * ts;
        for (std::size_t t = 0; t < ts; ++t) p[t] *= cplx(0, lam[t]);
    });
    central_dft(fh, true);
    return fh;
}

}  // namespace detail

/// Applies the field with index `which` in (X_1..X_ell, Y_1..Y_ell).
inline GridFunction apply_field(const GroupSpec& gs, const GridFunction& f, int which)
{
    const Grid& g = f.grid;
    if (g.ell != gs.ell || g.nc != gs.nc)
        throw DimensionError("apply_field: grid does not match group");
    if (which < 0 || which >= 2 * gs.ell)
        throw DimensionError("apply_field: field index out of range");

    GridFunction out = detail::horizontal_derivative4(f, which);
    const std::size_t ts = g.tsites();
    std::vector<int> zi(g.horiz_axes());
    for (int k = 0; k < gs.nc; ++k) {
        const GridFunction dt = detail::central_derivative(f, k);
        const Eigen::VectorXd col = gs.U[k].col(which);
        for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
            detail::decode_z(g, zs, zi.data());
            double coef = 0;
            for (int a = 0; a < g.horiz_axes(); ++a) coef += g.zcoord(zi[a]) * col[a];
            coef *= 0.5;
            if (coef == 0.0) continue;
            const cplx* src = dt.data.data() + zs * ts;
            cplx* dst = out.data.data() + zs * ts;
            for (std::size_t t = 0; t < ts; ++t) dst[t] += coef * src[t];
        }
    }
    return out;
}

/// Direct stencil form of the Kohn expansion
///   Delta_G = sum d^2/dz_j^2 + (1/4)|z|^2 sum d^2/dt_s^2
///           + sum_s sum_{i,j} z_i U^(s)_ij d^2/(dt_s dz_j),
/// kept as a cross-check of the composed-field route.
inline GridFunction apply_kohn_laplacian(const GroupSpec& gs, const GridFunction& f)
{
    const Grid& g = f.grid;
    GridFunction out(g);
    const std::size_t ts = g.tsites();
    const double ih2 = 1.0 / (g.hz() * g.hz());

    // Second horizontal derivatives (standard 3-point stencil).
    for (int axis = 0; axis < g.horiz_axes(); ++axis) {
        std::size_t stride = 1;
        for (int a = g.horiz_axes() - 1; a > axis; --a) stride *= g.Nz;
        std::vector<int> zi(g.horiz_axes());
        for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
            detail::decode_z(g, zs, zi.data());
            const int i = zi[axis];
            const cplx* c = f.data.data() + zs * ts;
            const cplx* m = i - 1 >= 0 ? f.data.data() + (zs - stride) * ts : nullptr;
            const cplx* p = i + 1 < g.Nz ? f.data.data() + (zs + stride) * ts : nullptr;
            cplx* o = out.data.data() + zs * ts;
            for (std::size_t t = 0; t < ts; ++t) {
                cplx v = -2.0 * c[t];
                if (m) v += m[t];
                if (p) v += p[t];
                o[t] += v * ih2;
            }
        }
    }

    // Central second derivatives and the mixed terms, spectrally in t.
    GridFunction fh = f;
    central_dft(fh, false);
    std::vector<Eigen::VectorXd> lam(ts);
    for (std::size_t t = 0; t < ts; ++t) lam[t] = lambda_of_tsite(g, t);

    // (1/4)|z|^2 d^2/dt^2 -> -(1/4)|z|^2 |lambda|^2.
    {
        GridFunction term = fh;
        std::vector<int> zi(g.horiz_axes());
        for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
            detail::decode_z(g, zs, zi.data());
            double z2 = 0;
            for (int a = 0; a < g.horiz_axes(); ++a) {
                const double x = g.zcoord(zi[a]);
                z2 += x * x;
            }
            cplx* p = term.data.data() + zs * ts;
            for (std::size_t t = 0; t < ts; ++t) p[t] *= -0.25 * z2 * lam[t].squaredNorm();
        }
        central_dft(term, true);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += term[i];
    }

    // Mixed terms: for each s, (i lambda_s) * sum_j (U^(s)T z)_j d/dz_j, with
    // a centered 2nd-order stencil for d/dz_j.
    for (int s = 0; s < gs.nc; ++s) {
        GridFunction dts = fh;
        for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
            cplx* p = dts.data.data() + zs * ts;
            for (std::size_t t = 0; t < ts; ++t) p[t] *= cplx(0, lam[t][s]);
        }
        central_dft(dts, true);
        for (int axis = 0; axis < g.horiz_axes(); ++axis) {
            std::size_t stride = 1;
            for (int a = g.horiz_axes() - 1; a > axis; --a) stride *= g.Nz;
            std::vector<int> zi(g.horiz_axes());
            for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
                detail::decode_z(g, zs, zi.data());
                double coef = 0;
                for (int a = 0; a < g.horiz_axes(); ++a)
                    coef += g.zcoord(zi[a]) * gs.U[s](a, axis);
                if (coef == 0.0) continue;
                const int i = zi[axis];
                const cplx* m = i - 1 >= 0 ? dts.data.data() + (zs - stride) * ts : nullptr;
                const cplx* p = i + 1 < g.Nz ? dts.data.data() + (zs + stride) * ts : nullptr;
                cplx* o = out.data.data() + zs * ts;
                const double c2 = coef / (2.0 * g.hz());
                for (std::size_t t = 0; t < ts; ++t) {
                    cplx v(0, 0);
                    if (p) v += p[t];
                    if (m) v -= m[t];
                    o[t] += c2 * v;
                }
            }
        }
    }
    return out;
}

}  // namespace carnot
