#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "carnot/core.hpp"
#include "carnot/group.hpp"

namespace carnot {

/// Box grid over global coordinates: horizontal axes cover [-L,L) with zero
/// (decay) boundary, central axes cover [-T,T) periodically.
struct Grid {
    int ell = 0;
    int nc = 0;
    double L = 0;
    double T = 0;
    int Nz = 0;
    int Nt = 0;

    double hz() const { return 2.0 * L / Nz; }
    double ht() const { return 2.0 * T / Nt; }
    int horiz_axes() const { return 2 * ell; }
    std::size_t zsites() const
    {
        std::size_t n = 1;
        for (int a = 0; a < horiz_axes(); ++a) n *= static_cast<std::size_t>(Nz);
        return n;
    }
    std::size_t tsites() const
    {
        std::size_t n = 1;
        for (int a = 0; a < nc; ++a) n *= static_cast<std::size_t>(Nt);
        return n;
    }
    std::size_t size() const { return zsites() * tsites(); }
    double cell_volume() const
    {
        return std::pow(hz(), horiz_axes()) * std::pow(ht(), nc);
    }
    double zcoord(int i) const { return -L + i * hz(); }
    double tcoord(int i) const { return -T + i * ht(); }

    bool operator==(const Grid& o) const
    {
        return ell == o.ell && nc == o.nc && L == o.L && T == o.T && Nz == o.Nz && Nt == o.Nt;
    }
};

inline Grid make_grid(const GroupSpec& g, double L, double T, int Nz, int Nt)
{
    if (!(L > 0) || !(T > 0)) throw ValidationError("make_grid: L and T must be positive");
    if (Nz < 2 || Nz % 2 != 0) throw ValidationError("make_grid: Nz must be even and positive");
    if (Nt < 2 || Nt % 2 != 0) throw ValidationError("make_grid: Nt must be even and positive");
    return Grid{g.ell, g.nc, L, T, Nz, Nt};
}

/// Complex samples on a Grid, row-major in axis order (x_1..x_ell, y_1..y_ell,
/// t_1..t_nc); the central axes vary fastest.
struct GridFunction {
    Grid grid;
    std::vector<cplx> data;

    GridFunction() = default;
    explicit GridFunction(const Grid& gr) : grid(gr), data(gr.size(), cplx(0, 0)) {}

    cplx& operator[](std::size_t i) { return data[i]; }
    const cplx& operator[](std::size_t i) const { return data[i]; }
    std::size_t size() const { return data.size(); }
};

namespace detail {

inline void check_same_grid(const GridFunction& a, const GridFunction& b, const char* who)
{
    if (!(a.grid == b.grid)) throw DimensionError(std::string(who) + ": grid mismatch");
}

/// Decodes a flat z-site index into per-axis indices (row-major).
inline void decode_z(const Grid& g, std::size_t zsite, int* idx)
{
    for (int a = g.horiz_axes() - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(zsite % g.Nz);
        zsite /= g.Nz;
    }
}

inline void decode_t(const Grid& g, std::size_t tsite, int* idx)
{
    for (int a = g.nc - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(tsite % g.Nt);
        tsite /= g.Nt;
    }
}

}  // namespace detail

inline GridFunction operator+(const GridFunction& a, const GridFunction& b)
{
    detail::check_same_grid(a, b, "operator+");
    GridFunction r(a.grid);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline GridFunction operator-(const GridFunction& a, const GridFunction& b)
{
    detail::check_same_grid(a, b, "operator-");
    GridFunction r(a.grid);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline GridFunction operator*(cplx c, const GridFunction& a)
{
    GridFunction r(a.grid);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = c * a[i];
    return r;
}

/// Pointwise product (the product of functions, not convolution).
inline GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b)
{
    detail::check_same_grid(a, b, "pointwise_mul");
    GridFunction r(a.grid);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] * b[i];
    return r;
}

inline cplx inner_product(const GridFunction& a, const GridFunction& b)
{
    detail::check_same_grid(a, b, "inner_product");
    cplx s(0, 0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s * a.grid.cell_volume();
}

/// Riemann L^p norm; p may be infinity.
inline double lp_norm(const GridFunction& f, double p)
{
    if (std::isinf(p)) {
        double m = 0;
        for (const cplx& v : f.data) m = std::max(m, std::abs(v));
        return m;
    }
    if (p < 1.0) throw ValidationError("lp_norm: p must be >= 1 or infinity");
    double s = 0;
    if (p == 2.0) {
        for (const cplx& v : f.data) s += std::norm(v);
    } else if (p == 1.0) {
        for (const cplx& v : f.data) s += std::abs(v);
    } else {
        for (const cplx& v : f.data) s += std::pow(std::abs(v), p);
    }
    return std::pow(f.grid.cell_volume() * s, 1.0 / p);
}

/// Fraction of the squared L^2 mass carried by sites whose horizontal
/// coordinates reach into the outer 10% of the box.
inline double boundary_mass(const GridFunction& f)
{
    const Grid& g = f.grid;
    const std::size_t ts = g.tsites();
    double outer = 0, total = 0;
    std::vector<int> zi(g.horiz_axes());
    for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
        detail::decode_z(g, zs, zi.data());
        bool edge = false;
        for (int a = 0; a < g.horiz_axes(); ++a)
            if (std::abs(g.zcoord(zi[a])) >= 0.9 * g.L) { edge = true; break; }
        double m = 0;
        for (std::size_t t = 0; t < ts; ++t) m += std::norm(f[zs * ts + t]);
        total += m;
        if (edge) outer += m;
    }
    return total > 0 ? outer / total : 0.0;
}

// ---------------------------------------------------------------------------
// Sampling generators
// ---------------------------------------------------------------------------

/// Parsed generator description, e.g. "gaussian lambda=1 ax=0 ay=0".
struct GeneratorSpec {
    std::string kind;
    std::map<std::string, double> params;

    double get(const std::string& key, double dflt) const
    {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    }
    bool has(const std::string& key) const { return params.count(key) > 0; }
};

inline GeneratorSpec parse_generator(const std::string& text)
{
    std::istringstream is(text);
    GeneratorSpec spec;
    if (!(is >> spec.kind)) throw ConfigError("parse_generator: empty generator spec");
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ConfigError("parse_generator: expected key=value, got '" + tok + "'");
        spec.params[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
    }
    return spec;
}

inline std::string format_generator(const GeneratorSpec& spec)
{
    std::ostringstream os;
    os << spec.kind;
    for (const auto& [k, v] : spec.params) os << ' ' << k << '=' << v;
    return os.str();
}

namespace detail {

/// Physicists' Hermite polynomial H_n.
inline double hermite_poly(int n, double x)
{
    double h0 = 1.0, h1 = 2.0 * x;
    if (n == 0) return h0;
    if (n == 1) return h1;
    for (int k = 2; k <= n; ++k) {
        const double h2 = 2.0 * x * h1 - 2.0 * (k - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

void dft_axis_pow2(cplx* x, int n, int stride, bool inverse);

}  // namespace detail

/// Samples a built-in analytic family or seeded band-limited noise.
///   gaussian:           lambda, ax, ay, amp  (Hermite profile x central wave)
///   random-bandlimited: seed, kz, kt, sigma  (low-pass noise with decay envelope)
///   delta:              unit impulse at the origin scaled by 1/cellvolume
///   constant:           amp
GridFunction sample(const GroupSpec& g, const Grid& grid, const GeneratorSpec& spec);

inline GridFunction sample(const GroupSpec& g, const Grid& grid, const std::string& spec)
{
    return sample(g, grid, parse_generator(spec));
}

// ---------------------------------------------------------------------------
// Interpolation, translation, convolution
// ---------------------------------------------------------------------------

/// Multilinear interpolation at an arbitrary point. Horizontal axes use zero
/// extension, central axes wrap periodically. Returns the value and whether
/// any stencil corner fell outside the horizontal box.
inline std::pair<cplx, bool> point_eval(const GridFunction& f, const GroupPoint& p)
{
    const Grid& g = f.grid;
    const int za = g.horiz_axes();
    const int na = za + g.nc;
    if (p.z.size() != za || p.t.size() != g.nc)
        throw DimensionError("point_eval: point does not match grid dimensions");

    // Per axis: lower index and fractional part. Values within 1e-9 of a grid
    // node snap onto it so that lattice translations stay exact.
    int lo[16];
    double frac[16];
    bool outside = false;
    for (int a = 0; a < za; ++a) {
        const double u = (p.z[a] + g.L) / g.hz();
        double fl = std::floor(u);
        double fr = u - fl;
        if (fr < 1e-9) fr = 0.0;
        if (fr > 1.0 - 1e-9) { fr = 0.0; fl += 1.0; }
        lo[a] = static_cast<int>(fl);
        frac[a] = fr;
        if (lo[a] < 0 || lo[a] >= g.Nz || (fr > 0.0 && lo[a] + 1 >= g.Nz)) outside = true;
    }
    for (int a = 0; a < g.nc; ++a) {
        double u = (p.t[a] + g.T) / g.ht();
        u -= std::floor(u / g.Nt) * g.Nt;  // periodic wrap
        double fl = std::floor(u);
        double fr = u - fl;
        if (fr < 1e-9) fr = 0.0;
        if (fr > 1.0 - 1e-9) { fr = 0.0; fl += 1.0; }
        lo[za + a] = static_cast<int>(fl) % g.Nt;
        frac[za + a] = fr;
    }

    const std::size_t ts = g.tsites();
    cplx acc(0, 0);
    const int corners = 1 << na;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        std::size_t zsite = 0, tsite = 0;
        bool skip = false;
        for (int a = 0; a < za; ++a) {
            const int bit = (c >> a) & 1;
            w *= bit ? frac[a] : 1.0 - frac[a];
            if (w == 0.0) { skip = true; break; }
            const int idx = lo[a] + bit;
            if (idx < 0 || idx >= g.Nz) { skip = true; break; }
            zsite = zsite * g.Nz + idx;
        }
        if (skip) continue;
        for (int a = 0; a < g.nc; ++a) {
            const int bit = (c >> (za + a)) & 1;
            w *= bit ? frac[za + a] : 1.0 - frac[za + a];
            const int idx = (lo[za + a] + bit) % g.Nt;
            tsite = tsite * g.Nt + idx;
        }
        if (w == 0.0) continue;
        acc += w * f[zsite * ts + tsite];
    }
    return {acc, outside};
}

/// Right translation tau_w f(w') = f(w' o w). Values that would need data
/// outside the horizontal box become zero; their fraction is reported and
/// fractions above 20% are an error.
inline GridFunction translate_right(const GroupSpec& gs, const GridFunction& f,
                                    const GroupPoint& w, double* leak_fraction = nullptr)
{
    const Grid& g = f.grid;
    detail::check_point(gs, w, "translate_right");
    if (w.z.isZero(0.0) && w.t.isZero(0.0)) {
        if (leak_fraction) *leak_fraction = 0.0;
        return f;
    }
    GridFunction out(g);
    const std::size_t ts = g.tsites();
    const int za = g.horiz_axes();
    // t part of p o w: t_j + wt_j + 0.5 <z_p, U_j w_z>; precompute U_j w_z.
    std::vector<Eigen::VectorXd> uw(gs.nc);
    for (int j = 0; j < gs.nc; ++j) uw[j] = 0.5 * (gs.U[j] * w.z);

    std::vector<int> zi(za), ti(gs.nc);
    std::size_t leaked = 0;
    GroupPoint q(Eigen::VectorXd(za), Eigen::VectorXd(gs.nc));
    for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
        detail::decode_z(g, zs, zi.data());
        Eigen::VectorXd zp(za);
        for (int a = 0; a < za; ++a) zp[a] = g.zcoord(zi[a]);
        q.z = zp + w.z;
        for (std::size_t t = 0; t < ts; ++t) {
            detail::decode_t(g, t, ti.data());
            for (int j = 0; j < gs.nc; ++j)
                q.t[j] = g.tcoord(ti[j]) + w.t[j] + zp.dot(uw[j]);
            auto [v, outside] = point_eval(f, q);
            out[zs * ts + t] = v;
            if (outside) ++leaked;
        }
    }
    const double frac = static_cast<double>(leaked) / static_cast<double>(g.size());
    if (leak_fraction) *leak_fraction = frac;
    if (frac > 0.2) {
        std::ostringstream os;
        os << "translate_right: translation too large for grid, leak fraction " << frac;
        throw TranslationLeakError(os.str());
    }
    return out;
}

/// (f * g)(w) = sum_v f(v) g(v^-1 o w) cellvolume; tiny grids only.
inline GridFunction convolve_bruteforce(const GroupSpec& gs, const GridFunction& f,
                                        const GridFunction& g2)
{
    detail::check_same_grid(f, g2, "convolve_bruteforce");
    const Grid& g = f.grid;
    if (g.size() > 4096)
        throw ValidationError("convolve_bruteforce: grid too large (" +
                              std::to_string(g.size()) + " > 4096 points)");
    const std::size_t ts = g.tsites();
    const int za = g.horiz_axes();
    const double vol = g.cell_volume();

    // Precompute coordinates of every site.
    const std::size_t n = g.size();
    std::vector<Eigen::VectorXd> zc(g.zsites(), Eigen::VectorXd(za));
    std::vector<int> zi(za), ti(gs.nc);
    for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
        detail::decode_z(g, zs, zi.data());
        for (int a = 0; a < za; ++a) zc[zs][a] = g.zcoord(zi[a]);
    }
    std::vector<Eigen::VectorXd> tc(ts, Eigen::VectorXd(gs.nc));
    for (std::size_t t = 0; t < ts; ++t) {
        detail::decode_t(g, t, ti.data());
        for (int j = 0; j < gs.nc; ++j) tc[t][j] = g.tcoord(ti[j]);
    }

    GridFunction out(g);
    parallel_for(g.zsites(), [&](std::size_t ws) {
        GroupPoint q(Eigen::VectorXd(za), Eigen::VectorXd(gs.nc));
        std::vector<double> cross(gs.nc);
        for (std::size_t vs = 0; vs < g.zsites(); ++vs) {
            q.z = zc[ws] - zc[vs];
            for (int j = 0; j < gs.nc; ++j) cross[j] = -0.5 * zc[vs].dot(gs.U[j] * zc[ws]);
            for (std::size_t wt = 0; wt < ts; ++wt) {
                cplx acc(0, 0);
                for (std::size_t vt = 0; vt < ts; ++vt) {
                    const cplx fv = f[vs * ts + vt];
                    if (fv == cplx(0, 0)) continue;
                    for (int j = 0; j < gs.nc; ++j)
                        q.t[j] = tc[wt][j] - tc[vt][j] + cross[j];
                    acc += fv * point_eval(g2, q).first;
                }
                out[ws * ts + wt] += acc * vol;
            }
        }
    });
    return out;
}

/// Pullback by the dilation: result(p) = f(gamma_delta p). Integer delta is an
/// exact index remap; other factors interpolate.
inline GridFunction dilate_pullback(const GroupSpec& gs, const GridFunction& f, double delta)
{
    if (!(delta > 0)) throw ValidationError("dilate_pullback: delta must be positive");
    const Grid& g = f.grid;
    GridFunction out(g);
    const std::size_t ts = g.tsites();
    const int za = g.horiz_axes();
    const bool integral = std::abs(delta - std::round(delta)) < 1e-14;
    if (integral) {
        const long d = std::lround(delta);
        const long d2 = d * d;
        std::vector<int> zi(za), ti(gs.nc);
        for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
            detail::decode_z(g, zs, zi.data());
            std::size_t src = 0;
            bool ok = true;
            for (int a = 0; a < za; ++a) {
                const long i2 = d * zi[a] - (d - 1) * (g.Nz / 2);
                if (i2 < 0 || i2 >= g.Nz) { ok = false; break; }
                src = src * g.Nz + static_cast<std::size_t>(i2);
            }
            if (!ok) continue;
            for (std::size_t t = 0; t < ts; ++t) {
                detail::decode_t(g, t, ti.data());
                std::size_t tsrc = 0;
                for (int a = 0; a < gs.nc; ++a) {
                    long j2 = (d2 * ti[a] - (d2 - 1) * (g.Nt / 2)) % g.Nt;
                    if (j2 < 0) j2 += g.Nt;
                    tsrc = tsrc * g.Nt + static_cast<std::size_t>(j2);
                }
                out[zs * ts + t] = f[src * ts + tsrc];
            }
        }
        return out;
    }
    std::vector<int> zi(za), ti(gs.nc);
    GroupPoint q(Eigen::VectorXd(za), Eigen::VectorXd(gs.nc));
    for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
        detail::decode_z(g, zs, zi.data());
        for (int a = 0; a < za; ++a) q.z[a] = delta * g.zcoord(zi[a]);
        for (std::size_t t = 0; t < ts; ++t) {
            detail::decode_t(g, t, ti.data());
            for (int a = 0; a < gs.nc; ++a) q.t[a] = delta * delta * g.tcoord(ti[a]);
            out[zs * ts + t] = point_eval(f, q).first;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generator implementation
// ---------------------------------------------------------------------------

namespace detail {

inline void dft_axis_naive(cplx* x, int n, int stride, bool inverse)
{
    static thread_local std::map<std::pair<int, bool>, std::vector<cplx>> twiddle_cache;
    auto& tw = twiddle_cache[{n, inverse}];
    if (tw.empty()) {
        tw.resize(static_cast<std::size_t>(n) * n);
        const double sign = inverse ? 1.0 : -1.0;
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                tw[static_cast<std::size_t>(k) * n + j] =
                    std::polar(1.0, sign * 2.0 * pi * k * j / n);
    }
    std::vector<cplx> buf(n);
    for (int k = 0; k < n; ++k) {
        cplx s(0, 0);
        const cplx* row = &tw[static_cast<std::size_t>(k) * n];
        for (int j = 0; j < n; ++j) s += row[j] * x[j * stride];
        buf[k] = s;
    }
    for (int k = 0; k < n; ++k) x[k * stride] = buf[k];
}

inline void dft_axis(cplx* x, int n, int stride, bool inverse)
{
    if ((n & (n - 1)) == 0) {
        dft_axis_pow2(x, n, stride, inverse);
    } else {
        dft_axis_naive(x, n, stride, inverse);
    }
}

inline void dft_axis_pow2_impl(cplx* x, int n, int stride, bool inverse)
{
    // Iterative radix-2 with bit reversal on a strided view.
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i * stride], x[j * stride]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (int len = 2; len <= n; len <<= 1) {
        const cplx wl = std::polar(1.0, sign * 2.0 * pi / len);
        for (int i = 0; i < n; i += len) {
            cplx w(1, 0);
            for (int k = 0; k < len / 2; ++k) {
                cplx u = x[(i + k) * stride];
                cplx v = x[(i + k + len / 2) * stride] * w;
                x[(i + k) * stride] = u + v;
                x[(i + k + len / 2) * stride] = u - v;
                w *= wl;
            }
        }
    }
}

inline void dft_axis_pow2(cplx* x, int n, int stride, bool inverse)
{
    dft_axis_pow2_impl(x, n, stride, inverse);
}

}  // namespace detail

inline GridFunction sample(const GroupSpec& gs, const Grid& grid, const GeneratorSpec& spec)
{
    if (grid.ell != gs.ell || grid.nc != gs.nc)
        throw DimensionError("sample: grid does not match group");
    GridFunction f(grid);
    const std::size_t ts = grid.tsites();
    const int za = grid.horiz_axes();
    std::vector<int> zi(za), ti(grid.nc);

    if (spec.kind == "gaussian") {
        std::vector<double> lam(grid.nc, 0.0);
        lam[0] = spec.get("lambda", 1.0);
        for (int a = 1; a < grid.nc; ++a)
            lam[a] = spec.get("lambda" + std::to_string(a + 1), 0.0);
        double lam_abs = 0;
        for (double l : lam) lam_abs += l * l;
        lam_abs = std::sqrt(lam_abs);
        if (lam_abs == 0) lam_abs = 1.0;
        const int ax = static_cast<int>(spec.get("ax", 0));
        const int ay = static_cast<int>(spec.get("ay", 0));
        if ((ax > 0 || ay > 0) && gs.ell != 1)
            throw ValidationError("sample: Hermite profile orders need ell = 1");
        const double amp = spec.get("amp", 1.0);
        const double c = std::sqrt(lam_abs / 2.0);
        for (std::size_t zs = 0; zs < grid.zsites(); ++zs) {
            detail::decode_z(grid, zs, zi.data());
            double z2 = 0, prof = 1.0;
            for (int a = 0; a < za; ++a) {
                const double x = grid.zcoord(zi[a]);
                z2 += x * x;
            }
            if (gs.ell == 1) {
                prof = detail::hermite_poly(ax, c * grid.zcoord(zi[0]))
                     * detail::hermite_poly(ay, c * grid.zcoord(zi[1]));
            }
            const double radial = amp * prof * std::exp(-lam_abs * z2 / 4.0);
            for (std::size_t t = 0; t < ts; ++t) {
                detail::decode_t(grid, t, ti.data());
                double phase = 0;
                for (int a = 0; a < grid.nc; ++a) phase += lam[a] * grid.tcoord(ti[a]);
                f[zs * ts + t] = radial * std::polar(1.0, phase);
            }
        }
        return f;
    }

    if (spec.kind == "random-bandlimited") {
        const std::uint64_t seed = static_cast<std::uint64_t>(spec.get("seed", 1));
        const int kz = static_cast<int>(spec.get("kz", grid.Nz / 8));
        const int kt = static_cast<int>(spec.get("kt", grid.Nt / 8));
        const double sigma = spec.get("sigma", grid.L / 5.0);
        Rng rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double re = normal(rng), im = normal(rng);
            f[i] = cplx(re, im);
        }
        // Low-pass: forward DFT along every axis, zero high modes, inverse.
        const int naxes = za + grid.nc;
        std::size_t block = f.size();
        for (int a = 0; a < naxes; ++a) {
            const int n = a < za ? grid.Nz : grid.Nt;
            block /= n;
            const std::size_t nslices = f.size() / n;
            for (std::size_t s = 0; s < nslices; ++s) {
                const std::size_t base = (s / block) * block * n + (s % block);
                detail::dft_axis(f.data.data() + base, n, static_cast<int>(block), false);
            }
        }
        // Mode (k mod n) has signed frequency k or k-n.
        std::vector<int> idx(naxes);
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::size_t rem = i;
            bool keep = true;
            for (int a = naxes - 1; a >= 0; --a) {
                const int n = a < za ? grid.Nz : grid.Nt;
                const int cut = a < za ? kz : kt;
                int k = static_cast<int>(rem % n);
                rem /= n;
                if (k > n / 2) k -= n;
                if (std::abs(k) > cut) { keep = false; }
            }
            if (!keep) f[i] = cplx(0, 0);
        }
        block = f.size();
        for (int a = 0; a < naxes; ++a) {
            const int n = a < za ? grid.Nz : grid.Nt;
            block /= n;
            const std::size_t nslices = f.size() / n;
            for (std::size_t s = 0; s < nslices; ++s) {
                const std::size_t base = (s / block) * block * n + (s % block);
                detail::dft_axis(f.data.data() + base, n, static_cast<int>(block), true);
            }
        }
        for (std::size_t i = 0; i < f.size(); ++i) f[i] /= static_cast<double>(f.size());
        // Horizontal decay envelope keeps the boundary mass negligible.
        for (std::size_t zs = 0; zs < grid.zsites(); ++zs) {
            detail::decode_z(grid, zs, zi.data());
            double z2 = 0;
            for (int a = 0; a < za; ++a) {
                const double x = grid.zcoord(zi[a]);
                z2 += x * x;
            }
            const double env = std::exp(-z2 / (2.0 * sigma * sigma));
            for (std::size_t t = 0; t < ts; ++t) f[zs * ts + t] *= env;
        }
        const double nrm = lp_norm(f, 2.0);
        if (nrm > 0)
            for (auto& v : f.data) v /= nrm;
        return f;
    }

    if (spec.kind == "delta") {
        std::size_t zsite = 0, tsite = 0;
        for (int a = 0; a < za; ++a) zsite = zsite * grid.Nz + grid.Nz / 2;
        for (int a = 0; a < grid.nc; ++a) tsite = tsite * grid.Nt + grid.Nt / 2;
        f[zsite * ts + tsite] = cplx(1.0 / grid.cell_volume(), 0);
        return f;
    }

    if (spec.kind == "constant") {
        const double amp = spec.get("amp", 1.0);
        for (auto& v : f.data) v = cplx(amp, 0);
        return f;
    }

    throw ValidationError("sample: unknown generator '" + spec.kind + "'");
}

}  // namespace carnot
