#pragma once

#include <cmath>
#include <optional>

#include "carnot/core.hpp"
#include "carnot/group.hpp"

namespace carnot {

/// Piecewise-constant horizontal controls on [0,1], K segments of equal length.
struct HorizontalPath {
    Eigen::MatrixXd controls;  // K x 2ell

    int segments() const { return static_cast<int>(controls.rows()); }
};

/// Endpoint of the horizontal flow started at p: zdot = c, tdot_j = (1/2) <z, U_j c>.
/// Within a segment z is linear and <z,Uc> is constant (skewness), so the
/// integration below is exact.
inline GroupPoint path_endpoint(const GroupSpec& g, const GroupPoint& p,
                                const HorizontalPath& path)
{
    const int K = path.segments();
    const double tau = 1.0 / K;
    GroupPoint cur = p;
    for (int s = 0; s < K; ++s) {
        const Eigen::VectorXd c = path.controls.row(s).transpose();
        for (int j = 0; j < g.nc; ++j)
            cur.t[j] += tau * 0.5 * cur.z.dot(g.U[j] * c);
        cur.z += tau * c;
    }
    return cur;
}

inline double path_length(const HorizontalPath& path)
{
    const int K = path.segments();
    double len = 0;
    for (int s = 0; s < K; ++s) len += path.controls.row(s).norm();
    return len / K;
}

inline double path_energy(const HorizontalPath& path)
{
    const int K = path.segments();
    double e = 0;
    for (int s = 0; s < K; ++s) e += path.controls.row(s).squaredNorm();
    return e / K;
}

struct CcResult {
    double length = 0;
    double endpoint_residual = 0;
    HorizontalPath path;
};

namespace detail {

/// Group-invariant endpoint mismatch: coordinates of endpoint^-1 o target.
inline double endpoint_gap2(const GroupSpec& g, const GroupPoint& endpoint,
                            const GroupPoint& target)
{
    const GroupPoint d = group_mul(g, group_inv(g, endpoint), target);
    return d.z.squaredNorm() + d.t.squaredNorm();
}

struct CcObjective {
    const GroupSpec& g;
    const GroupPoint& p;
    const GroupPoint& q;
    double mu;

    double operator()(const GroupSpec&, const HorizontalPath& path) const
    {
        const GroupPoint end = path_endpoint(g, p, path);
        return path_energy(path) + mu * endpoint_gap2(g, end, q);
    }
};

/// One coordinate-descent sweep with parabolic line probes.
inline double cc_sweep(const GroupSpec& g, const CcObjective& obj, HorizontalPath& path,
                       double step)
{
    double best = obj(g, path);
    const int K = path.segments();
    const int m = static_cast<int>(path.controls.cols());
    for (int s = 0; s < K; ++s) {
        for (int c = 0; c < m; ++c) {
            const double v0 = path.controls(s, c);
            double h = step;
            for (int probe = 0; probe < 6; ++probe) {
                path.controls(s, c) = v0 + h;
                const double fp = obj(g, path);
                path.controls(s, c) = v0 - h;
                const double fm = obj(g, path);
                // Parabolic minimum through (v0-h, v0, v0+h).
                const double denom = fp - 2 * best + fm;
                double cand = v0;
                if (denom > 0) cand = v0 - 0.5 * h * (fp - fm) / denom;
                path.controls(s, c) = cand;
                double fc = obj(g, path);
                if (fp < fc) { fc = fp; cand = v0 + h; }
                if (fm < fc) { fc = fm; cand = v0 - h; }
                if (fc < best - 1e-15 * (1 + std::abs(best))) {
                    best = fc;
                    path.controls(s, c) = cand;
                    break;
                }
                path.controls(s, c) = v0;
                h *= 0.35;
            }
        }
    }
    return best;
}

/// Newton shooting on a few trailing controls to drive the endpoint residual
/// to ~1e-12; the remaining controls stay fixed.
inline bool cc_polish(const GroupSpec& g, const GroupPoint& p, const GroupPoint& q,
                      HorizontalPath& path)
{
    const int K = path.segments();
    const int m = static_cast<int>(path.controls.cols());
    const int dim = 2 * g.ell + g.nc;
    // Choose the last ceil(dim/m) segments as Newton variables.
    const int nseg = std::min(K, (dim + m - 1) / m);
    const int nvar = nseg * m;

    auto residual = [&](const HorizontalPath& pa) {
        const GroupPoint end = path_endpoint(g, p, pa);
        const GroupPoint d = group_mul(g, group_inv(g, end), q);
        Eigen::VectorXd r(dim);
        r.head(2 * g.ell) = d.z;
        r.tail(g.nc) = d.t;
        return r;
    };

    for (int it = 0; it < 60; ++it) {
        const Eigen::VectorXd r = residual(path);
        if (r.norm() < 1e-12) return true;
        Eigen::MatrixXd J(dim, nvar);
        const double h = 1e-6;
        int col = 0;
        for (int s = K - nseg; s < K; ++s)
            for (int c = 0; c < m; ++c, ++col) {
                HorizontalPath pp = path;
                pp.controls(s, c) += h;
                J.col(col) = (residual(pp) - r) / h;
            }
        const Eigen::VectorXd step =
            J.completeOrthogonalDecomposition().solve(-r);
        if (!step.allFinite()) return false;
        col = 0;
        for (int s = K - nseg; s < K; ++s)
            for (int c = 0; c < m; ++c, ++col) path.controls(s, c) += step[col];
    }
    return residual(path).norm() < 1e-8;
}

}  // namespace detail

/// Best found K-segment horizontal path length from p to q: an upper bound on
/// the Carnot-Caratheodory distance. Multi-start penalized coordinate descent
/// with a Newton polish; throws if no start reaches the endpoint.
inline CcResult cc_distance_ub(const GroupSpec& g, const GroupPoint& p, const GroupPoint& q,
                               int K = 16, int budget = 2000, std::uint64_t seed = 12345,
                               int starts = 6)
{
    if (K < 1) throw ValidationError("cc_distance_ub: K must be >= 1");
    detail::check_point(g, p, "cc_distance_ub");
    detail::check_point(g, q, "cc_distance_ub");
    const int m = 2 * g.ell;

    // Trivial case: coincident endpoints.
    const GroupPoint d0 = group_mul(g, group_inv(g, p), q);
    if (d0.z.norm() + d0.t.norm() == 0.0)
        return {0.0, 0.0, HorizontalPath{Eigen::MatrixXd::Zero(K, m)}};

    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = std::max(1.0, gauge_norm(g, d0));

    std::optional<CcResult> best;
    for (int start = 0; start < starts; ++start) {
        HorizontalPath path{Eigen::MatrixXd(K, m)};
        if (start == 0) {
            // Straight horizontal segment; exact when the target is horizontal.
            for (int s = 0; s < K; ++s) path.controls.row(s) = d0.z.transpose();
        } else {
            for (int s = 0; s < K; ++s)
                for (int c = 0; c < m; ++c)
                    path.controls(s, c) = 2.0 * scale * normal(rng);
        }
        const int sweeps = std::max(4, budget / (starts * 4));
        for (double mu = 10.0; mu <= 1e7; mu *= 30.0) {
            detail::CcObjective obj{g, p, q, mu};
            double prev = obj(g, path);
            for (int sweep = 0; sweep < sweeps; ++sweep) {
                const double now = detail::cc_sweep(g, obj, path, 0.3 * scale);
                if (prev - now < 1e-12 * (1 + std::abs(prev))) break;
                prev = now;
            }
        }
        if (!detail::cc_polish(g, p, q, path)) continue;
        const GroupPoint end = path_endpoint(g, p, path);
        const double res = std::sqrt(detail::endpoint_gap2(g, end, q));
        if (res > 1e-8) continue;
        const double len = path_length(path);
        if (!best || len < best->length) best = CcResult{len, res, path};
    }
    if (!best)
        throw Error("cc_distance_ub: no admissible path found within budget");
    return *best;
}

}  // namespace carnot
