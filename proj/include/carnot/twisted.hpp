#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "carnot/grid.hpp"
#include "carnot/transform.hpp"

namespace carnot {

/// Hermitian PSD realization of -Delta_G at one central frequency lambda,
/// assembled as sum_i D_i(lambda)^* D_i(lambda) from first-order one-sided
/// differences, with a Gershgorin bound on the spectrum.
struct TwistedOperator {
    Eigen::VectorXd lambda;
    int dim = 0;
    Eigen::SparseMatrix<cplx> matrix;
    double specbound = 0;
};

namespace detail {

/// Twist coefficient of field i at z: (1/2) sum_k lambda_k (U^(k)T z)_i.
inline double twist_coefficient(const GroupSpec& gs, const Eigen::VectorXd& lam,
                                const Eigen::VectorXd& z, int i)
{
    double mu = 0;
    for (int k = 0; k < gs.nc; ++k)
        if (lam[k] != 0.0) mu += lam[k] * gs.U[k].col(i).dot(z);
    return 0.5 * mu;
}

inline Eigen::SparseMatrix<cplx> twisted_difference(const GroupSpec& gs, const Grid& g,
                                                    const Eigen::VectorXd& lam, int axis)
{
    const std::size_t n = g.zsites();
    long stride = 1;
    for (int a = g.horiz_axes() - 1; a > axis; --a) stride *= g.Nz;
    const double ih = 1.0 / g.hz();

    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(2 * n);
    std::vector<int> zi(g.horiz_axes());
    Eigen::VectorXd z(g.horiz_axes());
    for (std::size_t s = 0; s < n; ++s) {
        decode_z(g, s, zi.data());
        for (int a = 0; a < g.horiz_axes(); ++a) z[a] = g.zcoord(zi[a]);
        const double mu = twist_coefficient(gs, lam, z, axis);
        trip.emplace_back(static_cast<int>(s), static_cast<int>(s), cplx(-ih, mu));
        if (zi[axis] + 1 < g.Nz)
            trip.emplace_back(static_cast<int>(s), static_cast<int>(s + stride), cplx(ih, 0));
    }
    Eigen::SparseMatrix<cplx> D(static_cast<int>(n), static_cast<int>(n));
    D.setFromTriplets(trip.begin(), trip.end());
    return D;
}

}  // namespace detail

/// Assembles L_lambda = sum_i D_i^* D_i; lambda must lie on the grid's
/// central frequency lattice.
inline TwistedOperator assemble_twisted(const GroupSpec& gs, const Grid& g,
                                        const Eigen::VectorXd& lambda)
{
    if (g.ell != gs.ell || g.nc != gs.nc)
        throw DimensionError("assemble_twisted: grid does not match group");
    if (tsite_of_lambda(g, lambda) < 0)
        throw ValidationError("assemble_twisted: lambda off the frequency lattice");

    TwistedOperator op;
    op.lambda = lambda;
    op.dim = static_cast<int>(g.zsites());
    Eigen::SparseMatrix<cplx> L(op.dim, op.dim);
    for (int i = 0; i < g.horiz_axes(); ++i) {
        const Eigen::SparseMatrix<cplx> D = detail::twisted_difference(gs, g, lambda, i);
        L += Eigen::SparseMatrix<cplx>(D.adjoint()) * D;
    }
    L.makeCompressed();
    op.matrix = std::move(L);

    // Gershgorin: for Hermitian matrices the spectrum sits inside
    // [min_i (a_ii - R_i), max_i (a_ii + R_i)].
    double bound = 0;
    for (int k = 0; k < op.matrix.outerSize(); ++k) {
        // column sums equal row sums by Hermitian symmetry
        double colsum = 0;
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(op.matrix, k); it; ++it)
            colsum += std::abs(it.value());
        bound = std::max(bound, colsum);
    }
    op.specbound = bound;
    return op;
}

inline Eigen::VectorXcd apply_twisted(const TwistedOperator& op, const Eigen::VectorXcd& v)
{
    return op.matrix * v;
}

/// Matrix-free application of sum_i D_i^* D_i, used to cross-check assembly.
inline Eigen::VectorXcd apply_twisted_matfree(const GroupSpec& gs, const Grid& g,
                                              const Eigen::VectorXd& lam,
                                              const Eigen::VectorXcd& v)
{
    const std::size_t n = g.zsites();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    std::vector<int> zi(g.horiz_axes());
    Eigen::VectorXd z(g.horiz_axes());
    const double ih = 1.0 / g.hz();
    for (int axis = 0; axis < g.horiz_axes(); ++axis) {
        long stride = 1;
        for (int a = g.horiz_axes() - 1; a > axis; --a) stride *= g.Nz;
        Eigen::VectorXcd d(n);
        for (std::size_t s = 0; s < n; ++s) {
            decode_z(g, s, zi.data());
            for (int a = 0; a < g.horiz_axes(); ++a) z[a] = g.zcoord(zi[a]);
            const double mu = detail::twist_coefficient(gs, lam, z, axis);
            cplx val = cplx(-ih, mu) * v[s];
            if (zi[axis] + 1 < g.Nz) val += ih * v[s + stride];
            d[s] = val;
        }
        // D^* d: conjugate-transpose action of the bidiagonal pattern.
        for (std::size_t s = 0; s < n; ++s) {
            decode_z(g, s, zi.data());
            for (int a = 0; a < g.horiz_axes(); ++a) z[a] = g.zcoord(zi[a]);
            const double mu = detail::twist_coefficient(gs, lam, z, axis);
            out[s] += cplx(-ih, -mu) * d[s];
            if (zi[axis] + 1 < g.Nz) out[s + stride] += ih * d[s];
        }
    }
    return out;
}

/// All per-frequency blocks of a (group, grid) pair, indexed by t-site.
struct TwistedFamily {
    GroupSpec group;
    Grid grid;
    std::vector<TwistedOperator> blocks;

    const TwistedOperator& block(std::size_t tsite) const { return blocks[tsite]; }
    double max_specbound() const
    {
        double b = 0;
        for (const auto& op : blocks) b = std::max(b, op.specbound);
        return b;
    }
};

inline TwistedFamily assemble_family(const GroupSpec& gs, const Grid& g)
{
    TwistedFamily fam{gs, g, {}};
    const std::size_t ts = g.tsites();
    fam.blocks.resize(ts);
    parallel_for(ts, [&](std::size_t k) {
        fam.blocks[k] = assemble_twisted(gs, g, lambda_of_tsite(g, k));
    });
    return fam;
}

/// -Delta_G f: central DFT, per-frequency twisted application, inverse DFT.
inline GridFunction apply_neg_sublaplacian(const TwistedFamily& fam, const GridFunction& f)
{
    if (!(f.grid == fam.grid)) throw DimensionError("apply_neg_sublaplacian: grid mismatch");
    GridFunction fh = f;
    central_dft(fh, false);
    std::vector<Eigen::VectorXcd> blocks = to_central_blocks(fh);
    parallel_for(blocks.size(), [&](std::size_t k) {
        blocks[k] = fam.blocks[k].matrix * blocks[k];
    });
    from_central_blocks(fh, blocks);
    central_dft(fh, true);
    return fh;
}

inline GridFunction apply_neg_sublaplacian(const GroupSpec& gs, const GridFunction& f)
{
    return apply_neg_sublaplacian(assemble_family(gs, f.grid), f);
}

/// Smallest nonzero eigenvalue estimate across blocks (shifted power method)
/// and the Gershgorin maximum; used to pick the dyadic window.
struct SpectralRange {
    double lambda_min = 0;
    double lambda_max = 0;
    int jmin = 0;
    int jmax = 0;
};

inline double min_eigenvalue_estimate(const TwistedOperator& op, int iters = 80,
                                      std::uint64_t seed = 71)
{
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(op.dim);
    for (int i = 0; i < op.dim; ++i) v[i] = cplx(normal(rng), normal(rng));
    v.normalize();
    const double shift = op.specbound;
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXcd w = shift * v - op.matrix * v;
        const double n = w.norm();
        if (n == 0) break;
        v = w / n;
    }
    const double rayleigh = std::real(v.dot(op.matrix * v));
    return std::max(rayleigh, 0.0);
}

inline SpectralRange spectral_range(const TwistedFamily& fam)
{
    SpectralRange r;
    r.lambda_max = fam.max_specbound();
    double lo = r.lambda_max;
    for (const auto& op : fam.blocks) lo = std::min(lo, min_eigenvalue_estimate(op));
    r.lambda_min = lo;
    r.jmin = static_cast<int>(std::floor(0.5 * std::log2(std::max(lo, 1e-300)))) - 1;
    r.jmax = static_cast<int>(std::ceil(0.5 * std::log2(std::max(r.lambda_max, 1.0))));
    return r;
}

/// Dense eigensolve of one block with bulk filtering: rows are the ladder
/// rungs (value = smallest eigenvalue of the cluster, count, boundary mass).
struct LadderRung {
    double value = 0;
    int count = 0;
    double boundary_mass = 0;
};

inline std::vector<LadderRung> ladder_report(const GroupSpec& gs, const Grid& g,
                                             const Eigen::VectorXd& lambda, int nrungs = 3,
                                             double bm_tol = 5e-2)
{
    const TwistedOperator op = assemble_twisted(gs, g, lambda);
    if (op.dim > 4096) throw ValidationError("ladder_report: block too large for dense solve");
    Eigen::MatrixXcd dense(op.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    const Eigen::VectorXd w = es.eigenvalues();
    const Eigen::MatrixXcd V = es.eigenvectors();

    // Boundary mass per eigenvector (outer 10% horizontal shell).
    std::vector<int> zi(g.horiz_axes());
    std::vector<bool> edge(g.zsites());
    for (std::size_t zs = 0; zs < g.zsites(); ++zs) {
        detail::decode_z(g, zs, zi.data());
        bool e = false;
        for (int a = 0; a < g.horiz_axes(); ++a)
            if (std::abs(g.zcoord(zi[a])) >= 0.9 * g.L) { e = true; break; }
        edge[zs] = e;
    }
    auto bmass = [&](int k) {
        double m = 0;
        for (std::size_t zs = 0; zs < g.zsites(); ++zs)
            if (edge[zs]) m += std::norm(V(static_cast<long>(zs), k));
        return m;
    };

    const double unit = lambda.norm() > 0 ? lambda.norm() : 1.0;
    std::vector<LadderRung> rungs;
    double floor_val = 0;
    for (int r = 0; r < nrungs; ++r) {
        LadderRung rung;
        bool found = false;
        for (int k = 0; k < w.size(); ++k) {
            if (w[k] <= floor_val) continue;
            const double bm = bmass(k);
            if (bm > bm_tol) continue;
            if (!found) {
                rung.value = w[k];
                rung.boundary_mass = bm;
                found = true;
            }
            if (w[k] < rung.value + 0.15 * 2.0 * unit)
                ++rung.count;
            else
                break;
        }
        if (!found) break;
        rungs.push_back(rung);
        floor_val = rung.value + 1.2 * unit;
    }
    return rungs;
}

}  // namespace carnot
