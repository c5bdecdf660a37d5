#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <vector>

#include "carnot/core.hpp"

namespace carnot {

/// A point (z,t) in global coordinates: z = (x_1..x_ell, y_1..y_ell), t central.
struct GroupPoint {
    Eigen::VectorXd z;
    Eigen::VectorXd t;

    GroupPoint() = default;
    GroupPoint(Eigen::VectorXd z_, Eigen::VectorXd t_) : z(std::move(z_)), t(std::move(t_)) {}
};

/// Algebraic data of a step-2 group: half horizontal dimension ell, center
/// dimension nc, and the skew-symmetric matrices U^(j) of the group law.
struct GroupSpec {
    int ell = 0;
    int nc = 0;
    std::vector<Eigen::MatrixXd> U;
    int Q = 0;
    bool htype = false;

    int horiz_dim() const { return 2 * ell; }
    int total_dim() const { return 2 * ell + nc; }
};

namespace detail {

inline void check_point(const GroupSpec& g, const GroupPoint& p, const char* who)
{
    if (p.z.size() != g.horiz_dim() || p.t.size() != g.nc)
        throw DimensionError(std::string(who) + ": point does not match group dimensions");
    if (!p.z.allFinite() || !p.t.allFinite())
        throw DimensionError(std::string(who) + ": non-finite coordinates");
}

}  // namespace detail

/// Validates the algebraic data and derives Q = 2*ell + 2*nc.
inline GroupSpec make_group(int ell, int nc, std::vector<Eigen::MatrixXd> U,
                            bool require_htype = false)
{
    constexpr double tol = 1e-12;
    if (ell < 1 || nc < 1) throw ValidationError("make_group: ell and nc must be positive");
    if (static_cast<int>(U.size()) != nc)
        throw ValidationError("make_group: expected nc matrices");
    const int m = 2 * ell;
    for (int j = 0; j < nc; ++j) {
        if (U[j].rows() != m || U[j].cols() != m)
            throw ValidationError("make_group: U[" + std::to_string(j) + "] is not 2ell x 2ell");
        const double skew = (U[j] + U[j].transpose()).cwiseAbs().maxCoeff();
        if (skew > tol) {
            std::ostringstream os;
            os << "make_group: U[" << j << "] is not skew-symmetric, residual " << skew;
            throw ValidationError(os.str());
        }
    }
    // Linear independence of the vectorized matrices.
    Eigen::MatrixXd V(m * m, nc);
    for (int j = 0; j < nc; ++j)
        V.col(j) = Eigen::Map<const Eigen::VectorXd>(U[j].data(), m * m);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
    qr.setThreshold(1e-10);
    if (qr.rank() < nc)
        throw ValidationError("make_group: dependent or degenerate U matrices (rank "
                              + std::to_string(qr.rank()) + " < " + std::to_string(nc) + ")");
    if (require_htype) {
        for (int j = 0; j < nc; ++j) {
            const double orth = (U[j].transpose() * U[j] - Eigen::MatrixXd::Identity(m, m))
                                    .cwiseAbs().maxCoeff();
            if (orth > tol) {
                std::ostringstream os;
                os << "make_group: H-type violation, U[" << j << "] not orthogonal, residual " << orth;
                throw ValidationError(os.str());
            }
        }
        for (int r = 0; r < nc; ++r)
            for (int s = r + 1; s < nc; ++s) {
                const double ac = (U[r] * U[s] + U[s] * U[r]).cwiseAbs().maxCoeff();
                if (ac > tol) {
                    std::ostringstream os;
                    os << "make_group: H-type violation, U[" << r << "],U[" << s
                       << "] do not anticommute, residual " << ac;
                    throw ValidationError(os.str());
                }
            }
    }
    GroupSpec g;
    g.ell = ell;
    g.nc = nc;
    g.U = std::move(U);
    g.Q = 2 * ell + 2 * nc;
    g.htype = require_htype;
    return g;
}

/// Heisenberg group H^1 (ell = nc = 1).
inline GroupSpec heisenberg1()
{
    Eigen::MatrixXd J(2, 2);
    J << 0, 1, -1, 0;
    return make_group(1, 1, {J}, true);
}

/// Quaternionic H-type instance: ell = 2, nc = 3, U = left multiplication
/// by i, j, k on R^4.
inline GroupSpec quaternionic1()
{
    Eigen::MatrixXd Ui(4, 4), Uj(4, 4), Uk(4, 4);
    Ui << 0, -1, 0, 0,
          1,  0, 0, 0,
          0,  0, 0, -1,
          0,  0, 1, 0;
    Uj << 0, 0, -1, 0,
          0, 0, 0, 1,
          1, 0, 0, 0,
          0, -1, 0, 0;
    Uk << 0, 0, 0, -1,
          0, 0, -1, 0,
          0, 1, 0, 0,
          1, 0, 0, 0;
    return make_group(2, 3, {Ui, Uj, Uk}, true);
}

inline GroupPoint group_identity(const GroupSpec& g)
{
    return {Eigen::VectorXd::Zero(g.horiz_dim()), Eigen::VectorXd::Zero(g.nc)};
}

/// p o q with central update t_j + t'_j + (1/2) <z, U^(j) z'>.
inline GroupPoint group_mul(const GroupSpec& g, const GroupPoint& p, const GroupPoint& q)
{
    detail::check_point(g, p, "group_mul");
    detail::check_point(g, q, "group_mul");
    GroupPoint r;
    r.z = p.z + q.z;
    r.t.resize(g.nc);
    for (int j = 0; j < g.nc; ++j)
        r.t[j] = p.t[j] + q.t[j] + 0.5 * p.z.dot(g.U[j] * q.z);
    return r;
}

inline GroupPoint group_inv(const GroupSpec& g, const GroupPoint& p)
{
    detail::check_point(g, p, "group_inv");
    return {-p.z, -p.t};
}

/// Anisotropic dilation (z,t) -> (delta z, delta^2 t).
inline GroupPoint dilate(const GroupSpec& g, double delta, const GroupPoint& p)
{
    if (!(delta > 0)) throw ValidationError("dilate: delta must be positive");
    detail::check_point(g, p, "dilate");
    return {delta * p.z, delta * delta * p.t};
}

/// Homogeneous gauge rho(z,t) = (|z|^4 + 16 |t|^2)^(1/4); the constant 16
/// makes rho(0,t) = 2 sqrt(|t|).
inline double gauge_norm(const GroupSpec& g, const GroupPoint& p)
{
    detail::check_point(g, p, "gauge_norm");
    const double z2 = p.z.squaredNorm();
    return std::pow(z2 * z2 + 16.0 * p.t.squaredNorm(), 0.25);
}

/// Volume of the unit gauge ball {rho <= 1}; scales as kappa r^Q.
inline double gauge_ball_volume(const GroupSpec& g)
{
    const int m = 2 * g.ell, n = g.nc;
    const double omega_n = std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    const double sigma_m = 2.0 * std::pow(pi, 0.5 * m) / std::tgamma(0.5 * m);
    const double beta = std::exp(std::lgamma(0.5 * g.ell) + std::lgamma(0.5 * n + 1.0)
                                 - std::lgamma(0.5 * g.ell + 0.5 * n + 1.0));
    return omega_n * std::pow(4.0, -n) * sigma_m * 0.25 * beta;
}

}  // namespace carnot
