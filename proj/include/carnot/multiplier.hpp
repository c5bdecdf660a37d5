#pragma once

#include <Eigen/Eigenvalues>
#include <optional>
#include <sstream>

#include "carnot/chebyshev.hpp"
#include "carnot/partition.hpp"
#include "carnot/twisted.hpp"

namespace carnot {

/// Spectral function of -Delta_G to apply. psi_j/chi_j read their cutoffs
/// from the partition; heat_power is (t tau)^(m/2) e^(-t tau); frac_band is
/// tau^(rho/2) psi(2^-2j tau), the band-restricted fractional power.
struct MultiplierSpec {
    enum class Kind { chi_j, psi_j, heat, heat_power, fracpow, frac_band, bessel, custom };

    Kind kind = Kind::heat;
    int j = 0;
    double t = 0;
    double rho = 0;
    int m = 2;
    double epsilon = 1e-8;
    std::vector<std::pair<double, double>> table;

    static MultiplierSpec chi0() { return chi(0); }
    static MultiplierSpec chi(int j)
    {
        MultiplierSpec s;
        s.kind = Kind::chi_j;
        s.j = j;
        return s;
    }
    static MultiplierSpec psi(int j)
    {
        MultiplierSpec s;
        s.kind = Kind::psi_j;
        s.j = j;
        return s;
    }
    static MultiplierSpec heat(double t)
    {
        MultiplierSpec s;
        s.kind = Kind::heat;
        s.t = t;
        return s;
    }
    static MultiplierSpec heat_power(double t, int m)
    {
        MultiplierSpec s;
        s.kind = Kind::heat_power;
        s.t = t;
        s.m = m;
        return s;
    }
    static MultiplierSpec fracpow(double rho)
    {
        MultiplierSpec s;
        s.kind = Kind::fracpow;
        s.rho = rho;
        return s;
    }
    static MultiplierSpec frac_band(double rho, int j)
    {
        MultiplierSpec s;
        s.kind = Kind::frac_band;
        s.rho = rho;
        s.j = j;
        return s;
    }
    static MultiplierSpec bessel(double rho)
    {
        MultiplierSpec s;
        s.kind = Kind::bessel;
        s.rho = rho;
        return s;
    }
    static MultiplierSpec custom(std::vector<std::pair<double, double>> tab)
    {
        MultiplierSpec s;
        s.kind = Kind::custom;
        s.table = std::move(tab);
        for (std::size_t i = 1; i < s.table.size(); ++i)
            if (!(s.table[i - 1].first < s.table[i].first))
                throw ValidationError("custom multiplier: x values must be strictly increasing");
        if (s.table.empty()) throw ValidationError("custom multiplier: empty table");
        return s;
    }

    double eval(double tau) const
    {
        switch (kind) {
            case Kind::chi_j: return DyadicPartition::chi_j(tau, j);
            case Kind::psi_j: return DyadicPartition::psi_j(tau, j);
            case Kind::heat: return std::exp(-t * tau);
            case Kind::heat_power:
                return std::pow(std::max(t * tau, 0.0), 0.5 * m) * std::exp(-t * tau);
            case Kind::fracpow: return std::pow(std::max(tau, 0.0), 0.5 * rho);
            case Kind::frac_band:
                return std::pow(std::max(tau, 0.0), 0.5 * rho) * DyadicPartition::psi_j(tau, j);
            case Kind::bessel: return std::pow(1.0 + std::max(tau, 0.0), 0.5 * rho);
            case Kind::custom: {
                if (tau <= table.front().first) return table.front().second;
                if (tau >= table.back().first) return table.back().second;
                auto it = std::upper_bound(table.begin(), table.end(),
                                           std::make_pair(tau, 0.0));
                const auto [x1, y1] = *it;
                const auto [x0, y0] = *(it - 1);
                return y0 + (y1 - y0) * (tau - x0) / (x1 - x0);
            }
        }
        return 0;
    }

    std::string name() const
    {
        std::ostringstream os;
        switch (kind) {
            case Kind::chi_j: os << "chi_j j=" << j; break;
            case Kind::psi_j: os << "psi_j j=" << j; break;
            case Kind::heat: os << "heat t=" << t; break;
            case Kind::heat_power: os << "heat_power t=" << t << " m=" << m; break;
            case Kind::fracpow: os << "fracpow rho=" << rho; break;
            case Kind::frac_band: os << "frac_band rho=" << rho << " j=" << j; break;
            case Kind::bessel: os << "bessel rho=" << rho; break;
            case Kind::custom: os << "custom table n=" << table.size(); break;
        }
        return os.str();
    }
};

namespace detail {

/// c_0 x + c_1 A'x + ... accumulated through the Chebyshev recurrence,
/// A' = (2/hi) A - I.
inline Eigen::VectorXcd chebyshev_apply(const TwistedOperator& op,
                                        const ChebyshevExpansion& exp,
                                        const Eigen::VectorXcd& x)
{
    const double a = 2.0 / exp.hi;
    auto amap = [&](const Eigen::VectorXcd& v) { return (a * (op.matrix * v) - v).eval(); };
    Eigen::VectorXcd tkm = x;
    Eigen::VectorXcd acc = exp.coef[0] * x;
    if (exp.coef.size() == 1) return acc;
    Eigen::VectorXcd tk = amap(x);
    acc += exp.coef[1] * tk;
    for (std::size_t k = 2; k < exp.coef.size(); ++k) {
        Eigen::VectorXcd tkp = 2.0 * amap(tk) - tkm;
        acc += exp.coef[k] * tkp;
        tkm.swap(tk);
        tk.swap(tkp);
    }
    return acc;
}

}  // namespace detail

/// phi(-Delta_G) f by per-frequency Chebyshev filtering. Blocks carrying a
/// negligible share of the energy are skipped; the relative gate keeps the
/// committed uniform accuracy intact.
inline GridFunction apply_multiplier(const TwistedFamily& fam, const GridFunction& f,
                                     const MultiplierSpec& spec, double gate = 1e-15)
{
    if (!(f.grid == fam.grid)) throw DimensionError("apply_multiplier: grid mismatch");
    GridFunction fh = f;
    central_dft(fh, false);
    std::vector<Eigen::VectorXcd> blocks = to_central_blocks(fh);

    double total2 = 0;
    for (const auto& b : blocks) total2 += b.squaredNorm();
    const double gate2 = gate * gate * total2;

    std::vector<std::exception_ptr> errors(blocks.size());
    parallel_for(blocks.size(), [&](std::size_t k) {
        try {
            const double n2 = blocks[k].squaredNorm();
            if (n2 <= gate2 || total2 == 0) {
                blocks[k].setZero();
                return;
            }
            const TwistedOperator& op = fam.blocks[k];
            std::ostringstream label;
            label << spec.name() << " lambda=(" << op.lambda.transpose() << ")";
            const ChebyshevExpansion exp = fit_chebyshev(
                [&](double tau) { return spec.eval(tau); }, op.specbound, spec.epsilon,
                label.str());
            blocks[k] = detail::chebyshev_apply(op, exp, blocks[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    });
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    from_central_blocks(fh, blocks);
    central_dft(fh, true);
    return fh;
}

inline GridFunction delta_j(const TwistedFamily& fam, const GridFunction& f, int j,
                            double epsilon = 1e-8)
{
    MultiplierSpec s = MultiplierSpec::psi(j);
    s.epsilon = epsilon;
    return apply_multiplier(fam, f, s);
}

inline GridFunction s_j(const TwistedFamily& fam, const GridFunction& f, int j,
                        double epsilon = 1e-8)
{
    MultiplierSpec s = MultiplierSpec::chi(j);
    s.epsilon = epsilon;
    return apply_multiplier(fam, f, s);
}

/// Kernel Psi_j of the band projection: Delta_j applied to a discrete delta.
inline GridFunction psi_kernel(const TwistedFamily& fam, int j, double epsilon = 1e-8)
{
    const GridFunction imp = sample(fam.group, fam.grid, GeneratorSpec{"delta", {}});
    return delta_j(fam, imp, j, epsilon);
}

/// Exact per-frequency eigendecomposition; the correctness oracle for
/// apply_multiplier on small grids.
class DenseFilterOracle {
public:
    explicit DenseFilterOracle(const TwistedFamily& fam) : fam_(&fam)
    {
        if (fam.grid.zsites() > 1024)
            throw ValidationError("dense_filter_oracle: block dimension above 1024");
        eig_.resize(fam.blocks.size());
    }

    GridFunction apply(const GridFunction& f, const MultiplierSpec& spec) const
    {
        if (!(f.grid == fam_->grid)) throw DimensionError("dense_filter_oracle: grid mismatch");
        GridFunction fh = f;
        central_dft(fh, false);
        std::vector<Eigen::VectorXcd> blocks = to_central_blocks(fh);
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const auto& [w, V] = decomposition(k);
            Eigen::VectorXcd coef = V.adjoint() * blocks[k];
            for (int i = 0; i < w.size(); ++i) coef[i] *= spec.eval(w[i]);
            blocks[k] = V * coef;
        }
        from_central_blocks(fh, blocks);
        central_dft(fh, true);
        return fh;
    }

    const std::pair<Eigen::VectorXd, Eigen::MatrixXcd>& decomposition(std::size_t k) const
    {
        if (!eig_[k]) {
            Eigen::MatrixXcd dense(fam_->blocks[k].matrix);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
            eig_[k] = std::make_pair(es.eigenvalues(), es.eigenvectors());
        }
        return *eig_[k];
    }

private:
    const TwistedFamily* fam_;
    mutable std::vector<std::optional<std::pair<Eigen::VectorXd, Eigen::MatrixXcd>>> eig_;
};

}  // namespace carnot
