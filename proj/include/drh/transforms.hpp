#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "drh/c_function.hpp"
#include "drh/errors.hpp"
#include "drh/geometry.hpp"
#include "drh/grids.hpp"
#include "drh/parallel.hpp"
#include "drh/special.hpp"
#include "drh/spherical.hpp"

namespace drh {

/// Cached phi_{lambda_j}(s_i) on a (spectral grid) x (radial grid) product, plus the Plancherel
/// density |c(lambda_j)|^-2. Built once (in parallel over lambda), read-only afterwards.
class SphericalTable {
  public:
    SphericalTable(const SphericalEvaluator& evaluator, SpectralGrid spectral, RadialGrid radial, int threads = 1)
        : space_(evaluator.space()), spectral_(std::move(spectral)), radial_(std::move(radial)) {
        const std::size_t nl = spectral_.size();
        const std::size_t ns = radial_.size();
        by_lambda_.resize(nl * ns);
        parallel_for(nl, threads, [&](std::size_t j) {
            const std::vector<double> row = phi(evaluator, spectral_.lambdas()[j], radial_.radii());
            std::copy(row.begin(), row.end(), by_lambda_.begin() + static_cast<std::ptrdiff_t>(j * ns));
        });
        by_radius_.resize(nl * ns);
        for (std::size_t j = 0; j < nl; ++j) {
            for (std::size_t i = 0; i < ns; ++i) by_radius_[i * nl + j] = by_lambda_[j * ns + i];
        }
        plancherel_.resize(nl);
        for (std::size_t j = 0; j < nl; ++j) plancherel_[j] = plancherel_density(space_, spectral_.lambdas()[j]);
        density_.resize(ns);
        for (std::size_t i = 0; i < ns; ++i) density_[i] = density(space_, radial_.radii()[i]);
    }

    const SpaceParams& space() const noexcept { return space_; }
    const SpectralGrid& spectral_grid() const noexcept { return spectral_; }
    const RadialGrid& radial_grid() const noexcept { return radial_; }

    double at(std::size_t j, std::size_t i) const { return by_lambda_[j * radial_.size() + i]; }
    /// phi_{lambda_j}(s_i) over i.
    std::span<const double> lambda_row(std::size_t j) const {
        return {by_lambda_.data() + j * radial_.size(), radial_.size()};
    }
    /// phi_{lambda_j}(s_i) over j.
    std::span<const double> radius_row(std::size_t i) const {
        return {by_radius_.data() + i * spectral_.size(), spectral_.size()};
    }
    const std::vector<double>& plancherel() const noexcept { return plancherel_; }
    const std::vector<double>& densities() const noexcept { return density_; }

    /// The table re-labelled with a calibrated space (same m_v, m_z).
    SphericalTable with_inversion_constant(double c) const {
        SphericalTable copy = *this;
        copy.space_ = space_.with_inversion_constant(c);
        return copy;
    }

  private:
    SpaceParams space_;
    SpectralGrid spectral_;
    RadialGrid radial_;
    std::vector<double> by_lambda_;
    std::vector<double> by_radius_;
    std::vector<double> plancherel_;
    std::vector<double> density_;
};

namespace detail {

inline void require_same_nodes(const std::vector<double>& x, const std::vector<double>& y, const char* what) {
    if (x != y) throw ArgumentError(what);
}

inline double require_inversion_constant(const SpaceParams& space) {
    if (!space.inversion_constant()) {
        throw CalibrationError("space " + space.label() + " has no inversion constant; run calibrate_inversion first");
    }
    return *space.inversion_constant();
}

// out_i = sum_j Phi[i][j] b_j, summed in ascending j for every i.
inline std::vector<std::complex<double>> synthesize(const SphericalTable& table,
                                                    const std::vector<std::complex<double>>& b, int threads) {
    const std::size_t ns = table.radial_grid().size();
    std::vector<std::complex<double>> out(ns);
    parallel_for(ns, threads, [&](std::size_t i) {
        const std::span<const double> row = table.radius_row(i);
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * b[j];
        out[i] = acc;
    });
    return out;
}

// Synthesis coefficients C f^(lambda_j) |c(lambda_j)|^-2 w_j.
inline std::vector<std::complex<double>> synthesis_coefficients(const SphericalTable& table, const Spectrum& spectrum) {
    require_same_nodes(spectrum.grid.lambdas(), table.spectral_grid().lambdas(), "spectrum grid differs from table grid");
    const double c = require_inversion_constant(table.space());
    const auto& w = table.spectral_grid().weights();
    std::vector<std::complex<double>> b(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) b[j] = c * spectrum.values[j] * table.plancherel()[j] * w[j];
    return b;
}

}  // namespace detail

/// Spherical Fourier transform f^(lambda_j) = sum_i f(s_i) phi_{lambda_j}(s_i) A(s_i) w_i.
///
/// The radial truncation at s_max is the caller's responsibility: f must be negligible there.
inline Spectrum sft(const SphericalTable& table, const RadialProfile& profile, int threads = 1) {
    detail::require_same_nodes(profile.grid.radii(), table.radial_grid().radii(), "profile grid differs from table grid");
    const std::size_t ns = profile.values.size();
    std::vector<std::complex<double>> g(ns);
    const auto& w = table.radial_grid().weights();
    for (std::size_t i = 0; i < ns; ++i) g[i] = profile.values[i] * table.densities()[i] * w[i];
    std::vector<std::complex<double>> out(table.spectral_grid().size());
    parallel_for(out.size(), threads, [&](std::size_t j) {
        const std::span<const double> row = table.lambda_row(j);
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < ns; ++i) acc += row[i] * g[i];
        out[j] = acc;
    });
    return Spectrum(table.spectral_grid(), std::move(out));
}

inline Spectrum sft(const SphericalEvaluator& evaluator, const RadialProfile& profile, const SpectralGrid& grid,
                    int threads = 1) {
    return sft(SphericalTable(evaluator, grid, profile.grid, threads), profile, threads);
}

/// Inverse transform f(s_i) = C sum_j f^(lambda_j) phi_{lambda_j}(s_i) |c(lambda_j)|^-2 w_j.
/// Throws CalibrationError when the table's space carries no inversion constant C.
inline RadialProfile isft(const SphericalTable& table, const Spectrum& spectrum, int threads = 1) {
    const auto b = detail::synthesis_coefficients(table, spectrum);
    return RadialProfile(table.radial_grid(), detail::synthesize(table, b, threads));
}

inline RadialProfile isft(const SphericalEvaluator& evaluator, const Spectrum& spectrum, const RadialGrid& grid,
                          int threads = 1) {
    detail::require_inversion_constant(evaluator.space());
    return isft(SphericalTable(evaluator, spectrum.grid, grid, threads), spectrum, threads);
}

/// Reference profile used for calibration.
inline double calibration_profile(double s) { return std::exp(-s * s); }

/// Least-squares inversion constant C making isft(sft(f)) = f on f = exp(-s^2), in the
/// A(s) ds inner product of the table's radial grid. The grids must resolve f and f^.
inline double calibrate_inversion(const SphericalTable& table, int threads = 1) {
    const RadialProfile f = RadialProfile::sample(table.radial_grid(), calibration_profile);
    const Spectrum fh = sft(table, f, threads);
    const SphericalTable unit = table.with_inversion_constant(1.0);
    const RadialProfile g = isft(unit, fh, threads);
    const auto& w = table.radial_grid().weights();
    double fg = 0.0;
    double gg = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double aw = table.densities()[i] * w[i];
        fg += aw * (f.values[i] * std::conj(g.values[i])).real();
        gg += aw * std::norm(g.values[i]);
    }
    if (!(gg > 0.0) || !std::isfinite(fg / gg)) throw CalibrationError("calibration produced a degenerate fit");
    return fg / gg;
}

/// Calibrates on the reference grids s in [0, 12], lambda in [0, 16] and returns the evaluator
/// carrying the constant.
inline SphericalEvaluator calibrate_inversion(const SphericalEvaluator& evaluator, int threads = 1) {
    const SpectralGrid lambdas = SpectralGrid::for_radius(0.0, 16.0, 12.0);
    const RadialGrid radii = RadialGrid::for_frequency(0.0, 12.0, 16.0);
    const SphericalTable table(evaluator, lambdas, radii, threads);
    return evaluator.with_inversion_constant(calibrate_inversion(table, threads));
}

/// (sum_i |f(s_i)|^2 A(s_i) w_i)^{1/2}
inline double spatial_l2_norm(const SpaceParams& space, const RadialProfile& profile) {
    double acc = 0.0;
    const auto& r = profile.grid.radii();
    const auto& w = profile.grid.weights();
    for (std::size_t i = 0; i < r.size(); ++i) acc += std::norm(profile.values[i]) * density(space, r[i]) * w[i];
    return std::sqrt(acc);
}

/// (sum_j |f^(lambda_j)|^2 |c(lambda_j)|^-2 w_j)^{1/2}, without the inversion constant; the
/// Plancherel identity reads spatial^2 = C spectral^2.
inline double spectral_l2_norm(const SpaceParams& space, const Spectrum& spectrum) {
    double acc = 0.0;
    const auto& l = spectrum.grid.lambdas();
    const auto& w = spectrum.grid.weights();
    for (std::size_t j = 0; j < l.size(); ++j) acc += std::norm(spectrum.values[j]) * plancherel_density(space, l[j]) * w[j];
    return std::sqrt(acc);
}

struct SobolevKind {
    enum class Kind { inhomogeneous, homogeneous };

    SobolevKind(Kind k, double b) : kind(k), beta(b) {
        if (!(b >= 0.0) || !std::isfinite(b)) throw PreconditionError("Sobolev index beta must be >= 0");
    }
    static SobolevKind inhomogeneous(double b) { return {Kind::inhomogeneous, b}; }
    static SobolevKind homogeneous(double b) { return {Kind::homogeneous, b}; }

    Kind kind;
    double beta;
};

/// Spectral Sobolev weight: (lambda^2 + Q^2/4)^beta or lambda^{2 beta}.
inline double sobolev_weight(const SpaceParams& space, double lambda, const SobolevKind& kind) {
    if (kind.kind == SobolevKind::Kind::homogeneous) return std::pow(lambda * lambda, kind.beta);
    return std::pow(lambda * lambda + space.spectral_shift(), kind.beta);
}

/// (int w_beta(lambda) |f^(lambda)|^2 |c(lambda)|^-2 dlambda)^{1/2} on the spectrum's grid.
inline double sobolev_norm(const SpaceParams& space, const Spectrum& spectrum, const SobolevKind& kind) {
    double acc = 0.0;
    const auto& l = spectrum.grid.lambdas();
    const auto& w = spectrum.grid.weights();
    for (std::size_t j = 0; j < l.size(); ++j) {
        acc += sobolev_weight(space, l[j], kind) * std::norm(spectrum.values[j]) * plancherel_density(space, l[j]) * w[j];
    }
    return std::sqrt(acc);
}

enum class Direction { forward, inverse };

/// Frequency side of the Schwartz correspondence between S and R^n: forward multiplies by
/// m(lambda) = |c(lambda)|^-2 / lambda^{n-1}, inverse divides by it.
///
/// Forward requires the spectrum to vanish near 0: when the grid starts at lambda = 0 its first
/// node must carry a zero value.
inline Spectrum schwartz_multiplier(const SpaceParams& space, const Spectrum& spectrum, Direction direction) {
    const auto& l = spectrum.grid.lambdas();
    if (direction == Direction::forward && spectrum.grid.lo() == 0.0 && spectrum.values.front() != 0.0) {
        throw PreconditionError("forward Schwartz multiplier needs a spectrum supported away from lambda = 0");
    }
    std::vector<std::complex<double>> out(l.size());
    const int n = space.dimension();
    for (std::size_t j = 0; j < l.size(); ++j) {
        const double m = plancherel_density(space, l[j]) / std::pow(l[j], n - 1);
        out[j] = direction == Direction::forward ? spectrum.values[j] * m : spectrum.values[j] / m;
    }
    return Spectrum(spectrum.grid, std::move(out));
}

/// 1 / (Gamma(mu+1) 2^mu)^2 with mu = (n-2)/2: inverse constant of the radial Fourier transform
/// of R^n written with the normalized kernel J_mu (2/pi for n = 3).
inline double euclid_inversion_constant(int n) {
    if (n < 2) throw PreconditionError("Euclidean dimension must be >= 2");
    const double mu = 0.5 * (n - 2);
    const double k = std::tgamma(mu + 1.0) * std::pow(2.0, mu);
    return 1.0 / (k * k);
}

/// Radial Fourier transform on R^n, F f(lambda_j) = sum_i f(r_i) J_{(n-2)/2}(lambda_j r_i) r_i^{n-1} w_i.
inline Spectrum euclid_radial_ft(int n, const RadialProfile& profile, const SpectralGrid& grid, int threads = 1) {
    if (n < 2) throw PreconditionError("Euclidean dimension must be >= 2");
    const BesselOrder mu(n - 2);
    const auto& r = profile.grid.radii();
    const auto& w = profile.grid.weights();
    std::vector<std::complex<double>> g(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) g[i] = profile.values[i] * std::pow(r[i], n - 1) * w[i];
    std::vector<std::complex<double>> out(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t j) {
        const double l = grid.lambdas()[j];
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) acc += script_j(mu, l * r[i]) * g[i];
        out[j] = acc;
    });
    return Spectrum(grid, std::move(out));
}

/// sum_j F f(lambda_j) J(lambda_j r_i) lambda_j^{n-1} w_j, scaled by `constant`.
inline RadialProfile euclid_synthesis(int n, const Spectrum& spectrum, const RadialGrid& grid, double constant,
                                      int threads = 1) {
    if (n < 2) throw PreconditionError("Euclidean dimension must be >= 2");
    const BesselOrder mu(n - 2);
    const auto& l = spectrum.grid.lambdas();
    const auto& w = spectrum.grid.weights();
    std::vector<std::complex<double>> b(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) b[j] = constant * spectrum.values[j] * std::pow(l[j], n - 1) * w[j];
    std::vector<std::complex<double>> out(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        const double r = grid.radii()[i];
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < l.size(); ++j) acc += script_j(mu, l[j] * r) * b[j];
        out[i] = acc;
    });
    return RadialProfile(grid, std::move(out));
}

inline RadialProfile euclid_radial_ift(int n, const Spectrum& spectrum, const RadialGrid& grid, int threads = 1) {
    return euclid_synthesis(n, spectrum, grid, euclid_inversion_constant(n), threads);
}

/// Numerical inverse constant of the radial Fourier transform: least-squares fit making the
/// round trip exact on exp(-r^2) over the given grids.
inline double calibrate_euclid_inversion(int n, const RadialGrid& radii, const SpectralGrid& lambdas, int threads = 1) {
    const RadialProfile f = RadialProfile::sample(radii, calibration_profile);
    const RadialProfile g = euclid_synthesis(n, euclid_radial_ft(n, f, lambdas, threads), radii, 1.0, threads);
    double fg = 0.0;
    double gg = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double rw = std::pow(radii.radii()[i], n - 1) * radii.weights()[i];
        fg += rw * (f.values[i] * std::conj(g.values[i])).real();
        gg += rw * std::norm(g.values[i]);
    }
    if (!(gg > 0.0)) throw CalibrationError("Euclidean calibration produced a degenerate fit");
    return fg / gg;
}

}  // namespace drh
