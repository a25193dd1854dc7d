#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "drh/errors.hpp"
#include "drh/grids.hpp"
#include "drh/parallel.hpp"
#include "drh/phase.hpp"
#include "drh/transforms.hpp"

namespace drh {

/// e^{i t psi(lambda)} f^(lambda). At t = 0 the spectrum is returned unchanged.
inline Spectrum evolve(const Spectrum& spectrum, const Phase& phase, double t) {
    if (!std::isfinite(t)) throw ArgumentError("time must be finite");
    if (t == 0.0) return spectrum;
    using namespace std::complex_literals;
    std::vector<std::complex<double>> v(spectrum.values.size());
    const auto& l = spectrum.grid.lambdas();
    for (std::size_t j = 0; j < l.size(); ++j) v[j] = spectrum.values[j] * std::exp(1i * (t * phase(l[j])));
    return Spectrum(spectrum.grid, std::move(v));
}

/// S_{psi,t} f(s_i) = C sum_j phi_{lambda_j}(s_i) e^{i t psi(lambda_j)} f^(lambda_j) |c(lambda_j)|^-2 w_j.
///
/// Runs through isft on the evolved spectrum, so t = 0 reproduces isft bit for bit.
inline RadialProfile propagate(const SphericalTable& table, const Spectrum& spectrum, const Phase& phase, double t,
                               int threads = 1) {
    return isft(table, evolve(spectrum, phase, t), threads);
}

inline RadialProfile propagate(const SphericalEvaluator& evaluator, const Spectrum& spectrum, const Phase& phase,
                               double t, const RadialGrid& grid, int threads = 1) {
    detail::require_inversion_constant(evaluator.space());
    return propagate(SphericalTable(evaluator, spectrum.grid, grid, threads), spectrum, phase, t, threads);
}

/// Euclidean radial propagator on R^n with phase lambda^a, measure lambda^{n-1} dlambda.
inline RadialProfile propagate_euclid(int n, const Spectrum& spectrum, double a, double t, const RadialGrid& grid,
                                      int threads = 1) {
    return euclid_radial_ift(n, evolve(spectrum, Phase::power_law(a), t), grid, threads);
}

/// max over t in t_grid of |S_{psi,t} f(s_i)|. Summation per (t, s_i) matches propagate exactly.
inline RadialProfile maximal(const SphericalTable& table, const Spectrum& spectrum, const Phase& phase,
                             const std::vector<double>& t_grid, int threads = 1) {
    if (t_grid.empty()) throw ArgumentError("maximal function needs a non-empty time grid");
    for (double t : t_grid) {
        if (!(t > 0.0 && t < 1.0)) throw PreconditionError("maximal function times must lie in (0, 1)");
    }
    std::vector<std::vector<std::complex<double>>> b(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        b[k] = detail::synthesis_coefficients(table, evolve(spectrum, phase, t_grid[k]));
    }
    const std::size_t ns = table.radial_grid().size();
    std::vector<std::complex<double>> out(ns);
    parallel_for(ns, threads, [&](std::size_t i) {
        const std::span<const double> row = table.radius_row(i);
        double best = 0.0;
        for (const auto& bk : b) {
            std::complex<double> acc = 0.0;
            for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * bk[j];
            best = std::max(best, std::abs(acc));
        }
        out[i] = best;
    });
    return RadialProfile(table.radial_grid(), std::move(out));
}

/// T f(s_i) = S_{psi, t(s_i)} f(s_i): the propagator at a per-radius time.
inline RadialProfile linearized(const SphericalTable& table, const Spectrum& spectrum, const Phase& phase,
                                const TimeChoice& time, int threads = 1) {
    const auto& radii = table.radial_grid().radii();
    std::vector<double> t(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) t[i] = time.at(radii[i]);
    std::vector<std::complex<double>> out(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) {
        const auto b = detail::synthesis_coefficients(table, evolve(spectrum, phase, t[i]));
        const std::span<const double> row = table.radius_row(i);
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * b[j];
        out[i] = acc;
    });
    return RadialProfile(table.radial_grid(), std::move(out));
}

}  // namespace drh
