#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "drh/c_function.hpp"
#include "drh/errors.hpp"
#include "drh/geometry.hpp"
#include "drh/special.hpp"

namespace drh {

/// Evaluates spherical functions phi_lambda(s) of one space by integrating the radial
/// eigen-equation u'' + (A'/A) u' + (lambda^2 + Q^2/4) u = 0, u(0) = 1, u'(0) = 0.
///
/// Immutable after construction; phi() calls are independent.
class SphericalEvaluator {
  public:
    explicit SphericalEvaluator(SpaceParams space, double ode_tolerance = 1e-10, double taylor_start = 1e-4,
                                double regime_radius = 2.0)
        : space_(std::move(space)),
          ode_tolerance_(ode_tolerance),
          taylor_start_(taylor_start),
          regime_radius_(regime_radius) {
        if (!(ode_tolerance > 0.0 && ode_tolerance <= 1e-6)) throw PreconditionError("ode_tolerance must lie in (0, 1e-6]");
        if (!(taylor_start > 0.0 && taylor_start <= 1e-2)) throw PreconditionError("taylor_start must lie in (0, 1e-2]");
        if (!(regime_radius > 0.0)) throw PreconditionError("regime_radius must be positive");
    }

    const SpaceParams& space() const noexcept { return space_; }
    double ode_tolerance() const noexcept { return ode_tolerance_; }
    double taylor_start() const noexcept { return taylor_start_; }
    /// R0: the Bessel series describes phi on (0, R0], the c-function series beyond.
    double regime_radius() const noexcept { return regime_radius_; }
    bool in_near_regime(double s) const noexcept { return s <= regime_radius_; }

    /// Same evaluator on the same space, carrying a calibrated inversion constant.
    SphericalEvaluator with_inversion_constant(double c) const {
        SphericalEvaluator copy = *this;
        copy.space_ = space_.with_inversion_constant(c);
        return copy;
    }

  private:
    SpaceParams space_;
    double ode_tolerance_;
    double taylor_start_;
    double regime_radius_;
};

struct PhiSample {
    double value;
    double derivative;
};

namespace detail {

// Exact solution of the leading-order equation u'' + ((n-1)/s) u' + k^2 u = 0.
inline PhiSample bessel_seed(const SpaceParams& space, double k, double s) {
    const BesselOrder mu(space.dimension() - 2);
    const double n = space.dimension();
    return {script_j(mu, k * s), -k * k * s / n * script_j(mu.next(), k * s)};
}

}  // namespace detail

/// phi_lambda and d/ds phi_lambda on an ascending grid of radii >= 0.
///
/// Integration runs on v = A^{1/2} u, which solves v'' = (V(s) - k^2) v with the Liouville
/// potential V; v stays O(1) where u decays like e^{-Qs/2}, so relative error control on v
/// keeps u accurate relative to its own size. Radii below taylor_start take the Bessel seed
/// directly. The step is capped at 0.1/(1+|lambda|).
inline std::vector<PhiSample> phi_with_derivative(const SphericalEvaluator& evaluator, double lambda,
                                                  std::span<const double> s_grid) {
    if (!std::isfinite(lambda)) throw ArgumentError("lambda must be finite");
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        if (!(s_grid[i] >= 0.0) || !std::isfinite(s_grid[i])) throw ArgumentError("radii must be finite and >= 0");
        if (i > 0 && s_grid[i] < s_grid[i - 1]) throw ArgumentError("radius grid must be ascending");
    }
    const SpaceParams& space = evaluator.space();
    const double lam = std::abs(lambda);
    const double k2 = lam * lam + space.spectral_shift();
    const double k = std::sqrt(k2);
    const double s0 = evaluator.taylor_start();
    const double max_step = 0.1 / (1.0 + lam);

    std::vector<PhiSample> out(s_grid.size());
    std::size_t i = 0;
    for (; i < s_grid.size() && s_grid[i] <= s0; ++i) out[i] = detail::bessel_seed(space, k, s_grid[i]);
    if (i == s_grid.size()) return out;

    using State = std::array<double, 2>;
    namespace odeint = boost::numeric::odeint;
    using Stepper = odeint::runge_kutta_fehlberg78<State>;
    using Controlled = odeint::controlled_runge_kutta<Stepper>;
    Controlled stepper(typename Controlled::error_checker_type(1e-12 * evaluator.ode_tolerance(),
                                                               evaluator.ode_tolerance(), 1.0, 1.0));

    const auto system = [&space, k2](const State& x, State& dxds, double s) {
        dxds[0] = x[1];
        dxds[1] = (liouville_potential(space, s) - k2) * x[0];
    };

    const PhiSample seed = detail::bessel_seed(space, k, s0);
    const double root_a0 = std::exp(0.5 * log_density(space, s0));
    State x{root_a0 * seed.value, root_a0 * (seed.derivative + 0.5 * density_log_derivative(space, s0) * seed.value)};
    double s = s0;
    double dt = std::min(max_step, 0.1 * s0);

    for (; i < s_grid.size(); ++i) {
        const double target = s_grid[i];
        while (s < target) {
            if (target - s <= 1e-14 * target) {
                s = target;
                break;
            }
            dt = std::min({dt, max_step, target - s});
            if (!(dt > 1e-15 * std::max(1.0, s))) throw NumericalError("spherical ODE step size collapsed", s);
            stepper.try_step(system, x, s, dt);
        }
        if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw NumericalError("spherical ODE produced non-finite state", s);
        const double inv_root_a = std::exp(-0.5 * log_density(space, target));
        out[i] = {x[0] * inv_root_a, (x[1] - 0.5 * density_log_derivative(space, target) * x[0]) * inv_root_a};
    }
    return out;
}

/// phi_lambda(s) on an ascending grid of radii >= 0. Even in lambda, |phi| <= 1, phi(0) = 1.
inline std::vector<double> phi(const SphericalEvaluator& evaluator, double lambda, std::span<const double> s_grid) {
    const auto samples = phi_with_derivative(evaluator, lambda, s_grid);
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i].value;
    return out;
}

inline double phi(const SphericalEvaluator& evaluator, double lambda, double s) {
    const double grid[1] = {s};
    return phi(evaluator, lambda, std::span<const double>(grid, 1))[0];
}

/// Constant c0 = 2^{m_z} pi^{-1/2} Gamma(n/2) / Gamma((n-1)/2) of the Bessel series as usually
/// quoted for the kernel 2^mu sqrt(pi) Gamma(mu+1/2) J_mu(z)/z^mu. With that kernel the
/// leading term at the identity is 2^{m_z} rather than 1; phi_near_main therefore uses the
/// normalized kernel with unit constant.
inline double bessel_series_c0(const SpaceParams& space) {
    const double n = space.dimension();
    return std::pow(2.0, space.m_z()) / std::sqrt(std::numbers::pi) * std::tgamma(0.5 * n) / std::tgamma(0.5 * (n - 1));
}

/// Leading Bessel-series term (s^{n-1}/A(s))^{1/2} J_{(n-2)/2}(lambda s), 0 < s <= R0.
inline double phi_near_main(const SpaceParams& space, double lambda, double s, double regime_radius = 2.0) {
    if (!(s > 0.0) || s > regime_radius) throw DomainError("near-field term needs 0 < s <= R0");
    const double n = space.dimension();
    const double prefactor = std::exp(0.5 * ((n - 1.0) * std::log(s) - log_density(space, s)));
    return prefactor * script_j(BesselOrder(space.dimension() - 2), lambda * s);
}

/// Leading term of the c-function expansion, 2^{-m_z/2} A(s)^{-1/2} 2 Re[c(lambda) e^{i lambda s}],
/// for s > R0 and lambda != 0. `c_fn` maps lambda to c(lambda).
template <class CFunction>
double phi_far_main(const SpaceParams& space, CFunction&& c_fn, double lambda, double s, double regime_radius = 2.0) {
    if (lambda == 0.0) throw DomainError("far-field term is singular at lambda = 0");
    if (!(s > regime_radius) || !std::isfinite(s)) throw DomainError("far-field term needs s > R0");
    using namespace std::complex_literals;
    const std::complex<double> c = c_fn(lambda);
    const double scale = std::exp(-0.5 * space.m_z() * std::numbers::ln2 - 0.5 * log_density(space, s));
    return scale * 2.0 * (c * std::exp(1i * (lambda * s))).real();
}

inline double phi_far_main(const SpaceParams& space, double lambda, double s, double regime_radius = 2.0) {
    return phi_far_main(
        space, [&space](double l) { return c_function(space, l); }, lambda, s, regime_radius);
}

/// s^2 min(1, (|lambda| s)^{-(n+1)/2}): size of the first omitted Bessel-series term.
inline double near_field_envelope(const SpaceParams& space, double lambda, double s) {
    const double ls = std::abs(lambda) * s;
    const double decay = ls <= 1.0 ? 1.0 : std::pow(ls, -0.5 * (space.dimension() + 1));
    return s * s * decay;
}

/// A(s)^{-1/2} (1+|lambda|)^{-1} |c(lambda)|: size of the omitted c-function series terms.
inline double far_field_envelope(const SpaceParams& space, double lambda, double s) {
    return std::exp(-0.5 * log_density(space, s) + log_c_function(space, lambda).real()) / (1.0 + std::abs(lambda));
}

}  // namespace drh
