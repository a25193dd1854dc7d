#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "drh/errors.hpp"

namespace drh {

/// Non-negative half-integer Bessel order mu in {0, 1/2, 1, 3/2, ...}, stored as 2*mu.
class BesselOrder {
  public:
    constexpr explicit BesselOrder(int twice_mu) : twice_(twice_mu) {
        if (twice_mu < 0) throw PreconditionError("Bessel order must be non-negative");
    }

    static BesselOrder from_value(double mu) {
        const double twice = 2.0 * mu;
        const double r = std::round(twice);
        if (!(mu >= 0.0) || std::abs(twice - r) > 1e-12) {
            throw PreconditionError("Bessel order must be a non-negative half-integer, got " + std::to_string(mu));
        }
        return BesselOrder(static_cast<int>(r));
    }

    constexpr double value() const noexcept { return 0.5 * twice_; }
    constexpr int twice() const noexcept { return twice_; }
    /// True for orders l + 1/2, whose Bessel functions are elementary.
    constexpr bool is_half_odd() const noexcept { return twice_ % 2 == 1; }
    constexpr BesselOrder next() const noexcept { return BesselOrder(twice_ + 2); }

  private:
    int twice_;
};

namespace detail {

// Godfrey's Lanczos coefficients, g = 607/128.
inline constexpr double lanczos_g = 607.0 / 128.0;
inline constexpr std::array<double, 15> lanczos_coefficients = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

inline std::complex<double> lanczos_log_gamma(std::complex<double> z) {
    // valid for Re z >= 1/2
    z -= 1.0;
    std::complex<double> sum = lanczos_coefficients[0];
    for (std::size_t k = 1; k < lanczos_coefficients.size(); ++k) {
        sum += lanczos_coefficients[k] / (z + static_cast<double>(k));
    }
    const std::complex<double> t = z + lanczos_g + 0.5;
    const double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Spherical Bessel j_l(x) for x >= 0.
inline double spherical_bessel(int l, double x) {
    if (x == 0.0) return l == 0 ? 1.0 : 0.0;
    if (x < std::max(1.0, static_cast<double>(l))) {
        // x^l / (2l+1)!! * sum_k (-x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
        double prefactor = 1.0;
        for (int j = 1; j <= l; ++j) prefactor *= x / (2.0 * j + 1.0);
        double term = 1.0;
        double sum = 1.0;
        const double y = -0.5 * x * x;
        for (int k = 1; k < 200; ++k) {
            term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return prefactor * sum;
    }
    double j0 = std::sin(x) / x;
    if (l == 0) return j0;
    double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int k = 1; k < l; ++k) {
        const double j2 = (2.0 * k + 1.0) / x * j1 - j0;
        j0 = j1;
        j1 = j2;
    }
    return j1;
}

}  // namespace detail

/// Analytic log Gamma(z) (branch cut along the negative real axis), relative accuracy
/// ~1e-14 for |z| <= 10^3. Throws PoleError at z = 0, -1, -2, ...
inline std::complex<double> log_gamma_complex(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw PoleError("log Gamma has a pole at z = " + std::to_string(z.real()));
    }
    if (z.real() >= 0.5) return detail::lanczos_log_gamma(z);
    // Gamma(z) = Gamma(z + k) / (z (z+1) ... (z+k-1))
    std::complex<double> shift_logs = 0.0;
    std::complex<double> w = z;
    while (w.real() < 0.5) {
        shift_logs += std::log(w);
        w += 1.0;
    }
    return detail::lanczos_log_gamma(w) - shift_logs;
}

/// Bessel function of the first kind J_mu(x), x >= 0 (NaN for x < 0).
///
/// Orders l + 1/2 use the elementary form J = sqrt(2x/pi) j_l(x); other orders are delegated
/// to std::cyl_bessel_j.
inline double bessel_j(BesselOrder mu, double x) {
    if (std::isnan(x) || x < 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (mu.is_half_odd()) {
        const int l = (mu.twice() - 1) / 2;
        return std::sqrt(2.0 * x / std::numbers::pi) * detail::spherical_bessel(l, x);
    }
    return std::cyl_bessel_j(mu.value(), x);
}

/// Normalized Bessel kernel J_mu(x) = Gamma(mu+1) (2/x)^mu J_mu(x), so that J_mu(0) = 1 and
/// J_{1/2}(x) = sin(x)/x. It is the radial Fourier kernel of R^n for mu = (n-2)/2.
inline double script_j(BesselOrder mu, double x) {
    if (std::isnan(x)) return x;
    x = std::abs(x);
    const double m = mu.value();
    if (x < 1e-3) {
        const double y = 0.25 * x * x;
        return 1.0 - y / (m + 1.0) + 0.5 * y * y / ((m + 1.0) * (m + 2.0));
    }
    if (mu.is_half_odd()) {
        // (2l+1)!! j_l(x) / x^l
        const int l = (mu.twice() - 1) / 2;
        if (x < std::max(1.0, static_cast<double>(l))) {
            double term = 1.0;
            double sum = 1.0;
            const double y = -0.5 * x * x;
            for (int k = 1; k < 200; ++k) {
                term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            }
            return sum;
        }
        double scale = 1.0;
        for (int j = 1; j <= l; ++j) scale *= (2.0 * j + 1.0) / x;
        return scale * detail::spherical_bessel(l, x);
    }
    return std::tgamma(m + 1.0) * std::pow(2.0 / x, m) * std::cyl_bessel_j(m, x);
}

}  // namespace drh
