#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "drh/errors.hpp"
#include "drh/geometry.hpp"
#include "drh/special.hpp"

namespace drh {

/// log c(lambda) for the Harish-Chandra c-function
///
///   c(lambda) = 2^{Q - 2i lambda} Gamma(2i lambda) / Gamma((Q + 2i lambda)/2)
///               * Gamma(n/2) / Gamma((m_v + 4i lambda + 2)/4).
///
/// Every Gamma factor is handled in log form: |Gamma(2i lambda)| ~ exp(-pi lambda) underflows
/// long before the quotient does.
inline std::complex<double> log_c_function(const SpaceParams& space, double lambda) {
    if (lambda == 0.0) throw PoleError("c-function has a pole at lambda = 0");
    using namespace std::complex_literals;
    const double q = space.homogeneous_dimension();
    const double n = space.dimension();
    const std::complex<double> il = 1i * lambda;
    return (q - 2.0 * il) * std::numbers::ln2 + log_gamma_complex(2.0 * il) -
           log_gamma_complex(0.5 * (q + 2.0 * il)) + std::lgamma(0.5 * n) -
           log_gamma_complex(0.25 * (space.m_v() + 2.0) + il);
}

inline std::complex<double> c_function(const SpaceParams& space, double lambda) {
    return std::exp(log_c_function(space, lambda));
}

/// Plancherel density |c(lambda)|^-2, extended by 0 at lambda = 0.
inline double plancherel_density(const SpaceParams& space, double lambda) {
    if (lambda == 0.0) return 0.0;
    return std::exp(-2.0 * log_c_function(space, lambda).real());
}

/// The comparison profile lambda^2 (1 + lambda)^{n-3} of the Plancherel density.
inline double plancherel_model(const SpaceParams& space, double lambda) {
    const double l = std::abs(lambda);
    return l * l * std::pow(1.0 + l, space.dimension() - 3);
}

}  // namespace drh
