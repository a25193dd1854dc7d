#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "drh/errors.hpp"

namespace drh {

/// Structural integers of a Damek-Ricci space S = NA.
///
/// m_v is the dimension of the complement v of the centre (even, since J_Z is a complex
/// structure on v; m_v = 0 is the degenerate real hyperbolic case) and m_z the dimension of
/// the centre z. The manifold dimension is n = m_v + m_z + 1 and the homogeneous dimension
/// Q = m_v/2 + m_z.
///
/// A space may additionally carry the inversion constant C of the spherical transform
/// (f = C * int f^ phi |c|^-2 dlambda), which is obtained by calibration; see
/// calibrate_inversion().
class SpaceParams {
  public:
    SpaceParams(int m_v, int m_z) : m_v_(m_v), m_z_(m_z) {
        if (m_v < 0 || m_v % 2 != 0) {
            throw PreconditionError("m_v must be a non-negative even integer, got " + std::to_string(m_v));
        }
        if (m_z < 1) {
            throw PreconditionError("m_z must be a positive integer, got " + std::to_string(m_z));
        }
    }

    int m_v() const noexcept { return m_v_; }
    int m_z() const noexcept { return m_z_; }
    int dimension() const noexcept { return m_v_ + m_z_ + 1; }
    double homogeneous_dimension() const noexcept { return 0.5 * m_v_ + m_z_; }
    /// Q^2/4, bottom of the L^2 spectrum of -Laplacian.
    double spectral_shift() const noexcept {
        double q = homogeneous_dimension();
        return 0.25 * q * q;
    }
    /// Order (n-2)/2 of the Euclidean Bessel kernel in dimension n.
    double bessel_order() const noexcept { return 0.5 * (dimension() - 2); }

    const std::optional<double>& inversion_constant() const noexcept { return inversion_constant_; }
    SpaceParams with_inversion_constant(double c) const {
        if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("inversion constant must be positive");
        SpaceParams copy = *this;
        copy.inversion_constant_ = c;
        return copy;
    }

    std::string label() const { return "(" + std::to_string(m_v_) + "," + std::to_string(m_z_) + ")"; }

    friend bool operator==(const SpaceParams& x, const SpaceParams& y) {
        return x.m_v_ == y.m_v_ && x.m_z_ == y.m_z_;
    }

  private:
    int m_v_;
    int m_z_;
    std::optional<double> inversion_constant_;
};

/// Real hyperbolic 3-space as the degenerate Damek-Ricci space (m_v, m_z) = (0, 2).
inline SpaceParams real_hyperbolic_3() { return SpaceParams(0, 2); }

inline double log_density(const SpaceParams& space, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("density requires a finite radius s > 0");
    const int m = space.m_v() + space.m_z();
    return m * std::log(2.0 * std::sinh(0.5 * s)) + space.m_z() * std::log(std::cosh(0.5 * s));
}

/// Volume density A(s) = 2^{m_v+m_z} sinh(s/2)^{m_v+m_z} cosh(s/2)^{m_z} of the Haar measure
/// in geodesic polar coordinates.
inline double density(const SpaceParams& space, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("density requires a finite radius s > 0");
    const int m = space.m_v() + space.m_z();
    return std::pow(2.0 * std::sinh(0.5 * s), m) * std::pow(std::cosh(0.5 * s), space.m_z());
}

/// A'(s)/A(s) = ((m_v+m_z)/2) coth(s/2) + (m_z/2) tanh(s/2).
inline double density_log_derivative(const SpaceParams& space, double s) {
    const double h = 0.5 * s;
    return 0.5 * (space.m_v() + space.m_z()) / std::tanh(h) + 0.5 * space.m_z() * std::tanh(h);
}

/// Potential of the radial Laplacian in Liouville normal form: with v = A^{1/2} u the radial
/// eigen-equation u'' + (A'/A) u' + k^2 u = 0 becomes v'' = (V(s) - k^2) v where
/// V = (A'/A)'/2 + (A'/A)^2/4.
inline double liouville_potential(const SpaceParams& space, double s) {
    const double h = 0.5 * s;
    const double alpha = 0.5 * (space.m_v() + space.m_z());
    const double beta = 0.5 * space.m_z();
    const double sh = std::sinh(h);
    const double ch = std::cosh(h);
    const double l = alpha * ch / sh + beta * sh / ch;
    const double dl = -0.5 * alpha / (sh * sh) + 0.5 * beta / (ch * ch);
    return 0.5 * dl + 0.25 * l * l;
}

}  // namespace drh
