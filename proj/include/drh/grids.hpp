#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "drh/errors.hpp"
#include "drh/quadrature.hpp"

namespace drh {

namespace detail {

// Shared storage for the two quadrature grids; kept apart as distinct types so frequency and
// radius grids cannot be swapped at a call site.
class NodeSet {
  public:
    NodeSet() = default;
    NodeSet(std::vector<double> nodes, std::vector<double> weights, double lo, double hi)
        : nodes_(std::move(nodes)), weights_(std::move(weights)), lo_(lo), hi_(hi) {
        if (nodes_.size() != weights_.size()) throw ArgumentError("grid nodes and weights differ in length");
        if (nodes_.empty()) throw ArgumentError("grid must contain at least one node");
        if (!(hi_ > lo_) || !(lo_ >= 0.0)) throw ArgumentError("grid interval must satisfy 0 <= lo < hi");
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!(nodes_[i] > 0.0) || !std::isfinite(nodes_[i])) throw ArgumentError("grid nodes must be positive");
            if (i > 0 && !(nodes_[i] > nodes_[i - 1])) throw ArgumentError("grid nodes must be strictly ascending");
            if (!(weights_[i] > 0.0)) throw ArgumentError("grid weights must be positive");
            if (nodes_[i] < lo_ || nodes_[i] > hi_) throw ArgumentError("grid node outside its covered interval");
        }
    }

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

  protected:
    static NodeSet from_rule(const QuadratureRule& rule, double lo, double hi) {
        return NodeSet(rule.nodes, rule.weights, lo, hi);
    }

    std::vector<double> nodes_;
    std::vector<double> weights_;
    double lo_ = 0.0;
    double hi_ = 1.0;
};

}  // namespace detail

/// Quadrature nodes and weights for d lambda on [lo, lambda_max].
class SpectralGrid : public detail::NodeSet {
  public:
    SpectralGrid() = default;
    SpectralGrid(std::vector<double> lambdas, std::vector<double> weights, double lo, double lambda_max)
        : NodeSet(std::move(lambdas), std::move(weights), lo, lambda_max) {}

    /// Composite Gauss-Legendre grid; `grade_levels` geometric refinements of the first panel.
    static SpectralGrid gauss_legendre(double lo, double hi, int panels, int order = 16, int grade_levels = 0) {
        const QuadratureRule rule = composite_rule(graded_edges(lo, hi, panels, grade_levels), order);
        return SpectralGrid(rule.nodes, rule.weights, lo, hi);
    }

    /// Grid on [lo, hi] resolving phi_lambda(s) for s <= s_max: at least 8 nodes per period
    /// 2 pi / s_max of the lambda-oscillation.
    static SpectralGrid for_radius(double lo, double hi, double s_max, int order = 16, int grade_levels = 0,
                                   double nodes_per_period = 8.0) {
        const int panels = panels_for_oscillation(hi - lo, s_max, order, nodes_per_period, 2);
        return gauss_legendre(lo, hi, panels, order, grade_levels);
    }

    const std::vector<double>& lambdas() const noexcept { return nodes_; }
    double lambda_max() const noexcept { return hi_; }
};

/// Quadrature nodes and weights for ds on [lo, s_max].
class RadialGrid : public detail::NodeSet {
  public:
    RadialGrid() = default;
    RadialGrid(std::vector<double> radii, std::vector<double> weights, double lo, double s_max)
        : NodeSet(std::move(radii), std::move(weights), lo, s_max) {}

    static RadialGrid gauss_legendre(double lo, double hi, int panels, int order = 16, int grade_levels = 0) {
        const QuadratureRule rule = composite_rule(graded_edges(lo, hi, panels, grade_levels), order);
        return RadialGrid(rule.nodes, rule.weights, lo, hi);
    }

    /// Grid on [lo, hi] resolving phi_lambda(s) for lambda <= lambda_max.
    static RadialGrid for_frequency(double lo, double hi, double lambda_max, int order = 16,
                                    double nodes_per_period = 8.0) {
        const int panels = panels_for_oscillation(hi - lo, lambda_max, order, nodes_per_period, 2);
        return gauss_legendre(lo, hi, panels, order);
    }

    const std::vector<double>& radii() const noexcept { return nodes_; }
    double s_max() const noexcept { return hi_; }
};

/// Sampled spherical Fourier data f^(lambda) on a spectral grid (lambda > 0 only; evenness
/// in lambda is implicit).
struct Spectrum {
    SpectralGrid grid;
    std::vector<std::complex<double>> values;

    Spectrum() = default;
    Spectrum(SpectralGrid g, std::vector<std::complex<double>> v) : grid(std::move(g)), values(std::move(v)) {
        if (values.size() != grid.size()) throw ArgumentError("spectrum values do not match its grid");
        for (const auto& x : values) {
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw ArgumentError("spectrum values must be finite");
        }
    }

    static Spectrum zero(SpectralGrid g) {
        std::vector<std::complex<double>> v(g.size(), 0.0);
        return Spectrum(std::move(g), std::move(v));
    }
};

/// Sampled radial function f(s) on a radial grid.
struct RadialProfile {
    RadialGrid grid;
    std::vector<std::complex<double>> values;

    RadialProfile() = default;
    RadialProfile(RadialGrid g, std::vector<std::complex<double>> v) : grid(std::move(g)), values(std::move(v)) {
        if (values.size() != grid.size()) throw ArgumentError("profile values do not match its grid");
        for (const auto& x : values) {
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw ArgumentError("profile values must be finite");
        }
    }

    template <class F>
    static RadialProfile sample(RadialGrid g, F&& f) {
        std::vector<std::complex<double>> v;
        v.reserve(g.size());
        for (double s : g.radii()) v.emplace_back(f(s));
        return RadialProfile(std::move(g), std::move(v));
    }

    static RadialProfile zero(RadialGrid g) {
        std::vector<std::complex<double>> v(g.size(), 0.0);
        return RadialProfile(std::move(g), std::move(v));
    }
};

}  // namespace drh
