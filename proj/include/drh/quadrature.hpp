#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "drh/errors.hpp"

namespace drh {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1], Newton iteration on P_order.
inline QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw ArgumentError("Gauss-Legendre order must be >= 1");
    if (order == 1) return {{0.0}, {2.0}};
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

/// Panel edges on [lo, hi]: `panels` uniform panels, with the first one additionally split
/// geometrically `grade_levels` times towards lo (for integrands with algebraic behaviour at lo).
inline std::vector<double> graded_edges(double lo, double hi, int panels, int grade_levels = 0) {
    if (!(hi > lo)) throw ArgumentError("panel interval must satisfy hi > lo");
    if (panels < 1) throw ArgumentError("need at least one panel");
    std::vector<double> edges;
    edges.reserve(panels + grade_levels + 1);
    const double h = (hi - lo) / panels;
    edges.push_back(lo);
    for (int k = grade_levels; k >= 1; --k) edges.push_back(lo + h * std::ldexp(1.0, -k));
    for (int p = 1; p < panels; ++p) edges.push_back(lo + h * p);
    edges.push_back(hi);
    return edges;
}

/// Composite rule over consecutive panels [edges[k], edges[k+1]].
inline QuadratureRule composite_rule(const std::vector<double>& edges, int order) {
    if (edges.size() < 2) throw ArgumentError("composite rule needs at least two edges");
    const QuadratureRule base = gauss_legendre(order);
    QuadratureRule out;
    out.nodes.reserve((edges.size() - 1) * order);
    out.weights.reserve((edges.size() - 1) * order);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = edges[k];
        const double b = edges[k + 1];
        if (!(b > a)) throw ArgumentError("panel edges must be strictly ascending");
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (int i = 0; i < order; ++i) {
            out.nodes.push_back(mid + half * base.nodes[i]);
            out.weights.push_back(half * base.weights[i]);
        }
    }
    return out;
}

/// Number of panels of a given order needed to place at least `nodes_per_period` nodes in
/// each period 2 pi / frequency across a span.
inline int panels_for_oscillation(double span, double frequency, int order, double nodes_per_period = 8.0,
                                  int min_panels = 1) {
    const double periods = span * std::abs(frequency) / (2.0 * std::numbers::pi);
    const int needed = static_cast<int>(std::ceil(periods * nodes_per_period / order));
    return std::max(min_panels, needed);
}

}  // namespace drh
