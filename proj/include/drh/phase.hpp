#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

// Boost 1.74's pchip calls isnan unqualified on double.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

#include "drh/errors.hpp"
#include "drh/geometry.hpp"

namespace drh {

/// Dispersive phase psi(lambda) of degree a, evaluated at |lambda|.
///
///   power_law          lambda^a
///   shifted_power_law  (lambda^2 + shift)^{a/2}
///   tabulated          monotone cubic (PCHIP) through (nodes, values); constant below the first
///                      node, v_last + lambda^a - lambda_last^a beyond the last one
class Phase {
  public:
    enum class Form { power_law, shifted_power_law, tabulated };

    static Phase power_law(double a) { return Phase(Form::power_law, a, 0.0); }

    static Phase shifted_power_law(double a, double shift) {
        if (!(shift >= 0.0) || !std::isfinite(shift)) throw PreconditionError("phase shift must be >= 0");
        return Phase(Form::shifted_power_law, a, shift);
    }
    /// Shift Q^2/4 of the given space.
    static Phase shifted_power_law(double a, const SpaceParams& space) {
        return shifted_power_law(a, space.spectral_shift());
    }

    static Phase tabulated(std::vector<double> nodes, std::vector<double> values, double a) {
        if (nodes.size() != values.size()) throw PreconditionError("tabulated phase: nodes and values differ in length");
        if (nodes.size() < 4) throw PreconditionError("tabulated phase needs at least 4 nodes");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!(nodes[i] >= 0.0) || !std::isfinite(nodes[i]) || !std::isfinite(values[i])) {
                throw PreconditionError("tabulated phase: nodes must be >= 0 and values finite");
            }
            if (i > 0 && !(nodes[i] > nodes[i - 1])) throw PreconditionError("tabulated phase: nodes must ascend");
        }
        Phase p(Form::tabulated, a, 0.0);
        p.first_ = {nodes.front(), values.front()};
        p.last_ = {nodes.back(), values.back()};
        p.table_ = std::make_shared<const Interpolant>(std::move(nodes), std::move(values));
        return p;
    }

    Form form() const noexcept { return form_; }
    double degree() const noexcept { return a_; }
    double shift() const noexcept { return shift_; }

    double operator()(double lambda) const {
        const double l = std::abs(lambda);
        switch (form_) {
            case Form::power_law:
                return std::pow(l, a_);
            case Form::shifted_power_law:
                return std::pow(l * l + shift_, 0.5 * a_);
            case Form::tabulated:
                if (l <= first_.first) return first_.second;
                if (l >= last_.first) return last_.second + std::pow(l, a_) - std::pow(last_.first, a_);
                return (*table_)(l);
        }
        return 0.0;
    }

    std::string describe() const {
        switch (form_) {
            case Form::power_law:
                return "power_law";
            case Form::shifted_power_law:
                return "shifted_power_law";
            case Form::tabulated:
                return "tabulated";
        }
        return {};
    }

  private:
    using Interpolant = boost::math::interpolators::pchip<std::vector<double>>;

    Phase(Form form, double a, double shift) : form_(form), a_(a), shift_(shift) {
        if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("phase degree a must be positive");
    }

    Form form_;
    double a_;
    double shift_;
    std::pair<double, double> first_{0.0, 0.0};
    std::pair<double, double> last_{0.0, 0.0};
    std::shared_ptr<const Interpolant> table_;
};

/// Sup of a difference over a grid, and whether it looks bounded: the grid is split at its
/// midpoint and the difference is flagged unbounded when the upper half's sup exceeds the
/// lower half's by more than 5%.
struct BoundReport {
    double sup = 0.0;
    double sup_lower = 0.0;
    double sup_upper = 0.0;
    double value_at_first = 0.0;
    bool bounded = true;
};

namespace detail {

inline BoundReport bound_report(const std::function<double(double)>& diff, double threshold,
                                const std::vector<double>& grid) {
    if (grid.size() < 2) throw PreconditionError("bound check needs at least two grid points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > threshold) || !std::isfinite(grid[i])) {
            throw PreconditionError("bound check grid must lie in (Lambda, inf)");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) throw PreconditionError("bound check grid must ascend");
    }
    BoundReport r;
    const std::size_t half = grid.size() / 2;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = std::abs(diff(grid[i]));
        if (i == 0) r.value_at_first = d;
        double& side = i < half ? r.sup_lower : r.sup_upper;
        side = std::max(side, d);
    }
    r.sup = std::max(r.sup_lower, r.sup_upper);
    r.bounded = !(r.sup_upper > 1.05 * r.sup_lower + 1e-12);
    return r;
}

}  // namespace detail

/// |psi(lambda) - lambda^a| over a grid in (Lambda, inf).
inline BoundReport concavity_check(const Phase& phase, double a, double threshold, const std::vector<double>& grid) {
    return detail::bound_report([&](double l) { return phase(l) - std::pow(l, a); }, threshold, grid);
}

/// |psi_1(lambda) - psi_2(lambda)| over a grid in (Lambda, inf).
template <class Phase1, class Phase2>
BoundReport comparable_oscillation(const Phase1& psi1, const Phase2& psi2, double threshold,
                                   const std::vector<double>& grid) {
    return detail::bound_report([&](double l) { return psi1(l) - psi2(l); }, threshold, grid);
}

/// Exponents of the uniform oscillatory-integral bound |I(x)| <= C (|x|^{-c1} + |x|^{-c2}).
struct WaltherConstants {
    double a;
    double beta;
    double c1;
    double c2;
};

inline WaltherConstants walther_constants(double a, double beta) {
    if (!(a > 0.0 && a < 1.0)) throw PreconditionError("walther_constants needs a in (0, 1)");
    if (!(beta > 0.25 * a && beta < std::min(0.5 * a, 0.25))) {
        throw PreconditionError("walther_constants needs beta in (a/4, min(a/2, 1/4))");
    }
    return {a, beta, 1.0 - 2.0 * beta, (4.0 * beta - 2.0 + a) / (2.0 * a - 2.0)};
}

/// Time selection for the propagator: one time, a grid of times, or a time per radius.
class TimeChoice {
  public:
    enum class Mode { fixed, grid, function_of_radius };

    static TimeChoice fixed(double t) {
        check(t);
        TimeChoice c(Mode::fixed);
        c.times_ = {t};
        return c;
    }

    static TimeChoice grid(std::vector<double> times) {
        if (times.empty()) throw ArgumentError("time grid must not be empty");
        for (std::size_t k = 0; k < times.size(); ++k) {
            check(times[k]);
            if (k > 0 && !(times[k] > times[k - 1])) throw PreconditionError("time grid must ascend strictly");
        }
        TimeChoice c(Mode::grid);
        c.times_ = std::move(times);
        return c;
    }

    /// t(s); values are checked against (0, 1) when evaluated on a radius grid.
    static TimeChoice function_of_radius(std::function<double(double)> t_of_s) {
        if (!t_of_s) throw ArgumentError("time function must be callable");
        TimeChoice c(Mode::function_of_radius);
        c.fn_ = std::move(t_of_s);
        return c;
    }

    Mode mode() const noexcept { return mode_; }
    const std::vector<double>& times() const noexcept { return times_; }

    /// Time used at radius s (fixed or function_of_radius modes).
    double at(double s) const {
        if (mode_ == Mode::grid) throw ArgumentError("a time grid has no single time per radius");
        const double t = mode_ == Mode::fixed ? times_.front() : fn_(s);
        check(t);
        return t;
    }

  private:
    explicit TimeChoice(Mode m) : mode_(m) {}

    static void check(double t) {
        if (!(t > 0.0 && t < 1.0)) throw PreconditionError("times must lie in (0, 1), got " + std::to_string(t));
    }

    Mode mode_;
    std::vector<double> times_;
    std::function<double(double)> fn_;
};

/// `count` logarithmically spaced times in [lo, hi] subset of (0, 1).
inline std::vector<double> log_time_grid(int count = 256, double lo = 1e-4, double hi = 1.0 - 1e-4) {
    if (count < 1) throw ArgumentError("time grid needs at least one point");
    if (!(lo > 0.0 && hi < 1.0 && lo <= hi)) throw PreconditionError("time grid bounds must satisfy 0 < lo <= hi < 1");
    if (count == 1) return {lo};
    std::vector<double> t(count);
    const double step = std::log(hi / lo) / (count - 1);
    for (int k = 0; k < count; ++k) t[k] = lo * std::exp(step * k);
    t.back() = hi;
    return t;
}

/// Inserts the geometric midpoint between consecutive times; the input is a subset of the output.
inline std::vector<double> refine_time_grid(const std::vector<double>& times) {
    std::vector<double> out;
    out.reserve(2 * times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (k > 0) out.push_back(std::sqrt(times[k - 1] * times[k]));
        out.push_back(times[k]);
    }
    return out;
}

}  // namespace drh
