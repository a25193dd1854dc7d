#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "drh.hpp"

using namespace drh;
using cd = std::complex<double>;

namespace {

// Independent evaluation of I(x; eps, N): tanh-sinh on the singular unit segment, adaptive
// Gauss-Kronrod on unit panels beyond it.
cd reference_integral(double x, double eps, double N, double a, double beta) {
    const BumpFunction chi = BumpFunction::chi();
    const auto part = [&](bool imag) {
        const auto f = [&](double xi) {
            const double ph = eps * std::pow(xi, a);
            return std::cos(x * xi) * std::pow(xi, -2.0 * beta) * chi(xi / N) * (imag ? std::sin(ph) : std::cos(ph));
        };
        boost::math::quadrature::tanh_sinh<double> ts;
        double acc = ts.integrate(f, 0.0, 1.0, 1e-13);
        for (double lo = 1.0; lo < 2.0 * N; lo += 1.0) {
            acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, std::min(lo + 1.0, 2.0 * N), 10,
                                                                                 1e-13);
        }
        return 2.0 * acc;
    };
    return {part(false), part(true)};
}

}  // namespace

TEST(Fits, LineAndMedian) {
    const LineFit f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.residual, 0.0, 1e-14);
    const LineFit t = fit_loglog_tail({1, 10, 100, 1000, 10000, 100000}, {5, 1, 100, 1000, 10000, 100000});
    EXPECT_NEAR(t.slope, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2.0);
    EXPECT_DOUBLE_EQ(median({4, 1, 2, 3}), 2.5);
    EXPECT_THROW(fit_line({1}, {1}), ArgumentError);
}

TEST(Counterexample, Geometry) {
    const CounterexampleSpec spec(real_hyperbolic_3(), 0.5, 64, 0.1, 0.1);
    const auto [lo, hi] = spec.support_window();
    EXPECT_NEAR(hi - 64.0, std::pow(64.0, 0.75), 1e-12);
    EXPECT_NEAR(64.0 - lo, std::pow(64.0, 0.75), 1e-12);
    const auto [s0, s1] = spec.annulus();
    EXPECT_NEAR(s0, 0.5 * 0.1 / 8.0, 1e-15);
    EXPECT_DOUBLE_EQ(s1, 2.0 * s0);
    // t ranges over (eps, 2 eps) on the annulus.
    EXPECT_NEAR(spec.time_at(s0), 0.1, 1e-14);
    EXPECT_NEAR(spec.time_at(s1), 0.2, 1e-14);
    EXPECT_THROW(CounterexampleSpec(real_hyperbolic_3(), 1.0, 64, 0.1, 0.1), PreconditionError);
    EXPECT_THROW(CounterexampleSpec(real_hyperbolic_3(), 0.5, 64, 0.5, 0.1), PreconditionError);
    EXPECT_THROW(CounterexampleSpec(real_hyperbolic_3(), 0.5, 1, 0.1, 0.1), PreconditionError);
}

TEST(Counterexample, ValuesAndResolution) {
    const CounterexampleSpec spec(real_hyperbolic_3(), 0.5, 64, 0.1, 0.1);
    // Plateau of eta at lambda = N: |c(N)| N^{-1/2} = N^{-3/2} on H^3.
    EXPECT_NEAR(counterexample_value(spec, 64.0), std::pow(64.0, -1.5), 1e-15);
    EXPECT_EQ(counterexample_value(spec, 10.0), 0.0);
    EXPECT_EQ(counterexample_value(spec, -64.0), 0.0);
    const Spectrum fh = build_counterexample(spec);
    EXPECT_GE(fh.grid.size(), 64u);
    const auto [lo, hi] = spec.support_window();
    EXPECT_THROW(build_counterexample(spec, SpectralGrid::gauss_legendre(lo, hi, 2, 16)), ResolutionError);
}

TEST(Sharpness, SlopeMatchesScalingAndIsGridInvariant) {
    const SphericalEvaluator ev(real_hyperbolic_3());
    const std::vector<int> ns{16, 32, 64, 128, 256};
    const ExperimentReport r1 = sharpness_run(ev, 0.5, 0.1, ns, 0.1);
    EXPECT_TRUE(r1.pass);
    EXPECT_NEAR(*r1.slope, -0.025, 0.05);
    SharpnessOptions opt;
    opt.refinement = 2;
    const ExperimentReport r2 = sharpness_run(ev, 0.5, 0.1, ns, 0.1, opt);
    EXPECT_NEAR(*r1.slope, *r2.slope, 1e-6);
    EXPECT_EQ(r1.per_point.size(), ns.size());
}

TEST(Sharpness, RejectsBadLists) {
    const SphericalEvaluator ev(real_hyperbolic_3());
    EXPECT_THROW(sharpness_run(ev, 0.5, 0.1, {16}, 0.1), ArgumentError);
    EXPECT_THROW(sharpness_run(ev, 0.5, 0.1, {32, 16}, 0.1), ArgumentError);
}

TEST(Sharpness, Deterministic) {
    const SphericalEvaluator ev(real_hyperbolic_3());
    const std::vector<int> ns{16, 32, 64};
    SharpnessOptions threaded;
    threaded.threads = 3;
    const std::string a = sharpness_run(ev, 0.5, 0.1, ns, 0.1).to_json().dump();
    const std::string b = sharpness_run(ev, 0.5, 0.1, ns, 0.1, threaded).to_json().dump();
    EXPECT_EQ(a, b);
}

TEST(Boundedness, StableUnderRefinement) {
    MaximalOptions opt;
    opt.base_times = 64;
    const ExperimentReport r = boundedness_run(SphericalEvaluator(real_hyperbolic_3()), 0.5, 0.175, {16, 32, 64}, 1.0, opt);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.checks["refinement_drift"].get<double>(), 0.02);
    EXPECT_GT(*r.sup_ratio, 0.0);
}

TEST(MaximalRatio, ZeroMembersExcludedAndRefinementsValidated) {
    const SphericalEvaluator ev = calibrate_inversion(SphericalEvaluator(real_hyperbolic_3()));
    const SpectralGrid g = SpectralGrid::gauss_legendre(0.0, 8.0, 4);
    std::vector<cd> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::exp(-g.lambdas()[j]);
    MaximalOptions opt;
    opt.base_times = 16;
    const ExperimentReport r =
        maximal_ratio_run(ev, Phase::power_law(0.5), 0.2, {Spectrum(g, v), Spectrum::zero(g)}, 1.0, opt);
    EXPECT_TRUE(r.per_point[1]["excluded"].get<bool>());
    EXPECT_TRUE(std::isfinite(*r.sup_ratio));
    opt.refinements = 0;
    EXPECT_THROW(maximal_ratio_run(ev, Phase::power_law(0.5), 0.2, {Spectrum(g, v)}, 1.0, opt), ArgumentError);
}

TEST(Oscillatory, AgreesWithAdaptiveQuadrature) {
    for (double eps : {-1.0, 0.0, 1.0}) {
        for (double x : {0.05, 1.0, 7.0}) {
            const cd got = oscillatory_integral(x, eps, 16.0, 0.5, 0.2);
            const cd want = reference_integral(x, eps, 16.0, 0.5, 0.2);
            EXPECT_LE(std::abs(got - want), 1e-8 * std::max(1.0, std::abs(want))) << "eps " << eps << " x " << x;
        }
    }
}

TEST(Oscillatory, HomogeneousLimit) {
    // eps = 0, N -> inf: int_R e^{i x xi} |xi|^{-2 beta} dxi = 2 Gamma(1 - 2 beta) sin(pi beta) |x|^{2 beta - 1}.
    const double beta = 0.2;
    for (double x : {0.5, 1.0, 4.0}) {
        const double want = 2.0 * std::tgamma(1.0 - 2.0 * beta) * std::sin(std::numbers::pi * beta) *
                            std::pow(x, 2.0 * beta - 1.0);
        const cd got = oscillatory_integral(x, 0.0, 512.0, 0.5, beta);
        EXPECT_NEAR(got.real(), want, 1e-7) << "x " << x;
        EXPECT_NEAR(got.imag(), 0.0, 1e-12);
    }
}

TEST(Oscillatory, EvenInX) {
    EXPECT_EQ(oscillatory_integral(2.0, 1.0, 32.0, 0.5, 0.2), oscillatory_integral(-2.0, 1.0, 32.0, 0.5, 0.2));
}

TEST(Oscillatory, BoundCheckReport) {
    const ExperimentReport r = oscillatory_bound_check(0.5, 0.2, {16, 32, 64, 128}, {-1, 1}, {0.1, 1.0, 10.0});
    EXPECT_EQ(r.per_point.size(), 4u * 2u * 3u);
    EXPECT_DOUBLE_EQ(r.inputs["c1"].get<double>(), 1.0 - 0.4);
    EXPECT_THROW(oscillatory_bound_check(0.5, 0.2, {16, 32}, {0}, {1.0}), ArgumentError);
    EXPECT_THROW(oscillatory_bound_check(0.5, 0.2, {16, 32, 64}, {0}, {0.0}), ArgumentError);
    EXPECT_THROW(oscillatory_bound_check(0.5, 0.1, {16, 32, 64}, {0}, {1.0}), PreconditionError);
}

TEST(Pitt, UnweightedRatioIsPlancherel) {
    const auto bump = [](double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; };
    const ExperimentReport r = pitt_check({{"bump", bump, -1.0, 1.0}}, 0.0);
    EXPECT_NEAR(*r.sup_ratio, std::sqrt(2.0 * std::numbers::pi), 1e-6);
}

TEST(Pitt, WeightedRatiosFinite) {
    const auto bump = [](double x) { return std::abs(x - 1.5) < 0.5 ? std::exp(-1.0 / (1.0 - 4.0 * (x - 1.5) * (x - 1.5))) : 0.0; };
    const ExperimentReport r = pitt_check({{"b", bump, 1.0, 2.0}}, 0.25);
    EXPECT_TRUE(r.pass);
    EXPECT_THROW(pitt_check({{"b", bump, 1.0, 2.0}}, 0.5), PreconditionError);
    EXPECT_THROW(pitt_check({}, 0.1), ArgumentError);
}

TEST(Convergence, GaussianDataConverges) {
    const SphericalEvaluator ev = calibrate_inversion(SphericalEvaluator(real_hyperbolic_3()));
    const SphericalTable table(ev, SpectralGrid::for_radius(0.0, 16.0, 12.0), RadialGrid::for_frequency(0.0, 12.0, 16.0));
    const Spectrum fh = sft(table, RadialProfile::sample(table.radial_grid(), calibration_profile));
    const ExperimentReport r = convergence_run(ev, Phase::power_law(0.5), 0.2, fh, {0.5, 0.1, 0.01, 0.001}, 1.0);
    EXPECT_TRUE(r.pass);
    // Smooth data: the difference is O(t).
    EXPECT_NEAR(*r.slope, 1.0, 0.05);
    EXPECT_THROW(convergence_run(ev, Phase::power_law(0.5), 0.2, fh, {0.1, 0.5}, 1.0), PreconditionError);
}

TEST(Reports, JsonFieldOrderAndNulls) {
    ExperimentReport r;
    r.experiment = "x";
    r.criterion = "c";
    const std::string s = r.to_json().dump();
    EXPECT_EQ(s,
              "{\"experiment\":\"x\",\"inputs\":{},\"per_point\":[],\"slope\":null,\"slope_residual\":null,"
              "\"sup_ratio\":null,\"checks\":{},\"pass\":false,\"criterion\":\"c\",\"runtime_seconds\":null}");
}

TEST(Counterexample, SupportEdgesAndNormOracle) {
    const CounterexampleSpec spec(real_hyperbolic_3(), 0.5, 16, 0.1, 0.1);
    const auto [lo, hi] = spec.support_window();
    EXPECT_EQ(counterexample_value(spec, lo), 0.0);
    EXPECT_EQ(counterexample_value(spec, hi), 0.0);
    // On H^3 |f_N|^2 |c|^-2 = eta^2 / N, so ||f_N||^2_{H^beta} = (1/N) int eta^2 (lambda^2 + 1)^beta.
    const BumpFunction eta = BumpFunction::eta();
    const auto integrand = [&](double l) {
        const double e = eta(-std::pow(16.0, -0.75) * l + std::pow(16.0, 0.25));
        return e * e * std::pow(l * l + 1.0, 0.1) / 16.0;
    };
    const double want = std::sqrt(boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 15, 1e-14));
    const double got = sobolev_norm(spec.space, build_counterexample(spec), SobolevKind::inhomogeneous(0.1));
    EXPECT_NEAR(got, want, 1e-8);
}

TEST(Sharpness, RatioGrowsBelowThresholdOnly) {
    const SphericalEvaluator ev(real_hyperbolic_3());
    const std::vector<int> ns{16, 32, 64, 128, 256};
    const ExperimentReport below = sharpness_run(ev, 0.5, 0.1, ns, 0.1);
    const ExperimentReport above = sharpness_run(ev, 0.5, 0.175, ns, 0.1);
    EXPECT_GT(below.checks["ratio_slope"].get<double>(), 0.0);
    EXPECT_LT(above.checks["ratio_slope"].get<double>(), below.checks["ratio_slope"].get<double>());
    EXPECT_NEAR(*above.slope, 0.175 - 0.125, 0.05);
}

TEST(Oscillatory, StabilizesInN) {
    for (double x : {0.3, 3.0}) {
        const double a = std::abs(oscillatory_integral(x, 1.0, 256.0, 0.5, 0.2));
        const double b = std::abs(oscillatory_integral(x, 1.0, 512.0, 0.5, 0.2));
        EXPECT_NEAR(a / b, 1.0, 1e-3) << "x " << x;
    }
}

TEST(Pitt, UnweightedRatioIndependentOfFunction) {
    const auto wide = [](double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; };
    const auto shifted = [](double x) { return std::abs(x - 3.0) < 0.5 ? std::exp(-1.0 / (1.0 - 4.0 * (x - 3.0) * (x - 3.0))) : 0.0; };
    const ExperimentReport r = pitt_check({{"wide", wide, -1.0, 1.0}, {"shifted", shifted, 2.5, 3.5}}, 0.0);
    EXPECT_NEAR(r.per_point[0]["ratio"].get<double>(), r.per_point[1]["ratio"].get<double>(), 1e-6);
}

TEST(Pitt, SpikyFamilyNearCriticalWeight) {
    std::vector<PittFunction> fns;
    for (double w : {0.4, 0.2, 0.1, 0.05}) {
        fns.push_back({"w", [w](double x) {
                           const double y = (x - 1.5) / w;
                           return std::abs(y) < 1.0 ? std::exp(-1.0 / (1.0 - y * y)) : 0.0;
                       },
                       1.5 - w, 1.5 + w});
    }
    const ExperimentReport r = pitt_check(fns, 0.49);
    EXPECT_TRUE(r.pass);
}

TEST(Convergence, ConstantTimesAndZeroData) {
    const SphericalEvaluator ev = calibrate_inversion(SphericalEvaluator(real_hyperbolic_3()));
    const SphericalTable table(ev, SpectralGrid::for_radius(0.0, 16.0, 12.0), RadialGrid::for_frequency(0.0, 12.0, 16.0));
    const Spectrum fh = sft(table, RadialProfile::sample(table.radial_grid(), calibration_profile));
    const ExperimentReport flat = convergence_run(ev, Phase::power_law(0.5), 0.2, fh, {0.1, 0.1, 0.1}, 1.0);
    EXPECT_EQ(flat.per_point[0]["sup_difference"], flat.per_point[2]["sup_difference"]);
    const ExperimentReport zero =
        convergence_run(ev, Phase::power_law(0.5), 0.2, Spectrum::zero(fh.grid), {0.5, 0.1}, 1.0);
    for (const auto& p : zero.per_point) EXPECT_EQ(p["sup_difference"].get<double>(), 0.0);
}
