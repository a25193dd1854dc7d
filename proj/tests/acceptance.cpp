// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drh.hpp"

using namespace drh;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int k, const char* what, double time_limit, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time_note;
    time_note.precision(3);
    time_note << secs << " s";
    if (time_limit > 0.0 && secs > time_limit) {
        o.pass = false;
        time_note << " exceeds " << time_limit << " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s | %s (%s)\n", o.pass ? "PASS" : "FAIL", k, what, o.detail.c_str(),
                time_note.str().c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

std::vector<double> uniform_open(double lo, double hi, int count) {
    // (lo, hi], count points
    std::vector<double> s(count);
    for (int i = 0; i < count; ++i) s[i] = lo + (hi - lo) * (i + 1) / count;
    return s;
}

std::vector<double> log_points(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int k = 0; k < count; ++k) g[k] = lo * std::pow(hi / lo, double(k) / (count - 1));
    return g;
}

SphericalTable standard_table(const SphericalEvaluator& ev) {
    return SphericalTable(ev, SpectralGrid::for_radius(0.0, 16.0, 12.0), RadialGrid::for_frequency(0.0, 12.0, 16.0));
}

const std::vector<int> kSharpN{16, 32, 64, 128, 256};
const std::vector<double> kOscN{16, 32, 64, 128, 256, 512};
const std::vector<double> kEps{-1.0, 0.0, 1.0};

ExperimentReport run_sharpness(int threads = 1) {
    SharpnessOptions opt;
    opt.threads = threads;
    return sharpness_run(SphericalEvaluator(real_hyperbolic_3()), 0.5, 0.1, kSharpN, 0.1, opt);
}

ExperimentReport run_boundedness() {
    return boundedness_run(SphericalEvaluator(real_hyperbolic_3()), 0.5, 0.175, kSharpN, 1.0);
}

ExperimentReport run_oscillatory() { return oscillatory_bound_check(0.5, 0.2, kOscN, kEps, log_points(0.01, 100.0, 41)); }

ExperimentReport run_pitt() {
    std::vector<PittFunction> fns;
    for (double w : {0.8, 0.4, 0.2, 0.1}) {
        fns.push_back({fmt("width %g", w),
                       [w](double x) {
                           const double y = (x - 1.5) / w;
                           return std::abs(y) < 1.0 ? std::exp(-1.0 / (1.0 - y * y)) : 0.0;
                       },
                       1.5 - w, 1.5 + w});
    }
    return pitt_check(fns, 0.25);
}

// Largest |phi - main| / envelope over the near grid (0, 2] and the far grid (2, 10].
struct EnvelopeFit {
    double near;
    double far;
    double near_abs;
    double far_abs;
};

EnvelopeFit envelope_fit(const SpaceParams& space, int ns, int nl) {
    const SphericalEvaluator ev(space);
    const std::vector<double> near_s = uniform_open(0.0, 2.0, ns);
    const std::vector<double> far_s = uniform_open(2.0, 10.0, ns);
    EnvelopeFit r{0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < nl; ++j) {
        const double l = 0.5 * std::pow(100.0, double(j) / (nl - 1));
        const std::vector<double> pn = phi(ev, l, near_s);
        const std::vector<double> pf = phi(ev, l, far_s);
        for (int i = 0; i < ns; ++i) {
            const double dn = std::abs(pn[i] - phi_near_main(space, l, near_s[i]));
            const double df = std::abs(pf[i] - phi_far_main(space, l, far_s[i]));
            r.near = std::max(r.near, dn / near_field_envelope(space, l, near_s[i]));
            r.far = std::max(r.far, df / far_field_envelope(space, l, far_s[i]));
            r.near_abs = std::max(r.near_abs, dn);
            r.far_abs = std::max(r.far_abs, df);
        }
    }
    return r;
}

}  // namespace

int main() {
    ExperimentReport sharp;
    ExperimentReport bounded;
    ExperimentReport osc;

    criterion(1, "H^3 spherical function against sin(lambda s)/(lambda sinh s)", 10.0, [] {
        const SphericalEvaluator ev(real_hyperbolic_3());
        const std::vector<double> s = uniform_open(0.0, 6.0, 600);
        double worst = 0.0;
        for (double l : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const std::vector<double> v = phi(ev, l, s);
            for (std::size_t i = 0; i < s.size(); ++i) {
                worst = std::max(worst, std::abs(v[i] - std::sin(l * s[i]) / (l * std::sinh(s[i]))));
            }
        }
        return Outcome{worst <= 1e-8, fmt("max abs error %.3e, tolerance 1e-8", worst)};
    });

    criterion(2, "H^3 c-function against 1/(i lambda)", 1.0, [] {
        double worst = 0.0;
        for (double l : log_points(0.1, 100.0, 2000)) {
            worst = std::max(worst, std::abs(c_function(real_hyperbolic_3(), l) - 1.0 / std::complex<double>(0.0, l)));
        }
        return Outcome{worst <= 1e-10, fmt("max abs error %.3e, tolerance 1e-10", worst)};
    });

    criterion(3, "transform round trip and Plancherel identity", 120.0, [] {
        const std::vector<std::function<double(double)>> profiles = {
            [](double s) { return std::exp(-s * s); },
            [](double s) { return std::exp(-0.5 * s * s); },
            [](double s) { return s * s * std::exp(-s * s); },
        };
        double worst_rt = 0.0;
        double worst_norm = 0.0;
        for (const SpaceParams& space : {SpaceParams(0, 2), SpaceParams(2, 1), SpaceParams(4, 3)}) {
            const SphericalEvaluator ev = calibrate_inversion(SphericalEvaluator(space));
            const SphericalTable table = standard_table(ev);
            const double c = *ev.space().inversion_constant();
            for (const auto& p : profiles) {
                const RadialProfile f = RadialProfile::sample(table.radial_grid(), p);
                const Spectrum fh = sft(table, f);
                const RadialProfile g = isft(table, fh);
                double err = 0.0;
                double scale = 0.0;
                for (std::size_t i = 0; i < f.values.size(); ++i) {
                    err = std::max(err, std::abs(g.values[i] - f.values[i]));
                    scale = std::max(scale, std::abs(f.values[i]));
                }
                worst_rt = std::max(worst_rt, err / scale);
                const double ratio = std::sqrt(c) * spectral_l2_norm(space, fh) / spatial_l2_norm(space, f);
                worst_norm = std::max(worst_norm, std::abs(ratio - 1.0));
            }
        }
        return Outcome{worst_rt <= 1e-6 && worst_norm <= 1e-6,
                       fmt("round trip rel %.3e, norm rel %.3e, tolerance 1e-6", worst_rt, worst_norm)};
    });

    criterion(4, "near and far envelope ratios stable under resolution", 300.0, [] {
        bool ok = true;
        std::string detail;
        for (const SpaceParams& space : {SpaceParams(2, 1), SpaceParams(4, 3)}) {
            const EnvelopeFit lo = envelope_fit(space, 200, 40);
            const EnvelopeFit hi = envelope_fit(space, 400, 80);
            const double dn = std::abs(hi.near - lo.near) / lo.near;
            const double df = std::abs(hi.far - lo.far) / lo.far;
            ok = ok && std::isfinite(hi.near) && std::isfinite(hi.far) && dn < 0.1 && df < 0.1;
            detail += space.label() + fmt(" near %.3g drift %.3g, far %.3g drift %.3g; ", hi.near, dn, hi.far, df);
        }
        // H^3: both main terms are exact.
        const EnvelopeFit h3 = envelope_fit(real_hyperbolic_3(), 200, 40);
        ok = ok && h3.near_abs < 1e-8 && h3.far_abs < 1e-8;
        detail += fmt("H^3 abs dev near %.2e far %.2e; drift tolerance 0.1", h3.near_abs, h3.far_abs);
        return Outcome{ok, detail};
    });

    criterion(5, "sharpness below the threshold (a = 0.5, beta = 0.1)", 0.0, [&sharp] {
        sharp = run_sharpness();
        const double mn = sharp.checks["t_norm_min"].get<double>();
        const double med = sharp.checks["t_norm_median"].get<double>();
        const bool ok = std::abs(*sharp.slope + 0.025) <= 0.05 && mn >= 0.5 * med && sharp.pass;
        return Outcome{ok, fmt("slope %.5f (target -0.025 +- 0.05), min %.4g, median %.4g", *sharp.slope, mn, med)};
    });

    criterion(6, "maximal ratio bounded above the threshold (beta = 0.175)", 0.0, [&bounded] {
        bounded = run_boundedness();
        const double drift = bounded.checks["refinement_drift"].get<double>();
        const bool trend = bounded.checks["trend_non_increasing"].get<bool>();
        const bool ok = drift < 0.02 && trend && bounded.pass;
        return Outcome{ok, fmt("sup ratio %.4g, drift %.3g (< 0.02), trend non-increasing %g", *bounded.sup_ratio, drift,
                               trend ? 1.0 : 0.0)};
    });

    criterion(7, "oscillatory integral bound uniform in N and epsilon", 0.0, [&osc] {
        osc = run_oscillatory();
        const double change = osc.checks["relative_change"].get<double>();
        return Outcome{change < 0.05 && osc.pass,
                       fmt("sup ratio %.4g, relative change %.3g (< 0.05)", *osc.sup_ratio, change)};
    });

    criterion(8, "Euclidean dilation identity", 0.0, [] {
        const int n = 3;
        const double t = 0.6;
        const auto f = [](double r) { return std::exp(-r * r); };
        const RadialGrid rg = RadialGrid::for_frequency(0.0, 10.0, 24.0);
        const SpectralGrid sg = SpectralGrid::for_radius(0.0, 24.0, 10.0);
        const Spectrum fh = euclid_radial_ft(n, RadialProfile::sample(rg, f), sg);
        const std::vector<double> xs = {0.1, 0.5, 1.0, 2.0, 3.5};
        const std::vector<double> ws(xs.size(), 1.0);
        double worst = 0.0;
        for (double R : {2.0, 5.0}) {
            const RadialGrid rg_r = RadialGrid::for_frequency(0.0, 10.0 / R, 24.0 * R);
            const SpectralGrid sg_r = SpectralGrid::for_radius(0.0, 24.0 * R, 10.0 / R);
            const Spectrum fh_r = euclid_radial_ft(n, RadialProfile::sample(rg_r, [&](double y) { return f(R * y); }), sg_r);
            std::vector<double> ys(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = xs[i] / R;
            for (double a : {0.3, 0.5, 0.8}) {
                const RadialProfile lhs = propagate_euclid(n, fh, a, t, RadialGrid(xs, ws, 0.0, 4.0));
                const RadialProfile rhs =
                    propagate_euclid(n, fh_r, a, t / std::pow(R, a), RadialGrid(ys, ws, 0.0, 4.0 / R));
                for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(lhs.values[i] - rhs.values[i]));
            }
        }
        return Outcome{worst <= 1e-8, fmt("max abs error %.3e, tolerance 1e-8", worst)};
    });

    criterion(9, "invariant suite", 0.0, [] {
        std::string failed;
        // |phi| <= 1 and evenness in lambda.
        const std::vector<double> s = uniform_open(0.0, 8.0, 80);
        for (const SpaceParams& space : {SpaceParams(0, 1), SpaceParams(2, 1), SpaceParams(4, 3)}) {
            const SphericalEvaluator ev(space);
            for (double l : {0.0, 0.3, 1.0, 5.0, 20.0}) {
                const std::vector<double> v = phi(ev, l, s);
                for (double x : v) {
                    if (std::abs(x) > 1.0 + 1e-9) failed += " bound";
                }
                if (v != phi(ev, -l, s)) failed += " evenness";
            }
        }
        // Unitary evolution and Sobolev ordering.
        const SphericalEvaluator ev = calibrate_inversion(SphericalEvaluator(SpaceParams(2, 1)));
        const SphericalTable table = standard_table(ev);
        const Spectrum fh = sft(table, RadialProfile::sample(table.radial_grid(), calibration_profile));
        const double n0 = spectral_l2_norm(ev.space(), fh);
        for (double t : {0.1, 0.5, 0.9}) {
            if (std::abs(spectral_l2_norm(ev.space(), evolve(fh, Phase::power_law(0.5), t)) / n0 - 1.0) > 1e-14) {
                failed += " unitary";
            }
        }
        for (double b : {0.1, 0.5, 1.0}) {
            if (sobolev_norm(ev.space(), fh, SobolevKind::homogeneous(b)) >
                sobolev_norm(ev.space(), fh, SobolevKind::inhomogeneous(b))) {
                failed += " sobolev";
            }
        }
        // Walther exponent ordering on random admissible (a, beta).
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < 1000; ++k) {
            const double a = 0.01 + 0.98 * unit(rng);
            const double lo = 0.25 * a;
            const double hi = std::min(0.5 * a, 0.25);
            const double beta = lo + (hi - lo) * (0.001 + 0.998 * unit(rng));
            const WaltherConstants w = walther_constants(a, beta);
            if (!(0.5 < w.c1 && w.c1 < w.c2 && w.c2 < 1.0)) {
                failed += " walther";
                break;
            }
        }
        // Schwartz multiplier round trip on a spectral bump supported in [1, 2].
        const SpectralGrid bg = SpectralGrid::gauss_legendre(1.0, 2.0, 2);
        const BumpFunction eta = BumpFunction::eta();
        std::vector<std::complex<double>> bv(bg.size());
        for (std::size_t j = 0; j < bg.size(); ++j) bv[j] = eta(2.0 * (bg.lambdas()[j] - 1.5));
        const Spectrum bump(bg, bv);
        const Spectrum back = schwartz_multiplier(
            ev.space(), schwartz_multiplier(ev.space(), bump, Direction::forward), Direction::inverse);
        for (std::size_t j = 0; j < bv.size(); ++j) {
            if (std::abs(back.values[j] - bv[j]) > 1e-14) {
                failed += " schwartz";
                break;
            }
        }
        return Outcome{failed.empty(), failed.empty() ? "all invariants hold" : "violated:" + failed};
    });

    criterion(10, "reruns reproduce experiment dumps byte for byte", 0.0, [&] {
        bool ok = run_sharpness().to_json().dump() == sharp.to_json().dump();
        ok = ok && run_sharpness(3).to_json().dump() == sharp.to_json().dump();
        ok = ok && run_boundedness().to_json().dump() == bounded.to_json().dump();
        ok = ok && run_oscillatory().to_json().dump() == osc.to_json().dump();
        ok = ok && run_pitt().to_json().dump() == run_pitt().to_json().dump();
        return Outcome{ok, "sharpness (1 and 3 threads), boundedness, oscillatory, pitt"};
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
