#pragma once

// Command-line front end. run() is the whole program minus process plumbing, so tests can
// drive it in-process.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drh.hpp"
#include "json.hpp"

namespace drh::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { pass = 0, criterion_fail = 1, config_error = 2, numerical_error = 3 };

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::pair<std::string, std::string>>& subcommands() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"eval-phi", "spherical function phi_lambda(s) with near/far main terms"},
        {"c-function", "c-function, Plancherel density and its polynomial model"},
        {"transform", "spherical Fourier transform of a radial profile"},
        {"propagate", "radial solution of the fractional Schrodinger flow at time t"},
        {"maximal", "maximal-function ratios over a Sobolev family"},
        {"sharpness", "counterexample scaling below the threshold"},
        {"oscillatory", "uniform bound on the one-dimensional oscillatory integral"},
        {"convergence", "pointwise convergence as t -> 0"},
        {"pitt", "weighted Fourier inequality ratios"},
    };
    return table;
}

/// Defaults for every field; a config file is merged on top, then flags.
inline Json default_config(const std::string& command) {
    Json c;
    c["command"] = command;
    c["space"] = {{"m_v", 0}, {"m_z", 2}};
    c["ode_tolerance"] = 1e-10;
    c["threads"] = 1;
    c["format"] = "csv";
    c["out"] = "drh_out";
    c["grids"] = {{"s_max", 12.0}, {"lambda_max", 16.0}, {"s_points", 121}};
    c["phase"] = {{"form", "power_law"}, {"a", 0.5}};
    c["lambda"] = {1.0};
    c["t"] = 0.5;
    c["profile"] = "gaussian";
    c["roundtrip"] = false;
    c["tolerance"] = 1e-6;
    double beta = 0.1;
    if (command == "maximal" || command == "convergence") beta = 0.175;
    if (command == "oscillatory") beta = 0.2;
    Json e;
    e["N_list"] = {16, 32, 64, 128, 256};
    if (command == "oscillatory") e["N_list"] = {16, 32, 64, 128, 256, 512};
    e["beta"] = beta;
    e["epsilon"] = 0.1;
    e["R"] = 1.0;
    e["t_grid"] = {{"count", 256}, {"lo", 1e-4}, {"hi", 1.0 - 1e-4}};
    e["refinements"] = 1;
    e["epsilon_list"] = {-1.0, 0.0, 1.0};
    e["x_grid"] = {{"lo", 0.01}, {"hi", 100.0}, {"count", 41}};
    e["alpha"] = 0.25;
    std::vector<double> ts;
    for (int k = 1; k <= 12; ++k) ts.push_back(std::ldexp(1.0, -k));
    e["t_sequence"] = ts;
    c["experiment"] = e;
    return c;
}

namespace detail {

inline const Json& field(const Json& c, const std::string& path) {
    const Json::json_pointer p(path);
    if (!c.contains(p)) throw ConfigError("missing config field " + path);
    return c.at(p);
}

inline double get_double(const Json& c, const std::string& path) {
    const Json& v = field(c, path);
    if (!v.is_number()) throw ConfigError("config field " + path + " must be a number");
    return v.get<double>();
}

inline int get_int(const Json& c, const std::string& path) {
    const Json& v = field(c, path);
    if (!v.is_number_integer()) throw ConfigError("config field " + path + " must be an integer");
    return v.get<int>();
}

inline std::string get_string(const Json& c, const std::string& path) {
    const Json& v = field(c, path);
    if (!v.is_string()) throw ConfigError("config field " + path + " must be a string");
    return v.get<std::string>();
}

inline bool get_bool(const Json& c, const std::string& path) {
    const Json& v = field(c, path);
    if (!v.is_boolean()) throw ConfigError("config field " + path + " must be a boolean");
    return v.get<bool>();
}

inline std::vector<double> get_doubles(const Json& c, const std::string& path) {
    const Json& v = field(c, path);
    if (!v.is_array()) throw ConfigError("config field " + path + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError("config field " + path + " must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

inline std::vector<int> get_ints(const Json& c, const std::string& path) {
    const Json& v = field(c, path);
    if (!v.is_array()) throw ConfigError("config field " + path + " must be an array of integers");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw ConfigError("config field " + path + " must be an array of integers");
        out.push_back(x.get<int>());
    }
    return out;
}

inline std::vector<double> parse_number_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(flag + ": cannot parse '" + item + "'");
        }
    }
    return out;
}

inline void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

inline SpaceParams space_of(const Json& c) {
    const int mv = get_int(c, "/space/m_v");
    const int mz = get_int(c, "/space/m_z");
    require(mv >= 0 && mv % 2 == 0, "space.m_v must be a non-negative even integer");
    require(mz >= 1, "space.m_z must be a positive integer");
    return SpaceParams(mv, mz);
}

inline SphericalEvaluator evaluator_of(const Json& c) {
    const double tol = get_double(c, "/ode_tolerance");
    require(tol > 0.0 && tol <= 1e-6, "ode_tolerance must lie in (0, 1e-6]");
    return SphericalEvaluator(space_of(c), tol);
}

inline Phase phase_of(const Json& c, const SpaceParams& space) {
    const double a = get_double(c, "/phase/a");
    require(a > 0.0 && a < 1.0, "phase.a must lie in (0, 1)");
    const std::string form = get_string(c, "/phase/form");
    if (form == "power_law") return Phase::power_law(a);
    if (form == "shifted_power_law") return Phase::shifted_power_law(a, space);
    throw ConfigError("phase.form must be power_law or shifted_power_law");
}

inline int threads_of(const Json& c) {
    const int t = get_int(c, "/threads");
    require(t >= 1, "threads must be >= 1");
    return t;
}

inline double (*profile_of(const Json& c))(double) {
    const std::string p = get_string(c, "/profile");
    if (p == "gaussian") return [](double s) { return std::exp(-s * s); };
    if (p == "wide_gaussian") return [](double s) { return std::exp(-0.5 * s * s); };
    if (p == "modulated_gaussian") return [](double s) { return std::exp(-s * s) * std::cos(2.0 * s); };
    throw ConfigError("profile must be gaussian, wide_gaussian or modulated_gaussian");
}

class Output {
  public:
    Output(const Json& config, std::ostream& log) : config_(config), log_(log) {
        dir_ = get_string(config, "/out");
        require(!dir_.empty(), "out must name a directory");
        std::filesystem::create_directories(dir_);
    }

    std::string config_line() const { return config_.dump(); }

    void write_text(const std::string& name, const std::string& body) {
        const std::filesystem::path p = std::filesystem::path(dir_) / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + p.string());
        f << body;
        log_ << "wrote " << p.string() << '\n';
    }

    void write_table(const std::string& stem, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows, const std::string& format) {
        if (format == "json") {
            Json j;
            j["config"] = config_;
            j["columns"] = header;
            j["rows"] = rows;
            write_text(stem + ".json", j.dump(1) + "\n");
        } else {
            std::ostringstream s;
            csv::write_table(s, header, rows, config_line());
            write_text(stem + ".csv", s.str());
        }
    }

    void write_report(const std::string& stem, ExperimentReport report, std::optional<double> runtime) {
        report.runtime_seconds = runtime;
        Json j = report.to_json();
        j["config"] = config_;
        write_text(stem + ".json", j.dump(1) + "\n");
    }

    void write_plot(const std::string& stem, const std::string& body) {
        write_text(stem + ".gp", "# config: " + config_line() + "\nset datafile separator ','\n" + body);
    }

  private:
    Json config_;
    std::ostream& log_;
    std::string dir_;
};

inline std::string format_of(const Json& c) {
    const std::string f = get_string(c, "/format");
    require(f == "csv" || f == "json", "format must be csv or json");
    return f;
}

// Subcommands. Each returns its exit code.

inline int cmd_eval_phi(const Json& c, Output& out, std::ostream& log) {
    const SphericalEvaluator ev = evaluator_of(c);
    const double s_max = get_double(c, "/grids/s_max");
    require(s_max > 0.0, "grids.s_max must be positive");
    const int points = get_int(c, "/grids/s_points");
    require(points >= 2, "grids.s_points must be >= 2");
    const std::vector<double> lambdas = get_doubles(c, "/lambda");
    require(!lambdas.empty(), "lambda must list at least one frequency");
    std::vector<double> s(points);
    for (int i = 0; i < points; ++i) s[i] = s_max * i / (points - 1);
    const SpaceParams& space = ev.space();
    const double r0 = ev.regime_radius();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> rows;
    for (double l : lambdas) {
        const std::vector<double> v = phi(ev, l, s);
        for (int i = 0; i < points; ++i) {
            const bool near = s[i] > 0.0 && s[i] <= r0;
            const bool far = s[i] > r0 && l != 0.0;
            rows.push_back({l, s[i], v[i], near ? phi_near_main(space, l, s[i], r0) : nan,
                            near ? near_field_envelope(space, l, s[i]) : nan,
                            far ? phi_far_main(space, l, s[i], r0) : nan, far ? far_field_envelope(space, l, s[i]) : nan});
        }
    }
    out.write_table("phi", {"lambda", "s", "phi", "near_main", "near_envelope", "far_main", "far_envelope"}, rows,
                    format_of(c));
    out.write_plot("phi", "set xlabel 's'\nset ylabel 'phi_lambda(s)'\n"
                          "plot 'phi.csv' every ::1 using 2:3 with lines title 'phi'\n");
    log << "eval-phi: " << lambdas.size() << " frequencies x " << points << " radii\n";
    return pass;
}

inline int cmd_c_function(const Json& c, Output& out, std::ostream& log) {
    const SpaceParams space = space_of(c);
    std::vector<std::vector<double>> rows;
    for (double l : get_doubles(c, "/lambda")) {
        require(l != 0.0, "lambda must be non-zero for the c-function");
        const auto v = c_function(space, l);
        rows.push_back({l, v.real(), v.imag(), plancherel_density(space, l), plancherel_model(space, l)});
    }
    out.write_table("c_function", {"lambda", "c_re", "c_im", "plancherel", "model"}, rows, format_of(c));
    log << "c-function: " << rows.size() << " frequencies\n";
    return pass;
}

struct TransformSetup {
    SphericalEvaluator evaluator;
    SphericalTable table;
    RadialProfile profile;
};

inline TransformSetup transform_setup(const Json& c) {
    const int threads = threads_of(c);
    const double s_max = get_double(c, "/grids/s_max");
    const double l_max = get_double(c, "/grids/lambda_max");
    require(s_max > 0.0, "grids.s_max must be positive");
    require(l_max > 0.0, "grids.lambda_max must be positive");
    auto f = profile_of(c);
    const SphericalEvaluator ev = calibrate_inversion(evaluator_of(c), threads);
    const RadialGrid rg = RadialGrid::for_frequency(0.0, s_max, l_max);
    const SpectralGrid sg = SpectralGrid::for_radius(0.0, l_max, s_max);
    SphericalTable table(ev, sg, rg, threads);
    RadialProfile profile = RadialProfile::sample(rg, f);
    return {ev, std::move(table), std::move(profile)};
}

inline int cmd_transform(const Json& c, Output& out, std::ostream& log) {
    const int threads = threads_of(c);
    const TransformSetup setup = transform_setup(c);
    const Spectrum fh = sft(setup.table, setup.profile, threads);
    const std::string format = format_of(c);
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < fh.values.size(); ++j) {
        rows.push_back({fh.grid.lambdas()[j], fh.values[j].real(), fh.values[j].imag(), fh.grid.weights()[j]});
    }
    out.write_table("spectrum", {"node", "value_re", "value_im", "weight"}, rows, format);
    if (!get_bool(c, "/roundtrip")) {
        log << "transform: " << fh.values.size() << " spectral nodes\n";
        return pass;
    }
    const RadialProfile back = isft(setup.table, fh, threads);
    double err = 0.0;
    double scale = 0.0;
    std::vector<std::vector<double>> prow;
    for (std::size_t i = 0; i < back.values.size(); ++i) {
        err = std::max(err, std::abs(back.values[i] - setup.profile.values[i]));
        scale = std::max(scale, std::abs(setup.profile.values[i]));
        prow.push_back({back.grid.radii()[i], setup.profile.values[i].real(), back.values[i].real()});
    }
    out.write_table("roundtrip", {"s", "f", "isft_sft_f"}, prow, format);
    const SpaceParams& space = setup.evaluator.space();
    const double spatial = spatial_l2_norm(space, setup.profile);
    const double spectral = std::sqrt(*space.inversion_constant()) * spectral_l2_norm(space, fh);
    const double tol = get_double(c, "/tolerance");
    const double rel = err / scale;
    const double plancherel = std::abs(spectral / spatial - 1.0);
    ExperimentReport r;
    r.experiment = "transform_roundtrip";
    r.inputs["space"] = space.label();
    r.checks["max_abs_error"] = err;
    r.checks["relative_error"] = rel;
    r.checks["plancherel_relative_error"] = plancherel;
    r.checks["tolerance"] = tol;
    r.pass = rel <= tol && plancherel <= tol;
    r.criterion = "transform: isft(sft(f)) = f and Plancherel equality within the tolerance";
    out.write_report("transform_report", r, std::nullopt);
    log << "transform round trip: max |isft(sft(f)) - f| = " << err << " (relative " << rel << ")\n";
    return r.pass ? pass : criterion_fail;
}

inline int cmd_propagate(const Json& c, Output& out, std::ostream& log) {
    const int threads = threads_of(c);
    const double t = get_double(c, "/t");
    require(std::isfinite(t), "t must be finite");
    const TransformSetup setup = transform_setup(c);
    const Phase phase = phase_of(c, setup.evaluator.space());
    const Spectrum fh = sft(setup.table, setup.profile, threads);
    const RadialProfile u = propagate(setup.table, fh, phase, t, threads);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        rows.push_back({u.grid.radii()[i], u.values[i].real(), u.values[i].imag(), std::abs(u.values[i])});
    }
    out.write_table("propagate", {"s", "u_re", "u_im", "u_abs"}, rows, format_of(c));
    out.write_plot("propagate", "set xlabel 's'\nset ylabel '|u(s,t)|'\n"
                                "plot 'propagate.csv' every ::1 using 1:4 with lines title '|u|'\n");
    log << "propagate: t = " << t << ", " << u.values.size() << " radii\n";
    return pass;
}

inline std::vector<int> n_list_of(const Json& c) {
    const std::vector<int> ns = get_ints(c, "/experiment/N_list");
    require(!ns.empty(), "experiment.N_list must not be empty");
    for (std::size_t k = 0; k < ns.size(); ++k) {
        require(ns[k] >= 2, "experiment.N_list entries must be >= 2");
        require(k == 0 || ns[k] > ns[k - 1], "experiment.N_list must ascend strictly");
    }
    return ns;
}

inline double beta_of(const Json& c) {
    const double b = get_double(c, "/experiment/beta");
    require(b >= 0.0, "experiment.beta must be >= 0");
    return b;
}

inline int cmd_sharpness(const Json& c, Output& out, std::ostream& log, bool timing) {
    const auto t0 = std::chrono::steady_clock::now();
    const double a = get_double(c, "/phase/a");
    require(a > 0.0 && a < 1.0, "phase.a must lie in (0, 1)");
    const double beta = beta_of(c);
    const std::vector<int> ns = n_list_of(c);
    require(ns.size() >= 2, "experiment.N_list needs at least two entries");
    const double eps = get_double(c, "/experiment/epsilon");
    require(eps > 0.0 && eps < 0.5, "experiment.epsilon must lie in (0, 1/2)");
    SharpnessOptions opt;
    opt.threads = threads_of(c);
    const ExperimentReport r = sharpness_run(evaluator_of(c), a, beta, ns, eps, opt);
    const auto t1 = std::chrono::steady_clock::now();
    out.write_report("sharpness", r,
                     timing ? std::optional<double>(std::chrono::duration<double>(t1 - t0).count()) : std::nullopt);
    std::vector<std::vector<double>> rows;
    for (const auto& p : r.per_point) {
        rows.push_back({p["N"].get<double>(), p["sobolev_norm"].get<double>(), p["t_norm"].get<double>(),
                        p["ratio"].get<double>()});
    }
    out.write_table("sharpness", {"N", "sobolev_norm", "t_norm", "ratio"}, rows, "csv");
    std::ostringstream gp;
    gp << "set logscale xy\nset xlabel 'N'\nset ylabel 'norm'\n"
       << "ref(x) = " << csv::format_double(rows.front()[1]) << " * (x / " << csv::format_double(rows.front()[0])
       << ")**(" << csv::format_double(beta - 0.25 * a) << ")\n"
       << "plot 'sharpness.csv' every ::1 using 1:2 with linespoints title '||f_N||_{H^beta}', \\\n"
       << "     ref(x) title 'slope beta - a/4', \\\n"
       << "     'sharpness.csv' every ::1 using 1:3 with linespoints title '||T f_N||'\n";
    out.write_plot("sharpness", gp.str());
    log << "sharpness: slope " << *r.slope << " (target " << beta - 0.25 * a << "), "
        << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? pass : criterion_fail;
}

inline int cmd_maximal(const Json& c, Output& out, std::ostream& log, bool timing) {
    const auto t0 = std::chrono::steady_clock::now();
    const double a = get_double(c, "/phase/a");
    require(a > 0.0 && a < 1.0, "phase.a must lie in (0, 1)");
    const double beta = beta_of(c);
    require(beta > 0.25 * a, "experiment.beta must exceed a/4 for the maximal ratio run");
    const std::vector<int> ns = n_list_of(c);
    const double R = get_double(c, "/experiment/R");
    require(R > 0.0, "experiment.R must be positive");
    MaximalOptions opt;
    opt.threads = threads_of(c);
    opt.base_times = get_int(c, "/experiment/t_grid/count");
    require(opt.base_times >= 1, "experiment.t_grid.count must be >= 1");
    opt.time_lo = get_double(c, "/experiment/t_grid/lo");
    opt.time_hi = get_double(c, "/experiment/t_grid/hi");
    require(opt.time_lo > 0.0 && opt.time_hi < 1.0 && opt.time_lo <= opt.time_hi,
            "experiment.t_grid needs 0 < lo <= hi < 1");
    opt.refinements = get_int(c, "/experiment/refinements");
    require(opt.refinements >= 1, "experiment.refinements must be >= 1");
    const SphericalEvaluator ev = ensure_calibrated(evaluator_of(c), opt.threads);
    std::vector<Spectrum> family;
    for (int N : ns) {
        const CounterexampleSpec spec(ev.space(), a, N, 0.1, beta);
        family.push_back(build_counterexample(spec, counterexample_grid(spec, R)));
        opt.keys.push_back(N);
    }
    ExperimentReport r = maximal_ratio_run(ev, phase_of(c, ev.space()), beta, family, R, opt);
    r.inputs["N_list"] = ns;
    const auto t1 = std::chrono::steady_clock::now();
    out.write_report("maximal", r,
                     timing ? std::optional<double>(std::chrono::duration<double>(t1 - t0).count()) : std::nullopt);
    std::vector<std::string> header{"N", "sobolev_norm"};
    for (int k = 0; k <= opt.refinements; ++k) header.push_back("maximal_norm_level" + std::to_string(k));
    std::vector<std::vector<double>> rows;
    for (const auto& p : r.per_point) {
        std::vector<double> row{p["key"].get<double>(), p["sobolev_norm"].get<double>()};
        if (!p.contains("maximal_norms")) continue;
        for (const auto& v : p["maximal_norms"]) row.push_back(v.get<double>());
        rows.push_back(row);
    }
    out.write_table("maximal", header, rows, "csv");
    out.write_plot("maximal", "set logscale x\nset xlabel 'N'\nset ylabel '||S^* f_N|| / ||f_N||_{H^beta}'\n"
                              "plot 'maximal.csv' every ::1 using 1:($" +
                                  std::to_string(header.size()) + "/$2) with linespoints title 'ratio'\n");
    log << "maximal: sup ratio " << *r.sup_ratio << ", drift " << r.checks["refinement_drift"].get<double>() << ", "
        << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? pass : criterion_fail;
}

inline int cmd_oscillatory(const Json& c, Output& out, std::ostream& log, bool timing) {
    const auto t0 = std::chrono::steady_clock::now();
    const double a = get_double(c, "/phase/a");
    const double beta = beta_of(c);
    require(a > 0.0 && a < 1.0, "phase.a must lie in (0, 1)");
    require(beta > 0.25 * a && beta < std::min(0.5 * a, 0.25), "experiment.beta must lie in (a/4, min(a/2, 1/4))");
    std::vector<double> ns;
    for (int n : n_list_of(c)) ns.push_back(n);
    require(ns.size() >= 3, "experiment.N_list needs at least three entries");
    const std::vector<double> eps = get_doubles(c, "/experiment/epsilon_list");
    require(!eps.empty(), "experiment.epsilon_list must not be empty");
    const double lo = get_double(c, "/experiment/x_grid/lo");
    const double hi = get_double(c, "/experiment/x_grid/hi");
    const int count = get_int(c, "/experiment/x_grid/count");
    require(lo > 0.0 && hi >= lo && count >= 1, "experiment.x_grid needs 0 < lo <= hi and count >= 1");
    std::vector<double> xs(count);
    for (int k = 0; k < count; ++k) xs[k] = count == 1 ? lo : lo * std::pow(hi / lo, double(k) / (count - 1));
    const ExperimentReport r = oscillatory_bound_check(a, beta, ns, eps, xs, threads_of(c));
    const auto t1 = std::chrono::steady_clock::now();
    out.write_report("oscillatory", r,
                     timing ? std::optional<double>(std::chrono::duration<double>(t1 - t0).count()) : std::nullopt);
    // sup over x per (eps, N)
    std::vector<std::vector<double>> rows;
    for (double e : eps) {
        for (double n : ns) {
            double sup = 0.0;
            for (const auto& p : r.per_point) {
                if (p["epsilon"].get<double>() == e && p["N"].get<double>() == n) sup = std::max(sup, p["ratio"].get<double>());
            }
            rows.push_back({e, n, sup});
        }
    }
    out.write_table("oscillatory", {"epsilon", "N", "sup_ratio"}, rows, "csv");
    out.write_plot("oscillatory", "set logscale x\nset xlabel 'N'\nset ylabel 'sup_x |I| / (|x|^{-c1}+|x|^{-c2})'\n"
                                  "plot 'oscillatory.csv' every ::1 using 2:3:1 with points palette title 'sup ratio'\n");
    log << "oscillatory: sup ratio " << *r.sup_ratio << ", change " << r.checks["relative_change"].get<double>() << ", "
        << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? pass : criterion_fail;
}

inline int cmd_convergence(const Json& c, Output& out, std::ostream& log, bool timing) {
    const auto t0 = std::chrono::steady_clock::now();
    const int threads = threads_of(c);
    const double R = get_double(c, "/experiment/R");
    require(R > 0.0, "experiment.R must be positive");
    const std::vector<double> ts = get_doubles(c, "/experiment/t_sequence");
    require(!ts.empty(), "experiment.t_sequence must not be empty");
    for (std::size_t k = 0; k < ts.size(); ++k) {
        require(ts[k] > 0.0 && ts[k] < 1.0, "experiment.t_sequence entries must lie in (0, 1)");
        require(k == 0 || ts[k] <= ts[k - 1], "experiment.t_sequence must not increase");
    }
    const TransformSetup setup = transform_setup(c);
    const Spectrum fh = sft(setup.table, setup.profile, threads);
    const ExperimentReport r =
        convergence_run(setup.evaluator, phase_of(c, setup.evaluator.space()), beta_of(c), fh, ts, R, threads);
    const auto t1 = std::chrono::steady_clock::now();
    out.write_report("convergence", r,
                     timing ? std::optional<double>(std::chrono::duration<double>(t1 - t0).count()) : std::nullopt);
    std::vector<std::vector<double>> rows;
    for (const auto& p : r.per_point) rows.push_back({p["t"].get<double>(), p["sup_difference"].get<double>()});
    out.write_table("convergence", {"t", "sup_difference"}, rows, "csv");
    out.write_plot("convergence", "set logscale xy\nset xlabel 't'\nset ylabel 'sup |u(t) - f|'\n"
                                  "plot 'convergence.csv' every ::1 using 1:2 with linespoints title 'difference'\n");
    log << "convergence: " << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? pass : criterion_fail;
}

/// Smooth bump supported in (center - width, center + width).
inline PittFunction pitt_bump(const std::string& label, double center, double width) {
    return {label, [center, width](double x) {
                const double y = (x - center) / width;
                return std::abs(y) < 1.0 ? std::exp(-1.0 / (1.0 - y * y)) : 0.0;
            },
            center - width, center + width};
}

inline int cmd_pitt(const Json& c, Output& out, std::ostream& log, bool timing) {
    const auto t0 = std::chrono::steady_clock::now();
    const double alpha = get_double(c, "/experiment/alpha");
    require(alpha >= 0.0 && alpha < 0.5, "experiment.alpha must lie in [0, 1/2)");
    std::vector<PittFunction> fns;
    for (double w : {0.5, 0.25, 0.125, 0.0625}) fns.push_back(pitt_bump("bump_width_" + csv::format_double(w), 1.5, w));
    const ExperimentReport r = pitt_check(fns, alpha, threads_of(c));
    const auto t1 = std::chrono::steady_clock::now();
    out.write_report("pitt", r,
                     timing ? std::optional<double>(std::chrono::duration<double>(t1 - t0).count()) : std::nullopt);
    std::vector<std::vector<double>> rows;
    double w = 0.5;
    for (const auto& p : r.per_point) {
        rows.push_back({w, p["ratio"].get<double>()});
        w *= 0.5;
    }
    out.write_table("pitt", {"width", "ratio"}, rows, "csv");
    log << "pitt: sup ratio " << *r.sup_ratio << ", " << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? pass : criterion_fail;
}

}  // namespace detail

/// Runs one command; args exclude the program name. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
    CLI::App app{"Radial harmonic analysis on Damek-Ricci spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::string format;
    std::string space;
    std::string n_list;
    std::string lambdas;
    int threads = 0;
    double a = 0.0;
    double beta = 0.0;
    double epsilon = 0.0;
    double t = 0.0;
    double s_max = 0.0;
    double lambda_max = 0.0;
    double ode_tol = 0.0;
    int refine = 0;
    bool roundtrip = false;
    bool timing = false;
    auto* o_config = app.add_option("--config", config_path, "JSON config file");
    auto* o_out = app.add_option("--out", out_dir, "output directory");
    auto* o_threads = app.add_option("--threads", threads, "worker cap");
    auto* o_format = app.add_option("--format", format, "csv or json");
    auto* o_space = app.add_option("--space", space, "MV,MZ");
    auto* o_n = app.add_option("--N", n_list, "comma-separated N list");
    auto* o_lambda = app.add_option("--lambda", lambdas, "comma-separated frequencies");
    auto* o_a = app.add_option("--a", a, "phase degree");
    auto* o_beta = app.add_option("--beta", beta, "Sobolev index");
    auto* o_eps = app.add_option("--epsilon", epsilon, "annulus parameter");
    auto* o_t = app.add_option("--t", t, "propagation time");
    auto* o_smax = app.add_option("--s-max", s_max, "radial truncation");
    auto* o_lmax = app.add_option("--lambda-max", lambda_max, "spectral truncation");
    auto* o_tol = app.add_option("--ode-tolerance", ode_tol, "ODE relative tolerance");
    auto* o_refine = app.add_option("--refine", refine, "t-grid doublings (maximal)");
    app.add_flag("--roundtrip", roundtrip, "transform: check isft(sft(f)) = f");
    app.add_flag("--timing", timing, "fill runtime_seconds in reports");
    for (const auto& [name, about] : subcommands()) app.add_subcommand(name, about)->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        log << app.help();
        return pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Json config = default_config(command);
        if (*o_config) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot open config file " + config_path);
            Json file;
            try {
                file = Json::parse(f);
            } catch (const Json::parse_error& e) {
                throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
            }
            if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
            file.erase("command");
            config.merge_patch(file);
        }
        if (*o_out) config["out"] = out_dir;
        if (*o_threads) config["threads"] = threads;
        if (*o_format) config["format"] = format;
        if (*o_space) {
            const auto v = detail::parse_number_list(space, "--space");
            detail::require(v.size() == 2 && v[0] == std::floor(v[0]) && v[1] == std::floor(v[1]),
                            "--space expects two integers MV,MZ");
            config["space"] = {{"m_v", static_cast<int>(v[0])}, {"m_z", static_cast<int>(v[1])}};
        }
        if (*o_n) {
            std::vector<int> ns;
            if (!n_list.empty()) {
                for (double x : detail::parse_number_list(n_list, "--N")) {
                    detail::require(x == std::floor(x), "--N expects integers");
                    ns.push_back(static_cast<int>(x));
                }
            }
            config["experiment"]["N_list"] = ns;
        }
        if (*o_lambda) config["lambda"] = detail::parse_number_list(lambdas, "--lambda");
        if (*o_a) config["phase"]["a"] = a;
        if (*o_beta) config["experiment"]["beta"] = beta;
        if (*o_eps) config["experiment"]["epsilon"] = epsilon;
        if (*o_t) config["t"] = t;
        if (*o_smax) config["grids"]["s_max"] = s_max;
        if (*o_lmax) config["grids"]["lambda_max"] = lambda_max;
        if (*o_tol) config["ode_tolerance"] = ode_tol;
        if (*o_refine) config["experiment"]["refinements"] = refine;
        if (roundtrip) config["roundtrip"] = true;

        detail::space_of(config);
        detail::threads_of(config);
        detail::format_of(config);
        detail::Output out(config, log);
        if (command == "eval-phi") return detail::cmd_eval_phi(config, out, log);
        if (command == "c-function") return detail::cmd_c_function(config, out, log);
        if (command == "transform") return detail::cmd_transform(config, out, log);
        if (command == "propagate") return detail::cmd_propagate(config, out, log);
        if (command == "maximal") return detail::cmd_maximal(config, out, log, timing);
        if (command == "sharpness") return detail::cmd_sharpness(config, out, log, timing);
        if (command == "oscillatory") return detail::cmd_oscillatory(config, out, log, timing);
        if (command == "convergence") return detail::cmd_convergence(config, out, log, timing);
        if (command == "pitt") return detail::cmd_pitt(config, out, log, timing);
        throw ConfigError("unknown command " + command);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return numerical_error;
    } catch (const CalibrationError& e) {
        err << "numerical error: " << e.what() << '\n';
        return numerical_error;
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    }
}

}  // namespace drh::cli
