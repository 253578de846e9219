// Command line front end for the excited random walk toolkit.
//
// Every subcommand prints a single flat JSON object to stdout (kernel prints
// CSV instead); --output / --grid-csv add CSV detail files.  Exit codes:
//   0  success (a hitting-time timeout is a result, not an error)
//   1  domain errors (delta out of range, M != 3 where required, failed
//      convergence, empty search region) and a failed `verify`
//   2  usage errors (unknown flags, malformed --p, bad file paths)

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erw/branching.hpp"
#include "erw/environment.hpp"
#include "erw/errors.hpp"
#include "erw/io.hpp"
#include "erw/rng.hpp"
#include "erw/speed_bounds.hpp"
#include "erw/stationary.hpp"
#include "erw/walker.hpp"

namespace {

constexpr double kDeltaEdge = 1e-9;  // feasibility margin, matches the gap search

// --seed beats the ERW_SEED environment variable beats the default 1.
std::uint64_t resolve_seed(bool seed_given, std::uint64_t cli_seed) {
    if (seed_given) return cli_seed;
    if (const char* env = std::getenv("ERW_SEED")) {
        const std::string text(env);
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size() || text.empty()) {
            throw std::invalid_argument("ERW_SEED must be an unsigned integer, got \"" +
                                        text + "\"");
        }
        return v;
    }
    return 1;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    return out;
}

// lo, lo+step, ... with hi always included as the last point
std::vector<double> grid_axis(double lo, double hi, double step) {
    std::vector<double> axis;
    for (double x = lo; x < hi; x += step) axis.push_back(x);
    axis.push_back(hi);
    return axis;
}

int run_classify(const std::string& p_csv) {
    const erw::CookieEnvironment env = erw::CookieEnvironment::parse(p_csv);
    const erw::Classification c = erw::classify(env);
    erw::JsonWriter w;
    w.field("delta", erw::delta(env))
        .field("transience", erw::to_string(c.transience))
        .field("speed_sign", erw::to_string(c.speed_sign));
    std::cout << w.str() << "\n";
    return 0;
}

int run_simulate(const std::string& p_csv, std::uint64_t steps, std::uint64_t replicates,
                 std::uint64_t seed, unsigned threads, const std::string& output) {
    const erw::CookieEnvironment env = erw::CookieEnvironment::parse(p_csv);
    std::vector<erw::WalkResult> results;
    const erw::MonteCarloEstimate est = erw::estimate_speed(
        env, steps, replicates, seed, threads, output.empty() ? nullptr : &results);
    if (!output.empty()) {
        std::ofstream out = open_output(output);
        out << "replicate,seed,steps,final_position,speed_estimate\n";
        for (std::uint64_t r = 0; r < replicates; ++r) {
            const erw::WalkResult& wr = results[r];
            const double speed = static_cast<double>(wr.final_position) /
                                 static_cast<double>(wr.steps);
            out << r << ',' << erw::sub_seed(seed, r) << ',' << wr.steps << ','
                << wr.final_position << ',' << erw::format_double(speed) << "\n";
        }
    }
    erw::JsonWriter w;
    w.field("mean", est.mean)
        .field("std_error", est.std_error)
        .field("replicates", est.replicates)
        .field("steps_per_replicate", est.steps_per_replicate)
        .field("seed", est.seed);
    std::cout << w.str() << "\n";
    return 0;
}

int run_hitting(const std::string& p_csv, std::int64_t target, std::uint64_t step_cap,
                std::uint64_t seed) {
    const erw::CookieEnvironment env = erw::CookieEnvironment::parse(p_csv);
    const auto time = erw::hitting_time(env, target, seed, step_cap);
    erw::JsonWriter w;
    w.field("target", static_cast<std::uint64_t>(target))
        .field("step_cap", step_cap)
        .field("seed", seed)
        .field("timeout", !time.has_value());
    if (time) {
        w.field("hitting_time", *time);
        w.field("speed_estimate",
                static_cast<double>(target) / static_cast<double>(*time));
    }
    std::cout << w.str() << "\n";
    return 0;
}

int run_kernel(const std::string& p_csv, int imin, int imax, int jmax,
               const std::string& output) {
    const erw::CookieEnvironment env = erw::CookieEnvironment::parse(p_csv);
    if (imin < 0 || imax < imin || jmax < 0) {
        throw std::invalid_argument("kernel needs 0 <= imin <= imax and jmax >= 0");
    }
    const erw::TransitionKernel kernel(env);
    std::ofstream file;
    if (!output.empty()) file = open_output(output);
    std::ostream& os = output.empty() ? std::cout : file;
    os << "i,j,prob\n";
    for (int i = imin; i <= imax; ++i) {
        const std::vector<double> r = kernel.row(i, jmax + 1);
        for (int j = 0; j <= jmax; ++j) {
            os << i << ',' << j << ',' << erw::format_double(r[j]) << "\n";
        }
        os << i << ",TAIL," << erw::format_double(kernel.tail_mass(i, jmax)) << "\n";
    }
    return 0;
}

int run_stationary(const std::string& p_csv, int truncation, double tolerance,
                   const std::string& output) {
    const erw::CookieEnvironment env = erw::CookieEnvironment::parse(p_csv);
    const erw::TransitionKernel kernel(env);
    const erw::StationarySolution sol = erw::solve_stationary(kernel, truncation, tolerance);
    if (!output.empty()) {
        std::ofstream out = open_output(output);
        out << "k,pi_hat\n";
        for (std::size_t k = 0; k < sol.pi_hat.size(); ++k) {
            out << k << ',' << erw::format_double(sol.pi_hat[k]) << "\n";
        }
    }
    erw::JsonWriter w;
    w.field("truncation", sol.truncation)
        .field("tail_mass_bound", sol.tail_mass_bound)
        .field("mean_estimate", sol.mean_estimate)
        .field("speed_estimate", sol.speed_estimate)
        .field("genabc_residual", sol.genabc_residual);
    std::cout << w.str() << "\n";
    return 0;
}

int run_bounds(const std::string& p_csv) {
    const erw::CookieEnvironment env = erw::CookieEnvironment::parse(p_csv);
    const erw::SpeedBounds b = erw::speed_interval(env);
    erw::JsonWriter w;
    w.field("f1", b.f1)
        .field("f2", b.f2)
        .field("f3", b.f3)
        .field("pi0_lower", b.pi0_lower)
        .field("pi0_upper", b.pi0_upper)
        .field("v_lower", b.v_lower)
        .field("v_upper", b.v_upper);
    std::cout << w.str() << "\n";
    return 0;
}

void write_gap_grid(erw::Region region, double grid_step, const std::string& path) {
    std::ofstream out = open_output(path);
    if (region == erw::Region::Symmetric) {
        out << "p,v_lower,v_upper,gap\n";
        const double pmin = (5.0 + kDeltaEdge) / 6.0;
        for (double p : grid_axis(pmin, 1.0, grid_step)) {
            const auto iv = erw::symmetric_interval(p);
            out << erw::format_double(p) << ',' << erw::format_double(iv.first) << ','
                << erw::format_double(iv.second) << ','
                << erw::format_double(iv.second - iv.first) << "\n";
        }
        return;
    }
    out << "p1,p2,p3,v_lower,v_upper,gap\n";
    const std::vector<double> axis = grid_axis(0.0, 1.0, grid_step);
    for (double p1 : axis) {
        for (double p2 : axis) {
            for (double p3 : axis) {
                if (2.0 * (p1 + p2 + p3) - 3.0 < 2.0 + kDeltaEdge) continue;
                const erw::SpeedBounds b = erw::speed_interval(
                    erw::CookieEnvironment({p1, p2, p3}));
                out << erw::format_double(p1) << ',' << erw::format_double(p2) << ','
                    << erw::format_double(p3) << ',' << erw::format_double(b.v_lower)
                    << ',' << erw::format_double(b.v_upper) << ','
                    << erw::format_double(b.v_upper - b.v_lower) << "\n";
            }
        }
    }
}

int run_gap(const std::string& region_name, bool grid_given, double grid,
            double refine_tol, const std::string& grid_csv) {
    const erw::Region region = region_name == "symmetric" ? erw::Region::Symmetric
                                                          : erw::Region::General;
    // finer default on the one-dimensional region, coarser on the cube
    const double step = grid_given ? grid
                                   : (region == erw::Region::Symmetric ? 1e-3 : 0.02);
    if (!(step > 0.0)) throw std::invalid_argument("--grid must be positive");
    if (!(refine_tol > 0.0)) throw std::invalid_argument("--refine-tol must be positive");
    const erw::GapSearchResult res = erw::maximize_gap(region, step, refine_tol);
    if (!grid_csv.empty()) write_gap_grid(region, step, grid_csv);
    erw::JsonWriter w;
    w.field("argmax", res.argmax)
        .field("max_gap", res.max_gap)
        .field("evaluations", res.evaluations)
        .field("grid_resolution", res.grid_resolution);
    std::cout << w.str() << "\n";
    return 0;
}

int run_verify(const std::string& p_csv, std::uint64_t steps, std::uint64_t replicates,
               int truncation, double tolerance, std::uint64_t seed, unsigned threads,
               double genabc_tol, double speed_tol, bool corrupt) {
    const erw::CookieEnvironment env = erw::CookieEnvironment::parse(p_csv);
    const erw::SpeedBounds b = erw::speed_interval(env);

    const erw::TransitionKernel kernel(env, corrupt ? 0.02 : 0.0);
    const erw::StationarySolution sol = erw::solve_stationary(kernel, truncation, tolerance);
    const bool stationary_ok = sol.speed_estimate >= b.v_lower - speed_tol &&
                               sol.speed_estimate <= b.v_upper + speed_tol;
    const bool genabc_ok = sol.genabc_residual < genabc_tol;

    const erw::MonteCarloEstimate mc = erw::estimate_speed(env, steps, replicates, seed,
                                                           threads);
    const double band = 4.0 * mc.std_error;
    const bool mc_ok = mc.mean >= b.v_lower - band && mc.mean <= b.v_upper + band;

    const bool ok = stationary_ok && genabc_ok && mc_ok;
    erw::JsonWriter w;
    w.field("delta", erw::delta(env))
        .field("v_lower", b.v_lower)
        .field("v_upper", b.v_upper)
        .field("truncation", sol.truncation)
        .field("stationary_speed", sol.speed_estimate)
        .field("stationary_ok", stationary_ok)
        .field("genabc_residual", sol.genabc_residual)
        .field("genabc_ok", genabc_ok)
        .field("mc_mean", mc.mean)
        .field("mc_std_error", mc.std_error)
        .field("mc_band", band)
        .field("mc_ok", mc_ok)
        .field("seed", seed)
        .field("corrupt_kernel", corrupt)
        .field("ok", ok);
    std::cout << w.str() << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"excited (cookie) random walk: classification, speed bounds, "
                 "stationary solve, simulation"};
    app.require_subcommand(1);

    std::string p_csv;
    std::uint64_t steps = 100000, replicates = 16, seed = 1, step_cap = 10000000;
    std::int64_t target = 1000;
    unsigned threads = 0;
    int truncation = 200, imin = 0, imax = 8, jmax = 8;
    double tolerance = 1e-12, grid = 0.0, refine_tol = 1e-7;
    double genabc_tol = 1e-8, speed_tol = 1e-4;
    std::string output, grid_csv, region_name;
    bool corrupt = false;

    auto add_p = [&](CLI::App* sub) {
        sub->add_option("--p", p_csv, "comma separated cookie strengths, e.g. 0.9,0.9,0.9")
            ->required();
    };

    CLI::App* sc_classify = app.add_subcommand(
        "classify", "transience and speed sign from delta");
    add_p(sc_classify);

    CLI::App* sc_simulate = app.add_subcommand(
        "simulate", "Monte Carlo speed estimate over independent replicates");
    add_p(sc_simulate);
    sc_simulate->add_option("--steps", steps, "steps per replicate")
        ->default_val(std::uint64_t{100000});
    sc_simulate->add_option("--replicates", replicates, "independent replicates")
        ->default_val(std::uint64_t{16});
    CLI::Option* sim_seed = sc_simulate->add_option("--seed", seed, "master seed");
    sc_simulate->add_option("--threads", threads, "worker threads, 0 = all cores")
        ->default_val(0u);
    sc_simulate->add_option("--output", output, "per replicate CSV path");

    CLI::App* sc_hitting = app.add_subcommand(
        "hitting", "first passage time to a positive site");
    add_p(sc_hitting);
    sc_hitting->add_option("--target", target, "site to hit (>= 1)")->required();
    sc_hitting->add_option("--step-cap", step_cap, "give up after this many steps")
        ->default_val(std::uint64_t{10000000});
    CLI::Option* hit_seed = sc_hitting->add_option("--seed", seed, "master seed");

    CLI::App* sc_kernel = app.add_subcommand(
        "kernel", "branching process transition probabilities as CSV");
    add_p(sc_kernel);
    sc_kernel->add_option("--imin", imin, "first row")->default_val(0);
    sc_kernel->add_option("--imax", imax, "last row")->default_val(8);
    sc_kernel->add_option("--jmax", jmax, "last explicit column; the rest is one TAIL mass")
        ->default_val(8);
    sc_kernel->add_option("--output", output, "CSV path (default stdout)");

    CLI::App* sc_stationary = app.add_subcommand(
        "stationary", "truncated stationary distribution and implied speed");
    add_p(sc_stationary);
    sc_stationary->add_option("--truncation", truncation, "number of retained states N")
        ->default_val(200);
    sc_stationary->add_option("--tolerance", tolerance, "power iteration TV tolerance")
        ->default_val(1e-12);
    sc_stationary->add_option("--output", output, "pi_hat CSV path");

    CLI::App* sc_bounds = app.add_subcommand(
        "bounds", "closed form speed interval for three cookies");
    add_p(sc_bounds);

    CLI::App* sc_gap = app.add_subcommand(
        "gap", "maximize the speed interval width over a parameter region");
    sc_gap->add_option("--region", region_name, "symmetric (p,p,p) or general (p1,p2,p3)")
        ->required()
        ->check(CLI::IsMember({"symmetric", "general"}));
    CLI::Option* gap_grid = sc_gap->add_option(
        "--grid", grid, "grid step (default 0.001 symmetric, 0.02 general)");
    sc_gap->add_option("--refine-tol", refine_tol, "local refinement tolerance")
        ->default_val(1e-7);
    sc_gap->add_option("--grid-csv", grid_csv, "write the coarse grid scan as CSV");

    CLI::App* sc_verify = app.add_subcommand(
        "verify", "cross check stationary solve and Monte Carlo against the bounds");
    add_p(sc_verify);
    sc_verify->add_option("--steps", steps, "steps per replicate")
        ->default_val(std::uint64_t{1000000});
    sc_verify->add_option("--replicates", replicates, "independent replicates")
        ->default_val(std::uint64_t{50});
    sc_verify->add_option("--truncation", truncation, "stationary truncation N")
        ->default_val(200);
    sc_verify->add_option("--tolerance", tolerance, "power iteration TV tolerance")
        ->default_val(1e-12);
    CLI::Option* ver_seed = sc_verify->add_option("--seed", seed, "master seed");
    sc_verify->add_option("--threads", threads, "worker threads, 0 = all cores")
        ->default_val(0u);
    sc_verify->add_option("--genabc-tol", genabc_tol, "stationary identity residual bound")
        ->default_val(1e-8);
    sc_verify->add_option("--speed-tol", speed_tol, "slack around the speed interval")
        ->default_val(1e-4);
    sc_verify->add_flag("--corrupt-kernel", corrupt,
                        "perturb the kernel to prove the checks can fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_classify->parsed()) return run_classify(p_csv);
        if (sc_simulate->parsed()) {
            return run_simulate(p_csv, steps, replicates,
                                resolve_seed(sim_seed->count() > 0, seed), threads,
                                output);
        }
        if (sc_hitting->parsed()) {
            return run_hitting(p_csv, target, step_cap,
                               resolve_seed(hit_seed->count() > 0, seed));
        }
        if (sc_kernel->parsed()) return run_kernel(p_csv, imin, imax, jmax, output);
        if (sc_stationary->parsed()) {
            return run_stationary(p_csv, truncation, tolerance, output);
        }
        if (sc_bounds->parsed()) return run_bounds(p_csv);
        if (sc_gap->parsed()) {
            return run_gap(region_name, gap_grid->count() > 0, grid, refine_tol,
                           grid_csv);
        }
        if (sc_verify->parsed()) {
            return run_verify(p_csv, steps, replicates, truncation, tolerance,
                              resolve_seed(ver_seed->count() > 0, seed), threads,
                              genabc_tol, speed_tol, corrupt);
        }
    } catch (const erw::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const erw::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const erw::EmptyRegion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
