// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "fourthlab/bubbles.hpp"
#include "fourthlab/extremal.hpp"
#include "fourthlab/refined.hpp"
#include "fourthlab/scenarios.hpp"
#include "fourthlab/whitney.hpp"
#include "oracles.hpp"

using namespace fourthlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Field random_band_field(const SpatialGrid& g, double band, std::mt19937_64& rng) {
    return inverse_transform(Spectrum(g, oracle::random_band_spectrum(g, band, rng)));
}

Outcome unitarity() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const auto g = make_grid(0.0, 100.0, 1024);
    const double mus[] = {0.0, 1.0, 5.0};
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto f = random_band_field(g, 4.0, rng);
        const auto v = propagate_fourth(f, u(rng), DispersionParams(mus[k % 3]));
        worst = std::max(worst, std::abs(l2_norm(v) / l2_norm(f) - 1.0));
    }
    return {worst <= 1e-12, "max |ratio - 1| = " + fmt("%.2e", worst)};
}

Outcome schrodinger_constant_oracle() {
    const auto r = gaussian_schrodinger_oracle(1.0, default_window());
    const double rel = std::abs(r.numeric - oracle::schrodinger_constant()) / oracle::schrodinger_constant();
    return {rel <= 1e-3, "numeric " + fmt("%.7f", r.numeric) + ", relative error " + fmt("%.2e", rel)};
}

Outcome galilean() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto g = make_grid(0.0, 128.0, 2048);
    const double dxi = dual_grid(g).spacing();
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const auto phi = random_band_field(g, 2.0, rng);
        const double N = dxi * std::round(-80.0 + 160.0 * u(rng)), t = -0.5 + u(rng);
        worst = std::max(worst, galilean_residual(phi, N, t).residual);
    }
    return {worst <= 1e-10, "max residual " + fmt("%.2e", worst)};
}

Outcome scaling() {
    const TimeWindow w;
    const auto g = free_gaussian_grid(1.0, w.t_max);
    const auto ratio = [&](double l) {
        const auto gl = make_grid(0.0, g.length() * l, g.size());
        const auto f = sample([l](double x) { return cplx(std::exp(-0.5 * (x / l) * (x / l)) / std::sqrt(l)); }, gl);
        return strichartz_ratio(f, DispersionParams(0.0), w.scaled(std::pow(l, 4))).value;
    };
    const double base = ratio(1.0);
    double worst = 0.0;
    for (double l : {0.5, 2.0}) worst = std::max(worst, std::abs(ratio(l) / base - 1.0));
    return {worst <= 1e-3, "max relative deviation " + fmt("%.2e", worst)};
}

Outcome whitney() {
    const auto a = verify_partition(-10.0, 10.0, 10000, 7);
    const auto b = verify_partition(-160.0, 160.0, 10000, 7);
    const bool ok = a.violations == 0 && b.violations == 0 && a.max_multiplicity == b.max_multiplicity;
    return {ok, "violations " + std::to_string(a.violations + b.violations) + ", multiplicity " +
                    std::to_string(a.max_multiplicity) + " and " + std::to_string(b.max_multiplicity)};
}

Outcome refined_closed_case() {
    const auto g = make_grid(0.0, 128.0 * std::numbers::pi, 1024);
    const auto fg = dual_grid(g);
    const double dxi = fg.spacing();
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fg.xi(i) >= -0.25 * dxi && fg.xi(i) < 1.0 - 0.25 * dxi;
    const double value = refined_functional(Spectrum(g, v), 4.0 / 3.0).value;

    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> logn(2, 8);
    std::uniform_real_distribution<double> pdist(1.1, 3.0);
    std::normal_distribution<double> gauss;
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::size_t{1} << logn(rng);
        const auto gt = make_grid(0.0, 1.0 + 10.0 * pdist(rng), n);
        std::vector<cplx> s(n);
        for (auto& z : s) z = {gauss(rng), gauss(rng)};
        const double p = trial % 2 ? 4.0 / 3.0 : pdist(rng);
        const double dyadic = refined_functional(Spectrum(gt, s), p).value;
        const double exhaustive = oracle::exhaustive_refined(s, dual_grid(gt).spacing(), p);
        const double slack = std::pow(2.0, std::abs(0.5 - 1.0 / p));
        if (dyadic > exhaustive * (1 + 1e-12) || exhaustive > slack * dyadic * (1 + 1e-12)) ++violations;
    }
    const bool ok = std::abs(value - 1.0) <= 0.02 && violations == 0;
    return {ok, "indicator value " + fmt("%.4f", value) + ", bound violations " + std::to_string(violations) + "/100"};
}

// Random spectra supported in [-1, 1]: four smooth bumps at random positions with random spatial offsets.
Field random_packet_field(const SpatialGrid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> gauss;
    const auto fg = dual_grid(g);
    std::vector<cplx> v(g.size());
    for (int k = 0; k < 4; ++k) {
        const double width = 0.25 + 0.75 * u(rng);
        const double lo = -1.0 + (2.0 - width) * u(rng);
        const double x0 = -50.0 + 100.0 * u(rng);
        const cplx c(gauss(rng), gauss(rng));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += c * std::polar(oracle::bump(fg.xi(i), lo, lo + width), -x0 * fg.xi(i));
    }
    return inverse_transform(Spectrum(g, v));
}

Outcome refined_inequality() {
    const TimeWindow base;
    const DispersionParams disp(1.0);
    std::vector<double> r;
    for (int k = -4; k <= 4; ++k) {
        const auto in = concentration_member(std::ldexp(1.0, k), 1.0, base);
        r.push_back(refined_inequality_ratio(in.f, disp, 4.0 / 3.0, in.window));
    }
    std::mt19937_64 rng(21);
    const auto g = make_grid(0.0, 4096.0, 4096);
    for (int k = 0; k < 20; ++k) r.push_back(refined_inequality_ratio(random_packet_field(g, rng), disp, 4.0 / 3.0, base));
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    return {*hi / *lo <= 3.0, "range [" + fmt("%.4f", *lo) + ", " + fmt("%.4f", *hi) + "], spread " + fmt("%.3f", *hi / *lo)};
}

Outcome extraction_recovery() {
    const auto sc = planted_three_bubbles();
    const auto f = synthesize(sc.bubbles, sc.disp, sc.grid);
    ExtractionConfig cfg;
    cfg.delta = 0.05 * refined_functional(forward_transform(f), cfg.p).value;
    const auto dec = full_decomposition(f, cfg, sc.disp, default_window());
    std::size_t recovered = 0;
    for (const auto& b : sc.bubbles) {
        const double rho = 1.0 / b.params.h;
        for (const auto& p : dec.profiles) {
            const double ratio = b.params.h / p.params.h;
            if (ratio >= 0.5 && ratio <= 2.0 && std::abs(p.params.xi - b.params.xi) <= rho) {
                ++recovered;
                break;
            }
        }
    }
    const double norm2 = std::pow(l2_norm(f), 2);
    const double pyth = std::abs(dec.stage_one.pythagoras_gap) / norm2;
    const bool ok = recovered == 3 && pyth <= 1e-10 && dec.l2_gap < 0.05;
    return {ok, std::to_string(recovered) + "/3 recovered from " + std::to_string(dec.profiles.size()) +
                    " profiles, stage-one gap " + fmt("%.1e", pyth) + ", full gap " + fmt("%.2e", dec.l2_gap)};
}

Outcome decoupling() {
    const auto core = gaussian_core(64.0, 1024);
    const auto grid = pair_grid();
    const DispersionParams disp(0.0);
    TimeWindow short_window;
    short_window.t_max = 10.0;
    struct Sweep {
        SeparationAxis axis;
        std::vector<double> seps;
        TimeWindow window;
        const char* name;
    };
    const std::vector<Sweep> sweeps{{SeparationAxis::spatial, {10.0, 100.0, 1000.0}, TimeWindow{}, "spatial"},
                                    {SeparationAxis::scale, {2.0, 8.0, 32.0}, TimeWindow{}, "scale"},
                                    {SeparationAxis::frequency, {1.0, 2.0, 4.0}, short_window, "frequency"}};
    bool ok = true;
    std::string detail;
    for (const auto& s : sweeps) {
        std::vector<double> pp;
        double rel = 0.0;
        for (double sep : s.seps) {
            const auto r = decoupling_report(bubble_pair(s.axis, sep, core), disp, s.window, grid, sep);
            pp.push_back(r.pair_products[0][1]);
            rel = r.l6_gap / r.sum_l6;
        }
        const bool decreasing = pp[0] > pp[1] && pp[1] > pp[2];
        ok = ok && decreasing;
        detail += std::string(s.name) + (decreasing ? " decreasing" : " NOT decreasing") + " (" + fmt("%.3g", pp[0]) +
                  " -> " + fmt("%.3g", pp[2]) + ")";
        if (s.axis == SeparationAxis::spatial) {
            ok = ok && rel < 0.05;
            detail += ", l6 gap " + fmt("%.2e", rel);
        }
        detail += "; ";
    }
    return {ok, detail.substr(0, detail.size() - 2)};
}

Outcome dispersive_decay() {
    const auto g = make_grid(0.0, 4096.0, 8192);
    const auto fg = dual_grid(g);
    const std::pair<double, double> bands[] = {{-1.0, 1.0}, {0.0, 1.0}, {-0.8, 0.3}};
    double worst = 0.0;
    std::string detail = "slopes";
    for (const auto& [lo, hi] : bands) {
        std::vector<cplx> v(g.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = oracle::bump(fg.xi(i), lo, hi);
        FlowEvaluator ev(inverse_transform(Spectrum(g, v)), fourth_flow(DispersionParams(1.0)));
        std::vector<double> ts, sups;
        for (double t = 10.0; t <= 100.0 + 1e-9; t *= std::pow(10.0, 0.1)) {
            ts.push_back(t);
            sups.push_back(spatial_norm(ev.slice(t), std::numeric_limits<double>::infinity()));
        }
        const double slope = oracle::loglog_slope(ts, sups);
        worst = std::max(worst, std::abs(slope + 0.5));
        detail += " " + fmt("%.4f", slope);
    }
    return {worst <= 0.05, detail};
}

Outcome high_frequency() {
    const TimeWindow w;
    const auto phi = sample([](double x) { return cplx(std::exp(-x * x)); }, schrodinger_grid(1.0 / std::sqrt(2.0), w.t_max));
    const auto rows = convergence_study(phi, {4.0, 8.0, 16.0, 32.0, 64.0}, w);
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) decreasing = decreasing && std::abs(rows[i].gap) < std::abs(rows[i - 1].gap);
    const double N = 8.0;
    const auto f8 = sample([N](double x) { return std::polar(std::exp(-x * x), N * x); }, detail::modulated_grid(N, w.t_max));
    const double direct = strichartz_ratio(f8, DispersionParams(0.0), w.scaled(1.0 / (6.0 * N * N))).value;
    const double consistency = std::abs(direct - rows[1].ratio);
    const bool ok = decreasing && std::abs(rows.back().gap) <= 2e-2 && consistency <= 2e-3;
    return {ok, std::string(decreasing ? "gaps decreasing" : "gaps NOT decreasing") + ", final gap " +
                    fmt("%.2e", rows.back().gap) + ", two-path difference " + fmt("%.2e", consistency)};
}

Outcome dichotomy() {
    const auto table = dichotomy_experiment(default_window());
    const double floor = oracle::schrodinger_constant() - 2e-2;
    return {table.modulated_max >= floor, "modulated max " + fmt("%.6f", table.modulated_max) + " vs floor " +
                                              fmt("%.6f", floor) + "; " + table.verdict};
}

Outcome extremizer() {
    const auto g = make_grid(0.0, 1024.0, 4096);
    const auto f0 = sample([](double x) { return cplx(1.0 / (1.0 + std::abs(x))); }, g);
    const auto res = maximize_ratio(f0, schrodinger_flow(), default_window(), 200, 0.0);
    const double gap = res.ratio - oracle::schrodinger_constant();
    const bool ok = std::abs(gap) <= 1e-3 && !res.unstable && res.iterations <= 200;
    return {ok, "ratio " + fmt("%.7f", res.ratio) + " (gap " + fmt("%.2e", gap) + ") after " +
                    std::to_string(res.iterations) + " iterations, trace " + (res.unstable ? "unstable" : "monotone")};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::ifstream is(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << is.rdbuf();
        files[e.path().filename().string()] = ss.str();
    }
    return files;
}

Outcome determinism() {
    const auto root = fs::temp_directory_path() / "fourthlab_acceptance_determinism";
    fs::remove_all(root);
    const std::vector<std::string> commands{"whitney --seed 7", "ratio --set input.family=random --seed 5",
                                            "refined --set refined.inequality=true",
                                            "decouple --set decouple.separations=10,100",
                                            "maximize --iters 5 --set grid.length=64 --set grid.n=256"};
    std::size_t identical = 0;
    for (const auto& cmd : commands) {
        const auto out = root / cmd.substr(0, cmd.find(' '));
        const std::string line = std::string("\"") + FOURTHLAB_CLI_PATH + "\" --t-max 10 --steps 400 --out \"" +
                                 out.string() + "\" " + cmd + " > /dev/null";
        if (std::system(line.c_str()) != 0) continue;
        const auto first = snapshot(out);
        if (std::system(line.c_str()) != 0) continue;
        if (first == snapshot(out)) ++identical;
    }
    return {identical == commands.size(),
            std::to_string(identical) + "/" + std::to_string(commands.size()) + " subcommands byte-identical on rerun"};
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budget;
    };
    const std::vector<Criterion> criteria{
        {"unitarity", unitarity, 10.0},
        {"sharp Schrodinger constant", schrodinger_constant_oracle, 60.0},
        {"Galilean identity", galilean, 0.0},
        {"scaling symmetry", scaling, 0.0},
        {"Whitney partition", whitney, 0.0},
        {"refined functional closed case", refined_closed_case, 0.0},
        {"refined inequality band", refined_inequality, 0.0},
        {"extraction recovery", extraction_recovery, 120.0},
        {"decoupling", decoupling, 0.0},
        {"dispersive decay", dispersive_decay, 0.0},
        {"high-frequency limit", high_frequency, 0.0},
        {"dichotomy lower bound", dichotomy, 0.0},
        {"extremizer search", extremizer, 0.0},
        {"determinism", determinism, 0.0},
    };
    std::size_t first = 0, last = criteria.size();
    if (argc > 1) {
        const auto k = static_cast<std::size_t>(std::atoi(argv[1]));
        if (k < 1 || k > criteria.size()) {
            std::cerr << "usage: acceptance [criterion 1-" << criteria.size() << "]\n";
            return 2;
        }
        first = k - 1;
        last = k;
    }
    int failed = 0;
    for (std::size_t i = first; i < last; ++i) {
        const auto& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget > 0.0 && secs > c.budget) {
            o.pass = false;
            o.detail += ", over the " + fmt("%.0f", c.budget) + " s budget";
        }
        if (!o.pass) ++failed;
        std::cout << "criterion " << i + 1 << " " << c.name << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail
                  << "; " << fmt("%.1f", secs) << " s)" << std::endl;
    }
    if (argc == 1)
        std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed"))
                  << std::endl;
    return failed ? 1 : 0;
}
