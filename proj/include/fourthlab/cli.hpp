#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fourthlab/bubbles.hpp"
#include "fourthlab/extremal.hpp"
#include "fourthlab/io.hpp"
#include "fourthlab/refined.hpp"
#include "fourthlab/scenarios.hpp"
#include "fourthlab/whitney.hpp"

namespace fourthlab::cli {

struct Key {
    std::string value;
    std::string help;
};

/// Every accepted "section.key" with its default. Anything else is rejected.
inline const std::map<std::string, Key>& schema() {
    static const std::map<std::string, Key> s = {
        {"grid.center", {"0", "grid centre"}},
        {"grid.length", {"auto", "period length, or auto for the subcommand preset"}},
        {"grid.n", {"auto", "sample count (power of two), or auto"}},
        {"window.t_max", {"100", "time truncation T"}},
        {"window.steps", {"4000", "time intervals on [-T, T] (even)"}},
        {"window.tail", {"dispersive", "tail policy: dispersive or none"}},
        {"window.spacing", {"sinh", "time nodes: sinh or uniform"}},
        {"window.concentration", {"8", "sinh grading strength"}},
        {"dispersion.mu", {"0", "coefficient mu >= 0"}},
        {"run.seed", {"0", "seed for random inputs and sampling"}},
        {"run.output", {"out", "output directory"}},
        {"input.family", {"gaussian", "gaussian, power, indicator, random or file"}},
        {"input.width", {"1", "gaussian width w in exp(-(x/w)^2)"}},
        {"input.alpha", {"1", "power family exponent in (1+|x|)^-alpha"}},
        {"input.N", {"0", "modulation frequency (gaussian) or band start (indicator)"}},
        {"input.band", {"1", "band width for indicator and random inputs"}},
        {"input.modes", {"16", "random input: number of nonzero frequency bins"}},
        {"input.file", {"", "field dump to read when family = file"}},
        {"ratio.flow", {"fourth", "fourth, schrodinger or highfreq"}},
        {"ratio.N", {"8", "frequency for the highfreq flow"}},
        {"propagate.t", {"1", "evolution time"}},
        {"propagate.alpha", {"0", "derivative order applied after evolution"}},
        {"whitney.samples", {"10000", "random pairs"}},
        {"whitney.lo", {"-10", "sampling range lower end"}},
        {"whitney.hi", {"10", "sampling range upper end"}},
        {"refined.p", {"1.3333333333333333", "exponent p > 1"}},
        {"refined.inequality", {"false", "also report the refined inequality ratio"}},
        {"extract.scenario", {"planted", "planted (three bubbles) or input"}},
        {"extract.delta", {"auto", "threshold, or auto for 5% of the input functional"}},
        {"extract.amplitude_constant", {"10", "amplitude cap constant"}},
        {"extract.max_bubbles", {"16", "cap on extraction rounds"}},
        {"extract.ortho_threshold", {"100", "separation threshold"}},
        {"extract.max_cores", {"4", "cores per frequency piece"}},
        {"extract.flatness", {"2", "max/median contrast below which core search stops"}},
        {"decouple.axis", {"spatial", "spatial, scale or frequency"}},
        {"decouple.separations", {"10,100,1000", "comma separated sweep"}},
        {"converge.N", {"4,8,16,32,64", "comma separated frequencies"}},
        {"maximize.flow", {"schrodinger", "schrodinger or fourth"}},
        {"maximize.iters", {"200", "iteration cap"}},
        {"maximize.step_tol", {"0", "stop when the ratio gains less than this"}},
    };
    return s;
}

/// Effective configuration: schema defaults overlaid by file, --set and flags.
class Settings {
public:
    Settings() {
        for (const auto& [k, v] : schema()) values_[k] = v.value;
    }

    void set(const std::string& key, const std::string& value) {
        if (!schema().count(key)) throw InvalidArgument(key, "unknown configuration key");
        values_[key] = value;
    }

    const std::string& str(const std::string& key) const { return values_.at(key); }
    bool is_auto(const std::string& key) const { return str(key) == "auto"; }

    double num(const std::string& key) const {
        const auto& s = str(key);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || *end != '\0' || !std::isfinite(v)) throw InvalidArgument(key, "expected a number, got '" + s + "'");
        return v;
    }

    std::size_t count(const std::string& key) const {
        const double v = num(key);
        if (v < 0.0 || v != std::floor(v) || v > 1e15)
            throw InvalidArgument(key, "expected a non-negative integer, got '" + str(key) + "'");
        return static_cast<std::size_t>(v);
    }

    bool flag(const std::string& key) const {
        const auto& s = str(key);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw InvalidArgument(key, "expected true or false, got '" + s + "'");
    }

    std::vector<double> list(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(str(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            char* end = nullptr;
            const double v = std::strtod(item.c_str(), &end);
            if (item.empty() || *end != '\0' || !std::isfinite(v))
                throw InvalidArgument(key, "expected a comma separated list of numbers");
            out.push_back(v);
        }
        if (out.empty()) throw InvalidArgument(key, "list is empty");
        return out;
    }

    /// INI text of every setting, in key order.
    std::string ini() const {
        std::string s, section;
        for (const auto& [k, v] : values_) {
            const auto dot = k.find('.');
            if (k.substr(0, dot) != section) {
                section = k.substr(0, dot);
                s += (s.empty() ? "[" : "\n[") + section + "]\n";
            }
            s += k.substr(dot + 1) + " = " + v + "\n";
        }
        return s;
    }

    /// key=value lines in key order, run.output excluded.
    std::string canonical() const {
        std::string s;
        for (const auto& [k, v] : values_)
            if (k != "run.output") s += k + "=" + v + "\n";
        return s;
    }

    std::string hash() const { return io::hex(io::fnv1a(canonical())); }

private:
    std::map<std::string, std::string> values_;
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// Flat INI: [section] headers, key = value lines, # or ; comments.
inline void load_config(std::istream& is, Settings& s) {
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw InvalidArgument("config", "line " + std::to_string(lineno) + ": bad section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("config", "line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw InvalidArgument("config", "line " + std::to_string(lineno) + ": key outside a section");
        s.set(section + "." + trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

inline void load_config(const std::string& path, Settings& s) {
    std::ifstream is(path);
    if (!is) throw InvalidArgument("config", "cannot open " + path);
    load_config(is, s);
}

// ---------------------------------------------------------------------------
// Builders from settings
// ---------------------------------------------------------------------------

inline TimeWindow window_from(const Settings& s) {
    TimeWindow w;
    w.t_max = s.num("window.t_max");
    w.steps = s.count("window.steps");
    const auto& tail = s.str("window.tail");
    if (tail == "dispersive") w.tail_policy = TailPolicy::dispersive;
    else if (tail == "none") w.tail_policy = TailPolicy::none;
    else throw InvalidArgument("window.tail", "expected dispersive or none");
    const auto& sp = s.str("window.spacing");
    if (sp == "sinh") w.spacing = TimeSpacing::sinh;
    else if (sp == "uniform") w.spacing = TimeSpacing::uniform;
    else throw InvalidArgument("window.spacing", "expected sinh or uniform");
    w.concentration = s.num("window.concentration");
    w.validate();
    return w;
}

/// Explicit grid settings win; "auto" falls back to the preset.
inline SpatialGrid grid_from(const Settings& s, const SpatialGrid& preset) {
    const double center = s.num("grid.center");
    const double length = s.is_auto("grid.length") ? preset.length() : s.num("grid.length");
    const std::size_t n = s.is_auto("grid.n") ? preset.size() : s.count("grid.n");
    return make_grid(center, length, n);
}

inline ExtractionConfig extraction_from(const Settings& s, double functional) {
    ExtractionConfig c;
    c.delta = s.is_auto("extract.delta") ? 0.05 * functional : s.num("extract.delta");
    c.amplitude_constant = s.num("extract.amplitude_constant");
    c.max_bubbles = s.count("extract.max_bubbles");
    c.ortho_threshold = s.num("extract.ortho_threshold");
    c.max_cores = s.count("extract.max_cores");
    c.flatness = s.num("extract.flatness");
    c.validate();
    return c;
}

/// Input field on `grid` per the input section.
inline Field input_from(const Settings& s, const SpatialGrid& grid) {
    const auto& family = s.str("input.family");
    if (family == "gaussian") {
        const double w = s.num("input.width"), N = s.num("input.N");
        if (!(w > 0.0)) throw InvalidArgument("input.width", "must be positive");
        return sample([w, N](double x) { return std::polar(std::exp(-(x / w) * (x / w)), N * x); }, grid);
    }
    if (family == "power") {
        const double a = s.num("input.alpha");
        if (!(a > 0.5)) throw InvalidArgument("input.alpha", "must exceed 1/2 for an L2 input");
        return sample([a](double x) { return cplx(std::pow(1.0 + std::abs(x), -a)); }, grid);
    }
    const auto fg = dual_grid(grid);
    if (family == "indicator") {
        const double lo = s.num("input.N"), band = s.num("input.band");
        if (!(band > 0.0)) throw InvalidArgument("input.band", "must be positive");
        std::vector<cplx> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (fg.xi(i) >= lo && fg.xi(i) < lo + band) v[i] = 1.0;
        return inverse_transform(Spectrum(grid, std::move(v)));
    }
    if (family == "random") {
        const double band = s.num("input.band");
        const std::size_t modes = s.count("input.modes");
        if (!(band > 0.0)) throw InvalidArgument("input.band", "must be positive");
        if (modes == 0) throw InvalidArgument("input.modes", "must be >= 1");
        std::vector<std::size_t> bins;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::abs(fg.xi(i)) <= band) bins.push_back(i);
        if (bins.empty()) throw InvalidArgument("input.band", "no frequency bins inside the band");
        std::mt19937_64 rng(s.count("run.seed"));
        std::normal_distribution<double> gauss;
        std::uniform_int_distribution<std::size_t> pick(0, bins.size() - 1);
        std::vector<cplx> v(grid.size());
        for (std::size_t k = 0; k < modes; ++k) {
            const double re = gauss(rng), im = gauss(rng);
            v[bins[pick(rng)]] += cplx(re, im);
        }
        return inverse_transform(Spectrum(grid, std::move(v)));
    }
    if (family == "file") {
        if (s.str("input.file").empty()) throw InvalidArgument("input.file", "family = file needs input.file");
        return io::read_field(s.str("input.file"));
    }
    throw InvalidArgument("input.family", "unknown family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct Context {
    const Settings& settings;
    io::Provenance prov;
    std::filesystem::path dir;

    std::ofstream open(const std::string& name) const {
        std::ofstream os(dir / name, std::ios::binary);
        if (!os) throw InvalidArgument("run.output", "cannot write " + (dir / name).string());
        os << prov.line() << '\n';
        return os;
    }

    void dump(const std::string& name, const Field& f) const { io::write_field((dir / name).string(), f, &prov); }
};

inline std::string ratio_cmd(const Context& c) {
    const auto& s = c.settings;
    const auto window = window_from(s);
    const DispersionParams disp(s.num("dispersion.mu"));
    const double w = s.num("input.width");
    if (!(w > 0.0)) throw InvalidArgument("input.width", "must be positive");
    // Room for the mu = 0 spread 4t/w^3 of a width-w input, widened for mu.
    const double length = static_cast<double>(
        detail::pow2_at_least(16.0 * window.t_max * std::max(w, 1.0) * (1.0 + disp.mu())));
    const auto preset = make_grid(0.0, length, detail::pow2_at_least(length / (std::min(w, 1.0) / 4.0)));
    const auto f = input_from(s, grid_from(s, preset));
    const auto& flow = s.str("ratio.flow");
    RatioReport r;
    if (flow == "fourth") r = strichartz_ratio(f, disp, window);
    else if (flow == "schrodinger") r = schrodinger_ratio(f, window);
    else if (flow == "highfreq") r = highfreq_ratio(f, s.num("ratio.N"), window);
    else throw InvalidArgument("ratio.flow", "expected fourth, schrodinger or highfreq");
    auto os = c.open("ratio.csv");
    os << "value,norm6,norm2,tail_bound,T,steps,n,dx,mu\n"
       << io::num(r.value) << ',' << io::num(r.norm6) << ',' << io::num(r.norm2) << ',' << io::num(r.tail_bound) << ','
       << io::num(r.t_max) << ',' << r.steps << ',' << r.n << ',' << io::num(r.dx) << ',' << io::num(r.mu) << '\n';
    if (r.warning) os << "# warning: " << *r.warning << '\n';
    return "ratio " + io::num(r.value) + " (tail bound " + io::num(r.tail_bound) + ")";
}

inline std::string propagate_cmd(const Context& c) {
    const auto& s = c.settings;
    const DispersionParams disp(s.num("dispersion.mu"));
    const auto f = input_from(s, grid_from(s, make_grid(0.0, 64.0, 1024)));
    const double t = s.num("propagate.t"), alpha = s.num("propagate.alpha");
    const auto u = evolve(f, fourth_flow(disp, alpha), t);
    c.dump("initial.csv", f);
    c.dump("evolved.csv", u);
    return "propagated to t=" + io::num(t) + ", L2 " + io::num(l2_norm(f)) + " -> " + io::num(l2_norm(u));
}

inline std::string whitney_cmd(const Context& c) {
    const auto& s = c.settings;
    const auto rep = verify_partition(s.num("whitney.lo"), s.num("whitney.hi"), s.count("whitney.samples"),
                                      s.count("run.seed"));
    auto os = c.open("whitney.csv");
    os << "samples,violations,max_multiplicity,range_lo,range_hi,seed\n"
       << rep.samples << ',' << rep.violations << ',' << rep.max_multiplicity << ',' << io::num(rep.range_lo) << ','
       << io::num(rep.range_hi) << ',' << rep.seed << '\n';
    return "whitney violations=" + std::to_string(rep.violations) +
           " max_multiplicity=" + std::to_string(rep.max_multiplicity);
}

inline std::string refined_cmd(const Context& c) {
    const auto& s = c.settings;
    const double p = s.num("refined.p");
    const auto f = input_from(s, grid_from(s, make_grid(0.0, 64.0, 1024)));
    const auto R = refined_functional(forward_transform(f), p);
    auto os = c.open("refined.csv");
    os << "value,tau_left,tau_right,p\n"
       << io::num(R.value) << ',' << io::num(R.best_interval.left) << ',' << io::num(R.best_interval.right) << ','
       << io::num(p) << '\n';
    std::string summary = "refined functional " + io::num(R.value);
    if (s.flag("refined.inequality")) {
        const double r =
            refined_inequality_ratio(f, DispersionParams(s.num("dispersion.mu")), p, window_from(s));
        auto is = c.open("refined_inequality.csv");
        is << "ratio,p\n" << io::num(r) << ',' << io::num(p) << '\n';
        summary += ", inequality ratio " + io::num(r);
    }
    return summary;
}

inline std::string extract_cmd(const Context& c) {
    const auto& s = c.settings;
    const auto window = window_from(s);
    const auto& scenario = s.str("extract.scenario");
    const DispersionParams disp(s.num("dispersion.mu"));
    const Field f = [&] {
        if (scenario == "planted") {
            const auto sc = planted_three_bubbles();
            return synthesize(sc.bubbles, disp, grid_from(s, sc.grid));
        }
        if (scenario == "input") return input_from(s, grid_from(s, make_grid(0.0, 64.0, 1024)));
        throw InvalidArgument("extract.scenario", "expected planted or input");
    }();
    const auto cfg = extraction_from(s, refined_functional(forward_transform(f), 4.0 / 3.0).value);
    const auto dec = full_decomposition(f, cfg, disp, window);

    auto os = c.open("manifest.csv");
    os << "index,h,xi,x0,t0,core_l2,piece,alpha,functional,stop\n";
    for (std::size_t i = 0; i < dec.profiles.size(); ++i) {
        const auto& p = dec.profiles[i];
        const auto stop = p.piece < dec.core_stop_reasons.size() ? dec.core_stop_reasons[p.piece] : std::string();
        os << i << ',' << io::num(p.params.h) << ',' << io::num(p.params.xi) << ',' << io::num(p.params.x0) << ','
           << io::num(p.params.t0) << ',' << io::num(l2_norm(p.core)) << ',' << p.piece << ',' << p.alpha << ','
           << io::num(p.functional) << ',' << stop << '\n';
        c.dump("core_" + std::to_string(i) + ".csv", p.core);
    }
    c.dump("remainder.csv", dec.remainder);
    auto ds = c.open("diagnostics.csv");
    ds << "delta,profiles,stage_one_pieces,stage_one_gap,l2_gap,reconstruction_residual,converged\n"
       << io::num(dec.delta) << ',' << dec.profiles.size() << ',' << dec.stage_one.pieces.size() << ','
       << io::num(dec.stage_one.pythagoras_gap) << ',' << io::num(dec.l2_gap) << ','
       << io::num(dec.reconstruction_residual) << ',' << (dec.stage_one.converged ? 1 : 0) << '\n';
    return "extracted " + std::to_string(dec.profiles.size()) + " profiles, L2 gap " + io::num(dec.l2_gap);
}

inline std::string decouple_cmd(const Context& c) {
    const auto& s = c.settings;
    const auto window = window_from(s);
    const DispersionParams disp(s.num("dispersion.mu"));
    const auto axis = parse_axis(s.str("decouple.axis"));
    const auto grid = grid_from(s, pair_grid());
    const auto core = gaussian_core(64.0, 1024);
    auto os = c.open("decouple.csv");
    os << "separation,pair_l3,q1_l6,q2_l6,l2_gap,l6_gap,sum_l6,l6_relative\n";
    double last = 0.0;
    for (double sep : s.list("decouple.separations")) {
        const auto r = decoupling_report(bubble_pair(axis, sep, core), disp, window, grid, sep);
        last = r.l6_gap / r.sum_l6;
        os << io::num(sep) << ',' << io::num(r.pair_products[0][1]) << ',' << io::num(r.l6_norms[0]) << ','
           << io::num(r.l6_norms[1]) << ',' << io::num(r.l2_gap) << ',' << io::num(r.l6_gap) << ','
           << io::num(r.sum_l6) << ',' << io::num(last) << '\n';
    }
    return "decoupling sweep along " + s.str("decouple.axis") + ", final l6 gap ratio " + io::num(last);
}

inline std::string converge_cmd(const Context& c) {
    const auto& s = c.settings;
    const auto window = window_from(s);
    const double w = s.num("input.width");
    if (!(w > 0.0)) throw InvalidArgument("input.width", "must be positive");
    const auto f = input_from(s, grid_from(s, schrodinger_grid(w / std::sqrt(2.0), window.t_max)));
    const auto rows = convergence_study(f, s.list("converge.N"), window);
    auto os = c.open("converge.csv");
    os << "N,ratio,gap\n";
    for (const auto& r : rows) os << io::num(r.N) << ',' << io::num(r.ratio) << ',' << io::num(r.gap) << '\n';
    return "convergence final gap " + io::num(rows.back().gap);
}

inline std::string dichotomy_cmd(const Context& c) {
    const auto table = dichotomy_experiment(window_from(c.settings));
    auto os = c.open("dichotomy.csv");
    os << "label,params,ratio,tail_bound,gap\n";
    for (const auto& r : table.rows)
        os << r.label << ',' << r.params << ',' << io::num(r.ratio) << ',' << io::num(r.tail_bound) << ','
           << io::num(r.gap) << '\n';
    os << "# verdict: " << table.verdict << '\n';
    return table.verdict;
}

inline std::string maximize_cmd(const Context& c) {
    const auto& s = c.settings;
    const auto window = window_from(s);
    const auto f0 = input_from(s, grid_from(s, make_grid(0.0, 1024.0, 4096)));
    const auto& flow = s.str("maximize.flow");
    const std::size_t iters = s.count("maximize.iters");
    const double tol = s.num("maximize.step_tol");
    if (flow != "schrodinger" && flow != "fourth")
        throw InvalidArgument("maximize.flow", "expected schrodinger or fourth");
    const auto res = flow == "schrodinger"
                         ? maximize_ratio(f0, schrodinger_flow(), window, iters, tol)
                         : maximize_ratio(f0, DispersionParams(s.num("dispersion.mu")), window, iters, tol);
    auto os = c.open("maximize.csv");
    os << "iteration,ratio\n";
    for (std::size_t i = 0; i < res.trace.size(); ++i) os << i << ',' << io::num(res.trace[i]) << '\n';
    if (res.unstable) os << "# warning: trace decreased beyond tolerance\n";
    c.dump("maximizer.csv", res.f);
    return "maximize ratio " + io::num(res.ratio) + " after " + std::to_string(res.iterations) + " iterations";
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Parses args (without the program name), runs one subcommand and returns
/// the exit status: 0 success, 1 invalid configuration, 2 numerical failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical experiments for the fourth-order Schrodinger equation", "fourthlab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<double> mu, t_max;
    std::optional<std::size_t> steps;
    app.add_option("--config", config_path, "INI file of [section] key = value settings");
    app.add_option("--set", sets, "override one setting, section.key=value")->allow_extra_args(false);
    app.add_option("--out", out_dir, "output directory (run.output)");
    app.add_option("--seed", seed, "run.seed");
    app.add_option("--mu", mu, "dispersion.mu");
    app.add_option("--t-max", t_max, "window.t_max");
    app.add_option("--steps", steps, "window.steps");

    std::map<std::string, std::string> flags;
    const std::map<std::string, std::string> descriptions = {
        {"ratio", "Strichartz quotient of one input"},
        {"propagate", "evolve an input and dump the field"},
        {"whitney", "Monte Carlo check of the Whitney partition"},
        {"refined", "refined frequency functional of an input"},
        {"extract", "two-stage bubble decomposition"},
        {"decouple", "two-bubble decoupling sweep"},
        {"converge", "high-frequency convergence study"},
        {"dichotomy", "extremal ratio table and verdict"},
        {"maximize", "power iteration for the extremal ratio"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, desc] : descriptions) subs[name] = app.add_subcommand(name, desc);

    std::optional<std::size_t> samples;
    std::vector<double> range;
    subs["whitney"]->add_option("--samples", samples, "whitney.samples");
    subs["whitney"]->add_option("--range", range, "whitney.lo whitney.hi")->expected(2);
    std::optional<double> t;
    subs["propagate"]->add_option("--t", t, "propagate.t");
    std::optional<std::size_t> iters;
    subs["maximize"]->add_option("--iters", iters, "maximize.iters");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) command = name;

    try {
        Settings s;
        if (!config_path.empty()) load_config(config_path, s);
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidArgument("set", "expected section.key=value, got '" + kv + "'");
            s.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
        }
        if (!out_dir.empty()) s.set("run.output", out_dir);
        if (seed) s.set("run.seed", std::to_string(*seed));
        if (mu) s.set("dispersion.mu", io::num(*mu));
        if (t_max) s.set("window.t_max", io::num(*t_max));
        if (steps) s.set("window.steps", std::to_string(*steps));
        if (samples) s.set("whitney.samples", std::to_string(*samples));
        if (range.size() == 2) {
            s.set("whitney.lo", io::num(range[0]));
            s.set("whitney.hi", io::num(range[1]));
        }
        if (t) s.set("propagate.t", io::num(*t));
        if (iters) s.set("maximize.iters", std::to_string(*iters));

        // Validate shared sections up front so bad values fail before any work.
        DispersionParams(s.num("dispersion.mu"));
        window_from(s);

        const std::filesystem::path dir = s.str("run.output");
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw InvalidArgument("run.output", "cannot create " + dir.string() + ": " + ec.message());
        Context ctx{s, {command, s.hash(), s.count("run.seed")}, dir};
        {
            auto cfg = ctx.open("config.ini");
            cfg << s.ini();
        }

        std::string summary;
        if (command == "ratio") summary = ratio_cmd(ctx);
        else if (command == "propagate") summary = propagate_cmd(ctx);
        else if (command == "whitney") summary = whitney_cmd(ctx);
        else if (command == "refined") summary = refined_cmd(ctx);
        else if (command == "extract") summary = extract_cmd(ctx);
        else if (command == "decouple") summary = decouple_cmd(ctx);
        else if (command == "converge") summary = converge_cmd(ctx);
        else if (command == "dichotomy") summary = dichotomy_cmd(ctx);
        else summary = maximize_cmd(ctx);
        out << command << ": " << summary << '\n';
        return 0;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace fourthlab::cli
