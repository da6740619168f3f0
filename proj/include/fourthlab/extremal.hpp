#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fourthlab/quadrature.hpp"
#include "fourthlab/spectral.hpp"

namespace fourthlab {

/// Sharp constant of ||e^{-it Delta} f||_{L^6_{t,x}} <= S ||f||_2 in one dimension.
inline const double schrodinger_constant = std::pow(12.0, -1.0 / 12.0);

/// Reference quadrature tolerance for the default window.
inline constexpr double quadrature_tolerance = 1e-3;

namespace detail {
inline std::size_t pow2_at_least(double x) {
    return std::bit_ceil(static_cast<std::size_t>(std::max(4.0, std::ceil(x))));
}
}  // namespace detail

/// Grid for a Gaussian of width a evolved by e^{-it Delta} up to |t| = T:
/// spacing a/4, length covering the spread 2T/a with a margin.
inline SpatialGrid schrodinger_grid(double a, double T) {
    const double length = static_cast<double>(detail::pow2_at_least(std::max(64.0 * a, 20.0 * T / a)));
    const double dx = a / 4.0;
    return SpatialGrid(0.0, length / static_cast<double>(detail::pow2_at_least(length / dx)),
                       detail::pow2_at_least(length / dx));
}

struct OracleResult {
    double exact = 0.0;
    double numeric = 0.0;
};

/// e^{-x^2/(2a^2)} under e^{-it Delta}: |u|^2 = (1 + 4t^2/a^4)^{-1/2} e^{-x^2/(a^2 + 4t^2/a^2)}
/// gives ratio^6 = 12^{-1/2} for every a.
inline OracleResult gaussian_schrodinger_oracle(double a, const TimeWindow& window) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("a", "width must be positive");
    const auto grid = schrodinger_grid(a, window.t_max * a * a);
    const auto f = sample([a](double x) { return cplx(std::exp(-x * x / (2.0 * a * a))); }, grid);
    // Time scales like a^2 for this width.
    const auto r = schrodinger_ratio(f, window.scaled(a * a));
    return {schrodinger_constant, r.value};
}

/// ||D^{1/3} S(t)[e^{ixN} phi]||_6 / ||phi||_2 through the rescaled flow
/// (t' = 6N^2 t, x' = x + 4N^3 t). The window is in t' units.
inline RatioReport highfreq_ratio(const Field& phi, double N, const TimeWindow& window) {
    if (!(N > 0.0) || !std::isfinite(N)) throw InvalidArgument("N", "must be positive");
    const double band = rms_bandwidth(forward_transform(phi));
    if (band >= 0.5 * N)
        throw InvalidArgument("N", "rms bandwidth " + std::to_string(band) + " of phi is not below N/2 = " +
                                       std::to_string(0.5 * N) + "; the high-frequency expansion does not apply");
    return strichartz_ratio(phi, highfreq_flow(N), window, 0.0);
}

struct ConvergenceRow {
    double N = 0.0;
    double ratio = 0.0;
    double gap = 0.0;
};

/// highfreq_ratio over Ns against the Schrodinger quotient of the same phi.
inline std::vector<ConvergenceRow> convergence_study(const Field& phi, const std::vector<double>& Ns,
                                                     const TimeWindow& window) {
    if (Ns.empty()) throw InvalidArgument("Ns", "need at least one frequency");
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (!(Ns[i] > Ns[i - 1])) throw InvalidArgument("Ns", "must be strictly increasing");
    const double base = schrodinger_ratio(phi, window).value;
    std::vector<ConvergenceRow> rows;
    for (double N : Ns) {
        const double r = highfreq_ratio(phi, N, window).value;
        rows.push_back({N, r, r - base});
    }
    return rows;
}

struct DichotomyRow {
    std::string label;
    std::string params;
    double ratio = 0.0;
    double tail_bound = 0.0;
    double gap = 0.0;
};

struct DichotomyTable {
    std::vector<DichotomyRow> rows;
    double reference = schrodinger_constant;
    double max_ratio = 0.0;
    /// Largest ratio over the modulated-Gaussian rows (direct and rescaled).
    double modulated_max = 0.0;
    std::string verdict;
};

namespace detail {

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Grid for a modulated Gaussian e^{ixN} e^{-x^2} evolved over |t| <= T/(6N^2):
// the packet travels (2/3) N T and spreads to a few times T.
inline SpatialGrid modulated_grid(double N, double T) {
    const double length = static_cast<double>(pow2_at_least(2.0 * (2.0 / 3.0 * N * T + 6.0 * T)));
    const double dx = std::numbers::pi / (N + 12.0);
    return SpatialGrid(0.0, length / static_cast<double>(pow2_at_least(length / dx)), pow2_at_least(length / dx));
}

}  // namespace detail

/// Grid for e^{-(x/w)^2} under S_0 over |t| <= w^4 T: the stationary point
/// at xi = 0 spreads the wave to |x| ~ 4 t / w^3.
inline SpatialGrid free_gaussian_grid(double w, double T) {
    if (!(w > 0.0)) throw InvalidArgument("w", "width must be positive");
    const double length = static_cast<double>(detail::pow2_at_least(16.0 * T * w));
    return SpatialGrid(0.0, w / 4.0, detail::pow2_at_least(length / (w / 4.0)));
}

/// The mu = 0 quotient for Gaussians, power tails, modulated Gaussians and
/// two rescaled high-frequency points, with a verdict against 12^{-1/12}.
inline DichotomyTable dichotomy_experiment(const TimeWindow& window) {
    window.validate();
    const DispersionParams free_flow(0.0);
    const double T = window.t_max;
    DichotomyTable table;
    const auto push = [&](std::string label, std::string params, const RatioReport& r) {
        table.rows.push_back({std::move(label), std::move(params), r.value, r.tail_bound, r.value - table.reference});
    };

    for (double w : {0.5, 1.0, 2.0}) {
        // S_0 scales time by w^4 for the width-w input.
        const auto grid = free_gaussian_grid(w, T);
        const auto f = sample([w](double x) { return cplx(std::exp(-(x / w) * (x / w))); }, grid);
        push("gaussian", detail::fmt("width=%g", w), strichartz_ratio(f, free_flow, window.scaled(std::pow(w, 4))));
    }
    for (double alpha : {0.6, 1.0, 2.0}) {
        const auto grid = make_grid(0.0, 4096.0, 32768);
        const auto f = sample([alpha](double x) { return cplx(std::pow(1.0 + std::abs(x), -alpha)); }, grid);
        push("power", detail::fmt("alpha=%g", alpha), strichartz_ratio(f, free_flow, window));
    }
    for (double N : {0.0, 2.0, 4.0, 8.0}) {
        const double scale = N > 0.0 ? 1.0 / (6.0 * N * N) : 1.0;
        const auto grid = N > 0.0 ? detail::modulated_grid(N, T) : make_grid(0.0, 1024.0, 8192);
        const auto f = sample([N](double x) { return std::polar(std::exp(-x * x), N * x); }, grid);
        push("modulated", detail::fmt("N=%g", N), strichartz_ratio(f, free_flow, window.scaled(scale)));
        table.modulated_max = std::max(table.modulated_max, table.rows.back().ratio);
    }
    for (double N : {16.0, 64.0}) {
        const auto grid = schrodinger_grid(1.0 / std::sqrt(2.0), T);
        const auto f = sample([](double x) { return cplx(std::exp(-x * x)); }, grid);
        push("highfreq", detail::fmt("N=%g", N), highfreq_ratio(f, N, window));
        table.modulated_max = std::max(table.modulated_max, table.rows.back().ratio);
    }

    std::size_t best = 0;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        if (table.rows[i].ratio > table.rows[best].ratio) best = i;
    table.max_ratio = table.rows[best].ratio;
    const double threshold = table.reference + 3.0 * quadrature_tolerance;
    if (table.max_ratio > threshold)
        table.verdict = "candidate exceeds Schrodinger baseline by " +
                        detail::fmt("%.6g", table.max_ratio - table.reference) + " (" + table.rows[best].label +
                        " " + table.rows[best].params + ")";
    else
        table.verdict = "inconclusive - consistent with S = S_schr (max ratio " + detail::fmt("%.6g", table.max_ratio) +
                        ", threshold " + detail::fmt("%.6g", threshold) + ")";
    return table;
}

struct MaximizeResult {
    Field f;
    double ratio = 0.0;
    std::vector<double> trace;
    std::size_t iterations = 0;
    /// Set when the trace dropped by more than 10x the quadrature tolerance.
    bool unstable = false;
};

/// Nonlinear power iteration f <- T*(|Tf|^4 Tf) / ||.||_2 for T the flow over
/// the window. The adjoint reuses the trapezoid weights of the norm, so the
/// discrete functional is convex and the iteration is an ascent method.
inline MaximizeResult maximize_ratio(const Field& f0, const Flow& flow, const TimeWindow& window, std::size_t iters,
                                     double step_tol, double tolerance = 1e-9) {
    if (l2_norm(f0) == 0.0) throw DegenerateInput("f0", "zero start");
    if (!(step_tol >= 0.0)) throw InvalidArgument("step_tol", "must be non-negative");
    window.validate();
    const auto& grid = f0.grid();
    const std::size_t n = grid.size();
    const auto t = window.nodes();
    const auto w = window.weights();
    const auto fg = dual_grid(grid);
    std::vector<double> weight(n), phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = detail::dft_index(i, n);
        weight[j] = flow.weight(fg.xi(i));
        phase[j] = flow.phase(fg.xi(i));
    }

    // Work in DFT order on normalized coefficients c (f = IFFT(c) / n).
    const auto to_coeffs = [&](const Field& f) {
        std::vector<cplx> c(f.values().begin(), f.values().end());
        detail::fft_forward(c);
        return c;
    };
    std::vector<cplx> c = to_coeffs(f0);
    const auto normalize = [&](std::vector<cplx>& v) {
        double s = 0.0;
        for (const auto& z : v) s += std::norm(z);
        const double norm = std::sqrt(s / static_cast<double>(n) * grid.spacing());
        if (!(norm > 0.0) || !std::isfinite(norm)) throw DegenerateInput("f", "iterate vanished");
        for (auto& z : v) z /= norm;
    };
    normalize(c);

    MaximizeResult out{f0, 0.0, {}, 0, false};
    std::vector<cplx> u(n), g(n);
    const double dx = grid.spacing();
    const double inv_n = 1.0 / static_cast<double>(n);
    // One pass over the window: returns ||Tc||_6 and, if requested, the
    // dual element sum_t w_t W e^{-it phase} FFT(|u_t|^4 u_t) in g.
    const auto sweep = [&](bool with_gradient) {
        double sixth = 0.0;
        if (with_gradient) std::fill(g.begin(), g.end(), cplx{});
        detail::PhaseStepper stepper(phase);
        for (std::size_t k = 0; k < t.size(); ++k) {
            const auto rot = stepper.advance(k, t);
            for (std::size_t j = 0; j < n; ++j) u[j] = c[j] * weight[j] * rot[j] * inv_n;
            detail::fft_inverse(u);
            double s = 0.0;
            for (auto& z : u) {
                const double a = std::norm(z);
                s += a * a * a;
                z *= a * a;
            }
            sixth += w[k] * s * dx;
            if (!with_gradient) continue;
            detail::fft_forward(u);
            for (std::size_t j = 0; j < n; ++j) g[j] += w[k] * weight[j] * std::conj(rot[j]) * u[j];
        }
        return std::pow(sixth, 1.0 / 6.0);
    };

    double prev = sweep(true);
    out.trace.push_back(prev);
    for (std::size_t it = 0; it < iters; ++it) {
        c.swap(g);
        normalize(c);
        ++out.iterations;
        const bool last = it + 1 == iters;
        const double r = sweep(!last);
        out.trace.push_back(r);
        if (r < prev - 10.0 * tolerance * std::max(1.0, prev)) out.unstable = true;
        const bool done = std::abs(r - prev) < step_tol;
        prev = r;
        if (done) break;
    }
    std::vector<cplx> vals = c;
    detail::fft_inverse(vals);
    for (auto& z : vals) z /= static_cast<double>(n);
    out.f = Field(grid, std::move(vals));
    out.ratio = prev;
    return out;
}

inline MaximizeResult maximize_ratio(const Field& f0, const DispersionParams& disp, const TimeWindow& window,
                                     std::size_t iters, double step_tol) {
    return maximize_ratio(f0, fourth_flow(disp, 1.0 / 3.0), window, iters, step_tol);
}

}  // namespace fourthlab
