#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fourthlab/quadrature.hpp"
#include "fourthlab/refined.hpp"
#include "fourthlab/spectral.hpp"

namespace fourthlab {

/// Frequency half-width rho and centre xi of one frequency bubble.
struct ScaleFreq {
    double rho = 1.0;
    double xi = 0.0;
};

/// One term of a profile decomposition: S(t0) g[e^{i(.)h xi} core].
struct Bubble {
    ProfileParams params;
    Field core;
};

struct ExtractionConfig {
    double delta = 0.1;
    double p = 4.0 / 3.0;
    double amplitude_constant = 10.0;
    std::size_t max_bubbles = 16;
    double ortho_threshold = 100.0;
    /// Space-time cores extracted per frequency piece.
    std::size_t max_cores = 4;
    /// Matched-filter search: samples over s in [-range, range] * tau_c.
    std::size_t core_samples = 513;
    double core_range = 8.0;
    /// Stop when max/median of the concentration curve falls below this.
    double flatness = 2.0;
    /// Stop when the piece remainder carries less than this share of its energy.
    double energy_floor = 1e-8;
    /// Optional per-stage Strichartz norm of the remainder (costs one window sweep).
    bool strichartz_diagnostic = false;

    void validate() const {
        if (!(delta > 0.0)) throw InvalidArgument("delta", "must be positive");
        if (!(p > 1.0)) throw InvalidArgument("p", "must be > 1");
        if (!(amplitude_constant > 0.0)) throw InvalidArgument("amplitude_constant", "must be positive");
        if (max_bubbles < 1) throw InvalidArgument("max_bubbles", "must be >= 1");
        if (!(ortho_threshold > 0.0)) throw InvalidArgument("ortho_threshold", "must be positive");
        if (core_samples < 3) throw InvalidArgument("core_samples", "must be >= 3");
        if (!(core_range > 0.0)) throw InvalidArgument("core_range", "must be positive");
        if (!(flatness > 1.0)) throw InvalidArgument("flatness", "must exceed 1");
        if (!(energy_floor >= 0.0)) throw InvalidArgument("energy_floor", "must be non-negative");
    }
};

// ---------------------------------------------------------------------------
// Synthesis and separation predicates
// ---------------------------------------------------------------------------

inline Field synthesize(const std::vector<Bubble>& specs, const DispersionParams& disp, const SpatialGrid& grid,
                        const ResolutionChecks& checks = {}) {
    std::vector<cplx> acc(grid.size());
    for (std::size_t j = 0; j < specs.size(); ++j) {
        Field b(grid);
        try {
            b = apply_profile(specs[j].core, specs[j].params, disp, grid, checks);
        } catch (const ResolutionError& e) {
            throw ResolutionError("profile " + std::to_string(j), e.message());
        }
        for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += b[m];
    }
    return Field(grid, std::move(acc));
}

/// rho_a/rho_b + rho_b/rho_a + |xi_a - xi_b| / rho_a.
inline double scale_freq_separation(const ScaleFreq& a, const ScaleFreq& b) {
    if (!(a.rho > 0.0) || !(b.rho > 0.0)) throw InvalidArgument("rho", "must be positive");
    return a.rho / b.rho + b.rho / a.rho + std::abs(a.xi - b.xi) / a.rho;
}

/// |dt|/h^4 + |dt (mu + 6 xi^2)|/h^2 + |x_a - x_b - 2 (t_a - t_b)(2 xi^2 + mu) xi| / h
/// for two profiles sharing (h, xi).
inline double spacetime_separation(const ProfileParams& a, const ProfileParams& b, const DispersionParams& disp) {
    a.validate();
    b.validate();
    const auto close = [](double u, double v) { return std::abs(u - v) <= 1e-12 * std::max({1.0, std::abs(u), std::abs(v)}); };
    if (!close(a.h, b.h) || !close(a.xi, b.xi))
        throw WrongBranchError("h", "profiles differ in (h, xi); use scale_freq_separation instead");
    const double h = a.h, xi = a.xi, dt = b.t0 - a.t0;
    return std::abs(dt) / std::pow(h, 4) + std::abs(dt * disp.derivative_symbol(xi)) / (h * h) +
           std::abs(a.x0 - b.x0 - (a.t0 - b.t0) * disp.group_velocity(xi)) / h;
}

// ---------------------------------------------------------------------------
// Stage one: frequency bubbles
// ---------------------------------------------------------------------------

struct FrequencyPiece {
    ScaleFreq sf;
    Field field;
    /// Raw extraction steps merged into this piece, anchor first.
    std::vector<ScaleFreq> members;
};

struct FrequencyExtraction {
    std::vector<FrequencyPiece> pieces;
    Field remainder;
    /// Refined functional of the running remainder, one entry per iteration.
    std::vector<double> functional_trace;
    /// False when max_bubbles was reached or a step extracted nothing.
    bool converged = true;
    std::size_t raw_count = 0;
    /// ||f||^2 - sum ||f^j||^2 - ||q||^2, computed on the spectra.
    double pythagoras_gap = 0.0;
    std::optional<double> remainder_strichartz;
};

inline FrequencyExtraction extract_frequency_bubbles(const Field& f, const ExtractionConfig& cfg,
                                                     const DispersionParams& disp, const TimeWindow& window) {
    cfg.validate();
    if (l2_norm(f) == 0.0) throw DegenerateInput("f", "zero input has no frequency bubbles");
    const auto& grid = f.grid();
    const auto spec = forward_transform(f);
    const auto fg = spec.fgrid();
    std::vector<cplx> rest(spec.values().begin(), spec.values().end());

    struct Raw {
        ScaleFreq sf;
        std::vector<cplx> spectrum;
    };
    std::vector<Raw> raw;
    FrequencyExtraction out{{}, Field(grid), {}, true, 0, 0.0, std::nullopt};
    while (true) {
        const auto R = refined_functional(Spectrum(grid, rest), cfg.p);
        out.functional_trace.push_back(R.value);
        if (R.value < cfg.delta) break;
        if (raw.size() >= cfg.max_bubbles) {
            out.converged = false;
            break;
        }
        const ScaleFreq sf{0.5 * R.best_interval.length(), R.best_interval.center()};
        const double cap = cfg.amplitude_constant / std::sqrt(sf.rho);
        Raw step{sf, std::vector<cplx>(rest.size())};
        bool any = false;
        // Bins are moved, not copied: supports stay disjoint.
        for (std::size_t i = R.first_bin; i < R.first_bin + R.bins; ++i)
            if (rest[i] != cplx{} && std::abs(rest[i]) <= cap) {
                std::swap(step.spectrum[i], rest[i]);
                any = true;
            }
        if (!any) {
            out.converged = false;
            break;
        }
        raw.push_back(std::move(step));
    }
    out.raw_count = raw.size();

    // Regroup: each raw step joins the first group whose anchor is closer
    // than the orthogonality threshold, otherwise it anchors a new group.
    struct Group {
        ScaleFreq sf;
        std::vector<cplx> spectrum;
        std::vector<ScaleFreq> members;
    };
    std::vector<Group> groups;
    for (auto& item : raw) {
        Group* home = nullptr;
        for (auto& g : groups)
            if (scale_freq_separation(g.sf, item.sf) < cfg.ortho_threshold) {
                home = &g;
                break;
            }
        if (!home) {
            groups.push_back({item.sf, std::move(item.spectrum), {item.sf}});
            continue;
        }
        for (std::size_t i = 0; i < item.spectrum.size(); ++i) home->spectrum[i] += item.spectrum[i];
        home->members.push_back(item.sf);
    }

    const double dxi = fg.spacing();
    const auto energy = [dxi](std::span<const cplx> v) {
        double e = 0.0;
        for (const auto& z : v) e += std::norm(z);
        return e * dxi / (2.0 * std::numbers::pi);
    };
    double gap = energy(spec.values()) - energy(rest);
    for (auto& g : groups) {
        gap -= energy(g.spectrum);
        out.pieces.push_back({g.sf, inverse_transform(Spectrum(grid, std::move(g.spectrum))), std::move(g.members)});
    }
    out.pythagoras_gap = gap;
    out.remainder = inverse_transform(Spectrum(grid, std::move(rest)));
    if (cfg.strichartz_diagnostic && l2_norm(out.remainder) > 0.0)
        out.remainder_strichartz = spacetime_norm(out.remainder, fourth_flow(disp, 1.0 / 3.0), 6.0, window).value;
    return out;
}

// ---------------------------------------------------------------------------
// Stage two: space-time cores by matched filtering
// ---------------------------------------------------------------------------

struct CoreExtraction {
    std::vector<Bubble> cores;
    Field remainder;
    /// Concentration curve max/median of the round that stopped the search.
    double last_contrast = 0.0;
    std::string stop_reason;
};

namespace detail {

inline double median(std::vector<double> v) {
    const auto mid = v.begin() + static_cast<long>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

inline double sup_at(const FlowEvaluator& ev, double s, std::vector<cplx>& buf) {
    ev.slice(-s, buf);
    return slice_sup(buf);
}

}  // namespace detail

/// Rescaled symbol psi(eta) = [phi(xi + rho eta) - phi(xi) - phi'(xi) rho eta] / rho^4.
inline Flow core_flow(const DispersionParams& disp, const ScaleFreq& sf) {
    return Flow{"core",
                [disp, sf](double eta) {
                    const double e = sf.rho * eta;
                    return (disp.symbol(sf.xi + e) - disp.symbol(sf.xi) - disp.group_velocity(sf.xi) * e) /
                           std::pow(sf.rho, 4);
                },
                [](double) { return 1.0; }};
}

/// Matched-filter stand-in for the weak-limit core extraction. The piece is
/// demodulated and rescaled to P-hat(eta) = rho^{1/2} piece-hat(xi + rho eta),
/// the time shift is the argmax of ||S_psi(-s) P||_inf over a sample grid
/// and the space shift is the position of that maximum.
inline CoreExtraction extract_spacetime_core(const Field& piece, const ScaleFreq& sf, const DispersionParams& disp,
                                             std::size_t M, const ExtractionConfig& cfg = {}) {
    cfg.validate();
    if (!(sf.rho > 0.0)) throw InvalidArgument("rho", "must be positive");
    const auto& g = piece.grid();
    const std::size_t n = g.size();
    const auto fg = dual_grid(g);
    const std::size_t ks = fg.index_of(sf.xi);
    if (ks >= n) throw InvalidArgument("xi", "frequency centre outside the grid band");
    const double xi = fg.xi(ks);
    const double rho = sf.rho;
    const long shift = static_cast<long>(ks) - static_cast<long>(n / 2);
    const SpatialGrid cg(0.0, rho * g.spacing(), n);
    const Flow psi = core_flow(disp, {rho, xi});
    const auto piece_spec = forward_transform(piece);
    // Natural time scale 1 / psi(sigma) at the rms width sigma of P-hat.
    double e0 = 0.0, e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double eta = (fg.xi(i) - xi) / rho, e = std::norm(piece_spec[i]);
        e0 += e;
        e1 += e * eta;
        e2 += e * eta * eta;
    }
    const double sigma = e0 > 0.0 ? std::sqrt(std::max(e2 / e0 - (e1 / e0) * (e1 / e0), 0.0)) : 1.0;
    const double tau_c = 1.0 / std::max(psi.phase(sigma), psi.phase(-sigma));
    const double s_max = cfg.core_range * tau_c;

    const double total = std::pow(l2_norm(piece), 2);
    CoreExtraction out{{}, piece, 0.0, "max_cores"};
    if (M == 0) return out;
    if (total == 0.0) {
        out.stop_reason = "empty";
        return out;
    }

    struct Hit {
        double s, y;
    };
    std::vector<Hit> hits;
    std::vector<cplx> buf(n);
    const double sqrt_rho = std::sqrt(rho);
    for (std::size_t round = 0; round < M; ++round) {
        const auto rem_spec = forward_transform(out.remainder);
        std::vector<cplx> pv(n);
        for (std::size_t i = 0; i < n; ++i) {
            const long j = static_cast<long>(i) + shift;
            if (j >= 0 && j < static_cast<long>(n)) pv[i] = sqrt_rho * rem_spec[static_cast<std::size_t>(j)];
        }
        const Field P = inverse_transform(Spectrum(cg, std::move(pv)));
        const FlowEvaluator ev(P, psi);

        const std::size_t K = cfg.core_samples;
        std::vector<double> curve(K), ss(K);
        std::size_t kbest = 0;
        for (std::size_t k = 0; k < K; ++k) {
            ss[k] = -s_max + 2.0 * s_max * static_cast<double>(k) / static_cast<double>(K - 1);
            curve[k] = detail::sup_at(ev, ss[k], buf);
            if (curve[k] > curve[kbest]) kbest = k;
        }
        const double med = detail::median(curve);
        out.last_contrast = med > 0.0 ? curve[kbest] / med : 0.0;
        if (out.last_contrast < cfg.flatness) {
            out.stop_reason = "flat";
            break;
        }
        // Golden-section refinement between the neighbouring samples.
        double a = ss[kbest > 0 ? kbest - 1 : 0], b = ss[std::min(kbest + 1, K - 1)];
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = detail::sup_at(ev, c1, buf), f2 = detail::sup_at(ev, c2, buf);
        for (int it = 0; it < 40; ++it) {
            if (f1 > f2) {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - gr * (b - a);
                f1 = detail::sup_at(ev, c1, buf);
            } else {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + gr * (b - a);
                f2 = detail::sup_at(ev, c2, buf);
            }
        }
        double s_star = 0.5 * (a + b);
        if (detail::sup_at(ev, s_star, buf) < curve[kbest]) s_star = ss[kbest];

        ev.slice(-s_star, buf);
        std::size_t mstar = 0;
        for (std::size_t m = 1; m < n; ++m)
            if (std::norm(buf[m]) > std::norm(buf[mstar])) mstar = m;
        const double y_star = cg.x(mstar);

        const double period = cg.length();
        bool too_close = false;
        for (const auto& h : hits) {
            double dy = std::fmod(std::abs(y_star - h.y), period);
            dy = std::min(dy, period - dy);
            const double ds = std::abs(s_star - h.s);
            if (ds + ds * disp.derivative_symbol(xi) / (rho * rho) + dy < cfg.ortho_threshold) too_close = true;
        }
        if (too_close) {
            out.stop_reason = "separation";
            break;
        }

        // Window radius: where |u| first drops below 1e-8 of its peak on
        // either side of the maximum, widened by half for a cosine taper.
        const double peak = std::abs(buf[mstar]);
        std::size_t reach = 1;
        const std::size_t cap = n / 4;
        for (int side : {-1, 1}) {
            std::size_t r = 1;
            while (r < cap) {
                const std::size_t m = (mstar + n + static_cast<std::size_t>(side) * r) % n;
                if (std::abs(buf[m]) < 1e-8 * peak) break;
                ++r;
            }
            reach = std::max(reach, r);
        }
        const double inner = static_cast<double>(reach), outer = std::min(1.5 * inner + 4.0, static_cast<double>(n / 2 - 1));

        ProfileParams params;
        params.h = 1.0 / rho;
        params.xi = xi;
        params.t0 = s_star / std::pow(rho, 4);
        double x0 = y_star / rho + params.t0 * disp.group_velocity(xi);
        x0 = g.first() + std::fmod(std::fmod(x0 - g.first(), g.length()) + g.length(), g.length());
        params.x0 = x0;
        const cplx c = std::polar(1.0, params.t0 * disp.symbol(xi) - x0 * xi);

        std::vector<cplx> core(n);
        for (std::size_t m = 0; m < n; ++m) {
            const long off = static_cast<long>(m) - static_cast<long>(n / 2);
            const double d = std::abs(static_cast<double>(off));
            double w = 1.0;
            if (d > outer)
                w = 0.0;
            else if (d > inner) {
                const double z = (d - inner) / (outer - inner);
                w = std::pow(std::cos(0.5 * std::numbers::pi * z), 2);
            }
            if (w == 0.0) continue;
            const std::size_t src = (mstar + n + static_cast<std::size_t>(off + static_cast<long>(n))) % n;
            core[m] = std::conj(c) * w * buf[src];
        }
        // Project onto the band occupied by the original piece.
        auto core_spec = forward_transform(Field(cg, std::move(core)));
        std::vector<cplx> cs = std::move(core_spec).release();
        for (std::size_t i = 0; i < n; ++i) {
            const long j = static_cast<long>(i) + shift;
            if (j < 0 || j >= static_cast<long>(n) || piece_spec[static_cast<std::size_t>(j)] == cplx{}) cs[i] = 0.0;
        }
        Field core_field = inverse_transform(Spectrum(cg, std::move(cs)));
        const Field resynth = apply_profile(core_field, params, disp, g, ResolutionChecks{false, false, 0.0});
        out.remainder = out.remainder - resynth;
        out.cores.push_back({params, std::move(core_field)});
        hits.push_back({s_star, y_star});
        if (std::pow(l2_norm(out.remainder), 2) < cfg.energy_floor * total) {
            out.stop_reason = "energy_floor";
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Full decomposition
// ---------------------------------------------------------------------------

struct Profile {
    ProfileParams params;
    Field core;
    /// Frequency piece index j and core index alpha within it.
    std::size_t piece = 0;
    std::size_t alpha = 0;
    ScaleFreq sf;
    /// Refined functional of the resynthesized bubble.
    double functional = 0.0;
};

struct BubbleDecomposition {
    std::vector<Profile> profiles;
    Field remainder;
    double delta = 0.0;
    FrequencyExtraction stage_one;
    std::vector<std::string> core_stop_reasons;
    /// |‖f‖² - Σ‖φ^j‖² - ‖remainder‖²| / ‖f‖².
    double l2_gap = 0.0;
    /// ‖Σ resynthesized + remainder - f‖ / ‖f‖.
    double reconstruction_residual = 0.0;
};

inline BubbleDecomposition full_decomposition(const Field& f, const ExtractionConfig& cfg, const DispersionParams& disp,
                                              const TimeWindow& window) {
    cfg.validate();
    BubbleDecomposition out{{}, f, cfg.delta, {{}, f, {}, true, 0, 0.0, std::nullopt}, {}, 0.0, 0.0};
    const double norm = l2_norm(f);
    if (norm == 0.0) return out;
    const auto& g = f.grid();
    out.stage_one = extract_frequency_bubbles(f, cfg, disp, window);

    std::vector<cplx> rem(out.stage_one.remainder.values().begin(), out.stage_one.remainder.values().end());
    std::vector<cplx> recon(g.size());
    double core_energy = 0.0;
    for (std::size_t j = 0; j < out.stage_one.pieces.size(); ++j) {
        const auto& piece = out.stage_one.pieces[j];
        auto cores = extract_spacetime_core(piece.field, piece.sf, disp, cfg.max_cores, cfg);
        out.core_stop_reasons.push_back(cores.stop_reason);
        for (std::size_t m = 0; m < rem.size(); ++m) rem[m] += cores.remainder[m];
        for (std::size_t a = 0; a < cores.cores.size(); ++a) {
            auto& b = cores.cores[a];
            const Field bubble = apply_profile(b.core, b.params, disp, g, ResolutionChecks{false, false, 0.0});
            for (std::size_t m = 0; m < recon.size(); ++m) recon[m] += bubble[m];
            core_energy += std::pow(l2_norm(b.core), 2);
            const double fun = refined_functional(forward_transform(bubble), cfg.p).value;
            out.profiles.push_back({b.params, std::move(b.core), j, a, piece.sf, fun});
        }
    }
    std::stable_sort(out.profiles.begin(), out.profiles.end(), [](const Profile& a, const Profile& b) {
        const auto ka = a.piece + a.alpha, kb = b.piece + b.alpha;
        return ka != kb ? ka < kb : a.piece < b.piece;
    });
    out.remainder = Field(g, std::move(rem));
    const double n2 = norm * norm;
    const double r2 = std::pow(l2_norm(out.remainder), 2);
    out.l2_gap = std::abs(n2 - core_energy - r2) / n2;
    double diff = 0.0;
    for (std::size_t m = 0; m < recon.size(); ++m) diff += std::norm(recon[m] + out.remainder[m] - f[m]);
    out.reconstruction_residual = std::sqrt(diff * g.spacing()) / norm;
    return out;
}

// ---------------------------------------------------------------------------
// Decoupling diagnostics
// ---------------------------------------------------------------------------

struct DecouplingReport {
    double separation_scale = 0.0;
    /// |‖Σ bubbles‖₂² - Σ‖φ^j‖₂²|.
    double l2_gap = 0.0;
    /// |‖Σ Q^j‖₆⁶ - Σ‖Q^j‖₆⁶| with Q^j = D^{1/3} S(t) bubble_j.
    double l6_gap = 0.0;
    double sum_l6 = 0.0;
    std::vector<double> l6_norms;
    /// pair_products[j][k] = ‖Q^j Q^k‖_{L³_{t,x}}.
    std::vector<std::vector<double>> pair_products;
};

inline DecouplingReport decoupling_report(const std::vector<Bubble>& specs, const DispersionParams& disp,
                                          const TimeWindow& window, const SpatialGrid& grid,
                                          double separation_scale = 0.0, const ResolutionChecks& checks = {}) {
    const std::size_t J = specs.size();
    DecouplingReport rep;
    rep.separation_scale = separation_scale;
    rep.l6_norms.assign(J, 0.0);
    rep.pair_products.assign(J, std::vector<double>(J, 0.0));
    if (J == 0) return rep;

    std::vector<FlowEvaluator> evs;
    std::vector<cplx> total(grid.size());
    double core_energy = 0.0;
    const Flow flow = fourth_flow(disp, 1.0 / 3.0);
    for (std::size_t j = 0; j < J; ++j) {
        Field b(grid);
        try {
            b = apply_profile(specs[j].core, specs[j].params, disp, grid, checks);
        } catch (const ResolutionError& e) {
            throw ResolutionError("profile " + std::to_string(j), e.message());
        }
        for (std::size_t m = 0; m < total.size(); ++m) total[m] += b[m];
        core_energy += std::pow(l2_norm(specs[j].core), 2);
        evs.emplace_back(b, flow);
    }
    rep.l2_gap = std::abs(std::pow(l2_norm(Field(grid, total)), 2) - core_energy);

    const auto t = window.nodes();
    const auto w = window.weights();
    const double dx = grid.spacing();
    std::vector<std::vector<cplx>> q(J, std::vector<cplx>(grid.size()));
    std::vector<double> sixth(J, 0.0);
    std::vector<std::vector<double>> cross(J, std::vector<double>(J, 0.0));
    double sum_sixth = 0.0;
    // Every bubble lives on the same grid under the same flow, so one set of
    // phase factors serves all of them.
    detail::PhaseStepper stepper(evs.front().phase());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto rot = stepper.advance(i, t);
        for (std::size_t j = 0; j < J; ++j) evs[j].slice_rotated(rot, q[j]);
        double s_sum = 0.0;
        for (std::size_t m = 0; m < grid.size(); ++m) {
            cplx z = 0.0;
            for (std::size_t j = 0; j < J; ++j) z += q[j][m];
            const double a = std::norm(z);
            s_sum += a * a * a;
        }
        sum_sixth += w[i] * s_sum * dx;
        for (std::size_t j = 0; j < J; ++j) {
            sixth[j] += w[i] * detail::slice_lq(q[j], 6.0, dx);
            for (std::size_t k = j + 1; k < J; ++k) {
                double c = 0.0;
                for (std::size_t m = 0; m < grid.size(); ++m) {
                    const double a = std::abs(q[j][m] * q[k][m]);
                    c += a * a * a;
                }
                cross[j][k] += w[i] * c * dx;
            }
        }
    }
    for (std::size_t j = 0; j < J; ++j) {
        rep.l6_norms[j] = std::pow(sixth[j], 1.0 / 6.0);
        rep.sum_l6 += sixth[j];
        rep.pair_products[j][j] = std::cbrt(sixth[j]);
        for (std::size_t k = j + 1; k < J; ++k) rep.pair_products[j][k] = rep.pair_products[k][j] = std::cbrt(cross[j][k]);
    }
    rep.l6_gap = std::abs(sum_sixth - rep.sum_l6);
    return rep;
}

}  // namespace fourthlab
