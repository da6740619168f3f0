#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fourthlab/grid.hpp"
#include "fourthlab/spectral.hpp"

namespace fourthlab {

enum class TailPolicy { none, dispersive };
enum class TimeSpacing { uniform, sinh };

/// Truncated time domain [-t_max, t_max] sampled at steps + 1 nodes
/// (t = 0 included) and integrated with the composite trapezoid rule on
/// those nodes. Uniform nodes are t = T u for u on a uniform grid in
/// [-1, 1]; sinh nodes are t = T sinh(k u) / sinh(k), which packs samples
/// near t = 0 where dispersive integrands vary fastest.
struct TimeWindow {
    double t_max = 100.0;
    std::size_t steps = 4000;
    TailPolicy tail_policy = TailPolicy::dispersive;
    TimeSpacing spacing = TimeSpacing::sinh;
    double concentration = 8.0;

    void validate() const {
        if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max", "must be positive");
        if (steps < 2 || steps % 2 != 0) throw InvalidArgument("steps", "must be even and >= 2");
        if (spacing == TimeSpacing::sinh && !(concentration > 0.0))
            throw InvalidArgument("concentration", "must be positive");
    }

    /// Same window in time units stretched by `factor` (t -> factor * t).
    TimeWindow scaled(double factor) const {
        TimeWindow w = *this;
        w.t_max *= factor;
        return w;
    }

    std::vector<double> nodes() const {
        validate();
        std::vector<double> t(steps + 1);
        const std::size_t half = steps / 2;
        const double s = std::sinh(concentration);
        for (std::size_t i = 0; i <= half; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(half);
            const double v = spacing == TimeSpacing::uniform ? t_max * u : t_max * std::sinh(concentration * u) / s;
            t[half + i] = v;
            t[half - i] = -v;
        }
        t[0] = -t_max;
        t[steps] = t_max;
        return t;
    }

    std::vector<double> weights() const {
        const auto t = nodes();
        std::vector<double> w(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double lo = i > 0 ? t[i - 1] : t[i];
            const double hi = i + 1 < t.size() ? t[i + 1] : t[i];
            w[i] = 0.5 * (hi - lo);
        }
        return w;
    }
};

/// Default window for unit-scale inputs.
inline TimeWindow default_window() { return TimeWindow{}; }

/// (sum |f(x_m)|^p dx)^{1/p}; p = infinity gives max |f|.
inline double spatial_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("p", "must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : f.values()) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid().spacing(), 1.0 / p);
}

namespace detail {

inline double slice_lq(std::span<const cplx> u, double q, double dx) {
    double s = 0.0;
    if (q == 6.0) {
        for (const auto& v : u) {
            const double a = std::norm(v);
            s += a * a * a;
        }
    } else if (q == 2.0) {
        for (const auto& v : u) s += std::norm(v);
    } else {
        for (const auto& v : u) s += std::pow(std::abs(v), q);
    }
    return s * dx;
}

inline double slice_sup(std::span<const cplx> u) {
    double m = 0.0;
    for (const auto& v : u) m = std::max(m, std::norm(v));
    return std::sqrt(m);
}

}  // namespace detail

/// Calls fn(t, weight, slice) for every node of the window, in node order.
template <class Fn>
void for_each_slice(const FlowEvaluator& ev, const TimeWindow& window, Fn&& fn) {
    const auto t = window.nodes();
    const auto w = window.weights();
    ev.sweep(t, [&](std::size_t i, std::span<const cplx> u) { fn(t[i], w[i], u); });
}

struct SpacetimeNorm {
    double value = 0.0;
    /// Estimated contribution of |t| > t_max to value^q.
    double tail_bound = 0.0;
    std::optional<std::string> warning;
};

namespace detail {

// Tail of int ||u(t)||_q^q dt beyond |t| > T assuming
// ||u(t)||_inf <= C (1 + |t|)^{-1/2} with C fitted on the outer quarter:
// ||u||_q^q <= ||u||_inf^{q-2} ||u||_2^2.
inline double dispersive_tail(double C, double mass, double q, double T) {
    const double decay = 0.5 * (q - 2.0);
    if (decay <= 1.0) return std::numeric_limits<double>::infinity();
    if (q == 6.0) return 2.0 * std::pow(C, 4.0) * mass / T;
    return 2.0 * std::pow(C, q - 2.0) * mass * std::pow(1.0 + T, 1.0 - decay) / (decay - 1.0);
}

}  // namespace detail

/// (int_{-T}^{T} ||flow(t) f||_{L^q_x}^q dt)^{1/q} by trapezoid in t.
inline SpacetimeNorm spacetime_norm(const Field& f, const Flow& flow, double q, const TimeWindow& window) {
    if (!(q >= 1.0)) throw InvalidArgument("q", "must be >= 1");
    window.validate();
    FlowEvaluator ev(f, flow);
    const double dx = f.grid().spacing();
    double integral = 0.0, C = 0.0;
    const double outer = 0.75 * window.t_max;
    for_each_slice(ev, window, [&](double t, double w, std::span<const cplx> u) {
        integral += w * detail::slice_lq(u, q, dx);
        if (window.tail_policy == TailPolicy::dispersive && std::abs(t) >= outer)
            C = std::max(C, detail::slice_sup(u) * std::sqrt(1.0 + std::abs(t)));
    });
    SpacetimeNorm out;
    out.value = std::pow(integral, 1.0 / q);
    if (window.tail_policy == TailPolicy::dispersive && integral > 0.0) {
        out.tail_bound = detail::dispersive_tail(C, ev.weighted_norm2(), q, window.t_max);
        if (out.tail_bound > 0.01 * integral) {
            std::ostringstream msg;
            msg << "window too small: tail bound " << out.tail_bound << " exceeds 1% of value^q "
                << integral;
            out.warning = msg.str();
        }
    }
    return out;
}

/// ||D_mu^alpha S_mu(t) f||_{L^q_{t,x}} over the window.
inline SpacetimeNorm spacetime_norm(const Field& f, const DispersionParams& disp, double weight_alpha,
                                    double q, const TimeWindow& window) {
    return spacetime_norm(f, fourth_flow(disp, weight_alpha), q, window);
}

/// Strichartz quotient with the metadata needed to reproduce it.
struct RatioReport {
    double value = 0.0;
    double norm6 = 0.0;
    double norm2 = 0.0;
    double tail_bound = 0.0;
    double t_max = 0.0;
    std::size_t steps = 0;
    std::size_t n = 0;
    double dx = 0.0;
    double center = 0.0;
    double mu = 0.0;
    std::string flow;
    std::optional<std::string> warning;
};

/// ||flow(t) f||_{L^6_{t,x}} / ||f||_2.
inline RatioReport strichartz_ratio(const Field& f, const Flow& flow, const TimeWindow& window,
                                    double mu_for_report = 0.0) {
    const double n2 = l2_norm(f);
    if (n2 == 0.0) throw DegenerateInput("f", "zero input has no Strichartz quotient");
    const auto st = spacetime_norm(f, flow, 6.0, window);
    RatioReport r;
    r.norm6 = st.value;
    r.norm2 = n2;
    r.value = st.value / n2;
    r.tail_bound = st.tail_bound;
    r.warning = st.warning;
    r.t_max = window.t_max;
    r.steps = window.steps;
    r.n = f.grid().size();
    r.dx = f.grid().spacing();
    r.center = f.grid().center();
    r.mu = mu_for_report;
    r.flow = flow.name;
    return r;
}

/// ||D_mu^{1/3} S_mu(t) f||_{L^6_{t,x}} / ||f||_2.
inline RatioReport strichartz_ratio(const Field& f, const DispersionParams& disp, const TimeWindow& window) {
    return strichartz_ratio(f, fourth_flow(disp, 1.0 / 3.0), window, disp.mu());
}

/// ||e^{-it Delta} f||_{L^6_{t,x}} / ||f||_2.
inline RatioReport schrodinger_ratio(const Field& f, const TimeWindow& window) {
    return strichartz_ratio(f, schrodinger_flow(), window, 0.0);
}

/// ||D_mu^{2/q} S_mu(t) G||_{L^q_{t,x}} / ||G-hat||_inf for G-hat supported
/// in the ball B(xi0, R), 4 < q < 6.
inline double localized_restriction_ratio(double xi0, double R, double q, const Spectrum& ghat,
                                          const DispersionParams& disp, const TimeWindow& window) {
    if (!(q > 4.0 && q < 6.0)) throw InvalidArgument("q", "must lie in (4, 6)");
    if (!(R > 0.0)) throw InvalidArgument("R", "must be positive");
    double sup = 0.0;
    for (std::size_t i = 0; i < ghat.size(); ++i) {
        const double a = std::abs(ghat[i]);
        if (a != 0.0 && std::abs(ghat.xi(i) - xi0) > R)
            throw InvalidArgument("ghat", "spectrum has mass outside B(xi0, R) at xi = " +
                                              std::to_string(ghat.xi(i)));
        sup = std::max(sup, a);
    }
    if (sup == 0.0) throw DegenerateInput("ghat", "zero spectrum");
    const auto G = inverse_transform(ghat);
    return spacetime_norm(G, fourth_flow(disp, 2.0 / q), q, window).value / sup;
}

}  // namespace fourthlab
