#pragma once

#include <string>
#include <vector>

#include "fourthlab/bubbles.hpp"

namespace fourthlab {

/// Unit Gaussian core e^{-y^2/2} sampled on [-L/2, L/2).
inline Field gaussian_core(double length, std::size_t n) {
    return sample([](double y) { return cplx(std::exp(-0.5 * y * y)); }, make_grid(0.0, length, n));
}

struct Scenario {
    std::vector<Bubble> bubbles;
    SpatialGrid grid;
    DispersionParams disp;
};

/// Three bubbles at (h, xi, x0, t0) = (4, -300, -100, 0), (8, 0, 0, 128) and
/// (4, 300, 100, 0) with mu = 0. Frequency gaps are 300 against widths
/// 1/h, so every pairwise scale-frequency separation exceeds 10^3.
inline Scenario planted_three_bubbles() {
    const auto core = gaussian_core(64.0, 4096);
    return {{{{4.0, -300.0, -100.0, 0.0}, core}, {{8.0, 0.0, 0.0, 128.0}, core}, {{4.0, 300.0, 100.0, 0.0}, core}},
            make_grid(0.0, 512.0, 65536),
            DispersionParams(0.0)};
}

enum class SeparationAxis { spatial, scale, frequency };

inline SeparationAxis parse_axis(const std::string& s) {
    if (s == "spatial") return SeparationAxis::spatial;
    if (s == "scale") return SeparationAxis::scale;
    if (s == "frequency") return SeparationAxis::frequency;
    throw InvalidArgument("axis", "expected spatial, scale or frequency, got '" + s + "'");
}

/// Two unit Gaussian bubbles separated by `s` along one axis: centres at
/// -+s/2, scales 1 and s, or frequencies 0 and s.
inline std::vector<Bubble> bubble_pair(SeparationAxis axis, double s, const Field& core) {
    switch (axis) {
        case SeparationAxis::spatial: return {{{1.0, 0.0, -0.5 * s, 0.0}, core}, {{1.0, 0.0, 0.5 * s, 0.0}, core}};
        case SeparationAxis::scale: return {{{1.0, 0.0, 0.0, 0.0}, core}, {{s, 0.0, 0.0, 0.0}, core}};
        case SeparationAxis::frequency: return {{{1.0, 0.0, 0.0, 0.0}, core}, {{1.0, s, 0.0, 0.0}, core}};
    }
    throw InvalidArgument("axis", "unknown axis");
}

/// One member of the concentration family f-hat = (2 pi / rho)^{1/2} 1_{|xi| < rho/2}
/// (unit L^2 norm for every rho) with its own grid and window. The window is
/// base.t_max (1 + mu) / (rho^4 + mu rho^2), the time for the top frequency to
/// accumulate the phase it reaches at rho = 1, and the grid holds 64 bins across
/// the band plus the transport of the fastest frequency over the window.
struct ScaledInput {
    Field f;
    TimeWindow window;
};

inline ScaledInput concentration_member(double rho, double mu, const TimeWindow& base) {
    if (!(rho > 0.0)) throw InvalidArgument("rho", "must be positive");
    const auto pow2 = [](double x) { return std::ldexp(1.0, static_cast<int>(std::ceil(std::log2(x)))); };
    TimeWindow w = base.scaled((1.0 + mu) / (std::pow(rho, 4) + mu * rho * rho));
    const double transport = (4.0 * std::pow(0.5 * rho, 3) + mu * rho) * w.t_max;
    const double width = 2.0 * std::numbers::pi * 64.0 / rho;
    const double length = pow2(2.0 * (transport + width));
    const auto g = make_grid(0.0, length, static_cast<std::size_t>(pow2(2.0 * length * rho / std::numbers::pi)));
    const auto fg = dual_grid(g);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(fg.xi(i)) < 0.5 * rho) v[i] = std::sqrt(2.0 * std::numbers::pi / rho);
    const auto f = inverse_transform(Spectrum(g, std::move(v)));
    return {cplx(1.0 / l2_norm(f)) * f, w};
}

/// Grid wide enough for bubble_pair up to s = 1000 over |t| <= 100.
inline SpatialGrid pair_grid() { return make_grid(0.0, 4096.0, 16384); }

}  // namespace fourthlab
