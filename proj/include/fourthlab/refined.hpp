#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "fourthlab/quadrature.hpp"
#include "fourthlab/spectral.hpp"

namespace fourthlab {

/// Half-open frequency interval [left, right).
struct Interval {
    double left = 0.0;
    double right = 0.0;

    double length() const noexcept { return right - left; }
    double center() const noexcept { return 0.5 * (left + right); }
    bool contains(double x) const noexcept { return left <= x && x < right; }
};

struct RefinedResult {
    double value = 0.0;
    Interval best_interval;
    double p = 4.0 / 3.0;
    /// Bin range of best_interval: [first_bin, first_bin + bins).
    std::size_t first_bin = 0;
    std::size_t bins = 0;
};

/// |tau|^{1/2 - 1/p} (int_tau |F|^p)^{1/p} for tau the union of `bins` cells
/// starting at `first`; cell i covers [xi_i - dxi/2, xi_i + dxi/2).
inline double refined_objective(const Spectrum& F, double p, std::size_t first, std::size_t bins) {
    if (!(p > 1.0)) throw InvalidArgument("p", "must be > 1");
    if (bins == 0 || first + bins > F.size()) throw InvalidArgument("bins", "window outside the spectrum");
    const double dxi = F.fgrid().spacing();
    double s = 0.0;
    for (std::size_t i = first; i < first + bins; ++i) s += std::pow(std::abs(F[i]), p);
    return std::pow(static_cast<double>(bins) * dxi, 0.5 - 1.0 / p) * std::pow(dxi * s, 1.0 / p);
}

/// sup over windows of 2^j bins at every offset, via prefix sums of |F|^p.
inline RefinedResult refined_functional(const Spectrum& F, double p = 4.0 / 3.0) {
    if (!(p > 1.0)) throw InvalidArgument("p", "must be > 1");
    const std::size_t n = F.size();
    const auto fg = F.fgrid();
    const double dxi = fg.spacing();
    std::vector<long double> prefix(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::pow(std::abs(F[i]), p);

    RefinedResult best;
    best.p = p;
    if (prefix[n] == 0.0L) return best;
    for (std::size_t w = 1; w <= n; w *= 2) {
        long double top = -1.0L;
        std::size_t at = 0;
        for (std::size_t s = 0; s + w <= n; ++s) {
            const long double sum = prefix[s + w] - prefix[s];
            if (sum > top) {
                top = sum;
                at = s;
            }
        }
        const double mass = std::max(0.0, static_cast<double>(top));
        const double value = std::pow(static_cast<double>(w) * dxi, 0.5 - 1.0 / p) * std::pow(dxi * mass, 1.0 / p);
        if (value > best.value) {
            best.value = value;
            best.first_bin = at;
            best.bins = w;
        }
    }
    best.best_interval = {fg.xi(best.first_bin) - 0.5 * dxi, fg.xi(best.first_bin + best.bins - 1) + 0.5 * dxi};
    return best;
}

/// ||D^{1/3} S(t) f||_{L^6} / (refined_functional(f-hat, p)^{1/3} ||f||_2^{2/3}).
inline double refined_inequality_ratio(const Field& f, const DispersionParams& disp, double p,
                                       const TimeWindow& window) {
    const double n2 = l2_norm(f);
    if (n2 == 0.0) throw DegenerateInput("f", "zero input");
    const auto R = refined_functional(forward_transform(f), p);
    const double lhs = spacetime_norm(f, fourth_flow(disp, 1.0 / 3.0), 6.0, window).value;
    return lhs / (std::cbrt(R.value) * std::pow(n2, 2.0 / 3.0));
}

struct LevelPiece {
    int n = 0;
    Spectrum piece;
};

/// Splits F restricted to I by amplitude bands
///   2^n |I|^{-1/2} <= |F| < 2^{n+1} |I|^{-1/2}.
/// Bins belong to I when their centre lies in I. Pieces are ordered by n.
inline std::vector<LevelPiece> levelset_split(const Spectrum& F, const Interval& I) {
    if (!(I.length() > 0.0)) throw InvalidArgument("I", "interval must have positive length");
    const double norm = std::sqrt(I.length());
    std::map<int, std::vector<cplx>> bands;
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (!I.contains(F.xi(i)) || F[i] == cplx{}) continue;
        int e = 0;
        std::frexp(std::abs(F[i]) * norm, &e);
        auto& v = bands[e - 1];
        if (v.empty()) v.assign(F.size(), cplx{});
        v[i] = F[i];
    }
    std::vector<LevelPiece> out;
    out.reserve(bands.size());
    for (auto& [n, v] : bands) out.push_back({n, Spectrum(F.grid(), std::move(v))});
    return out;
}

}  // namespace fourthlab
