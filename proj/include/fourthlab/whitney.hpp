#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>

#include "fourthlab/errors.hpp"

namespace fourthlab {

/// Dyadic interval 2^level [index, index + 1).
struct DyadicInterval {
    int level = 0;
    std::int64_t index = 0;

    double length() const noexcept { return std::ldexp(1.0, level); }
    double left() const noexcept { return std::ldexp(static_cast<double>(index), level); }
    double right() const noexcept { return std::ldexp(static_cast<double>(index + 1), level); }
    bool contains(double x) const noexcept { return left() <= x && x < right(); }

    DyadicInterval parent() const noexcept {
        // Floor division so negative indices map to the enclosing interval.
        const std::int64_t k = index >= 0 ? index / 2 : -((-index + 1) / 2);
        return {level + 1, k};
    }

    friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Gap between two intervals of the same level (0 when they touch or overlap).
inline double distance(const DyadicInterval& a, const DyadicInterval& b) {
    if (a.level != b.level) throw InvalidArgument("level", "intervals must share a level");
    const std::int64_t d = a.index > b.index ? a.index - b.index : b.index - a.index;
    return d <= 1 ? 0.0 : std::ldexp(static_cast<double>(d - 1), a.level);
}

inline DyadicInterval dyadic_interval_containing(double xi, int level) {
    if (!std::isfinite(xi)) throw InvalidArgument("xi", "must be finite");
    return {level, static_cast<std::int64_t>(std::floor(std::ldexp(xi, -level)))};
}

/// Same length and dist(I, I') >= 4 |I|, i.e. |k - k'| >= 5.
inline bool admissible(const DyadicInterval& a, const DyadicInterval& b) noexcept {
    if (a.level != b.level) return false;
    const std::int64_t d = a.index > b.index ? a.index - b.index : b.index - a.index;
    return d >= 5;
}

/// Admissible pair whose parents are not admissible.
inline bool maximal(const DyadicInterval& a, const DyadicInterval& b) noexcept {
    return admissible(a, b) && !admissible(a.parent(), b.parent());
}

struct WhitneyPair {
    DyadicInterval I;
    DyadicInterval Iprime;

    friend bool operator==(const WhitneyPair&, const WhitneyPair&) = default;
};

namespace detail {

// Level bracket [floor(log2 d) - 4, ceil(log2 d) + 1]: the lower end is always
// admissible (|I| <= d/16) and the upper end never is (|I| >= 2d).
inline std::pair<int, int> whitney_levels(double xi, double xi_prime) {
    if (!std::isfinite(xi)) throw InvalidArgument("xi", "must be finite");
    if (!std::isfinite(xi_prime)) throw InvalidArgument("xi_prime", "must be finite");
    if (xi == xi_prime) throw NoPairError("xi", "coincident points lie on the diagonal and have no Whitney pair");
    const double l = std::log2(std::abs(xi - xi_prime));
    return {static_cast<int>(std::floor(l)) - 4, static_cast<int>(std::ceil(l)) + 1};
}

}  // namespace detail

/// Top-down: the coarsest admissible level. Admissibility is inherited by
/// children, so the first admissible level from above is the maximal one.
inline WhitneyPair whitney_pair_top_down(double xi, double xi_prime) {
    const auto [jmin, jmax] = detail::whitney_levels(xi, xi_prime);
    for (int j = jmax; j >= jmin; --j) {
        const auto I = dyadic_interval_containing(xi, j);
        const auto J = dyadic_interval_containing(xi_prime, j);
        if (admissible(I, J)) return {I, J};
    }
    throw NumericalError("xi", "no admissible level in the search bracket");
}

/// Bottom-up: start admissible at the finest level and climb while the
/// parents stay admissible.
inline WhitneyPair whitney_pair_bottom_up(double xi, double xi_prime) {
    const auto [jmin, jmax] = detail::whitney_levels(xi, xi_prime);
    auto I = dyadic_interval_containing(xi, jmin);
    auto J = dyadic_interval_containing(xi_prime, jmin);
    if (!admissible(I, J)) throw NumericalError("xi", "finest bracket level is not admissible");
    while (I.level < jmax && admissible(I.parent(), J.parent())) {
        I = I.parent();
        J = J.parent();
    }
    return {I, J};
}

inline WhitneyPair whitney_pair(double xi, double xi_prime) { return whitney_pair_top_down(xi, xi_prime); }

struct PartitionReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::size_t max_multiplicity = 0;
    double range_lo = 0.0;
    double range_hi = 0.0;
    std::uint64_t seed = 0;
};

/// Number of I' with (I, I') maximal and I' meeting [lo, hi).
inline std::size_t whitney_multiplicity(const DyadicInterval& I, double lo, double hi) {
    std::size_t count = 0;
    // Parents within distance 4 give children within distance 9.
    for (std::int64_t k = I.index - 9; k <= I.index + 9; ++k) {
        const DyadicInterval J{I.level, k};
        if (!maximal(I, J)) continue;
        if (J.right() > lo && J.left() < hi) ++count;
    }
    return count;
}

/// Monte Carlo check that every off-diagonal point of [lo, hi)^2 lies in
/// exactly one maximal pair. Coverage is counted by brute force over all
/// levels near |xi - xi'|, independently of whitney_pair.
inline PartitionReport verify_partition(double lo, double hi, std::size_t samples, std::uint64_t seed) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InvalidArgument("range", "need finite lo < hi");
    if (samples < 1) throw InvalidArgument("samples", "must be >= 1");
    PartitionReport rep{samples, 0, 0, lo, hi, seed};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::set<DyadicInterval> seen;
    for (std::size_t s = 0; s < samples; ++s) {
        double a = dist(rng), b = dist(rng);
        while (a == b) b = dist(rng);
        const int centre = static_cast<int>(std::floor(std::log2(std::abs(a - b))));
        std::size_t covering = 0;
        for (int j = centre - 12; j <= centre + 12; ++j)
            if (maximal(dyadic_interval_containing(a, j), dyadic_interval_containing(b, j))) ++covering;
        const auto top = whitney_pair_top_down(a, b);
        const auto bottom = whitney_pair_bottom_up(a, b);
        if (covering != 1 || !(top == bottom) || !maximal(top.I, top.Iprime)) ++rep.violations;
        if (seen.insert(top.I).second)
            rep.max_multiplicity = std::max(rep.max_multiplicity, whitney_multiplicity(top.I, lo, hi));
    }
    return rep;
}

}  // namespace fourthlab
