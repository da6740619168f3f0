#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "fourthlab/errors.hpp"

namespace fourthlab {

using cplx = std::complex<double>;

/// Uniform periodic grid x_m = center - L/2 + m*dx, m = 0..n-1, with
/// L = n*dx and n a power of two (n >= 4).
class SpatialGrid {
public:
    SpatialGrid(double center, double spacing, std::size_t count)
        : center_(center), spacing_(spacing), count_(count) {
        if (!std::isfinite(center)) throw InvalidArgument("center", "must be finite");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw InvalidArgument("dx", "spacing must be positive and finite");
        if (count < 4 || !std::has_single_bit(count))
            throw InvalidArgument("n", "count must be a power of two >= 4, got " +
                                           std::to_string(count));
    }

    double center() const noexcept { return center_; }
    double spacing() const noexcept { return spacing_; }
    std::size_t size() const noexcept { return count_; }
    double length() const noexcept { return spacing_ * static_cast<double>(count_); }
    double first() const noexcept { return center_ - 0.5 * length(); }
    double x(std::size_t m) const noexcept { return first() + static_cast<double>(m) * spacing_; }
    double nyquist() const noexcept { return std::numbers::pi / spacing_; }

    friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

private:
    double center_;
    double spacing_;
    std::size_t count_;
};

/// Signed frequencies xi_i = (i - n/2) * dxi, i = 0..n-1 (ascending order).
class FrequencyGrid {
public:
    FrequencyGrid(double spacing, std::size_t count) : spacing_(spacing), count_(count) {}

    double spacing() const noexcept { return spacing_; }
    std::size_t size() const noexcept { return count_; }
    double xi(std::size_t i) const noexcept {
        return (static_cast<double>(i) - static_cast<double>(count_ / 2)) * spacing_;
    }
    double nyquist() const noexcept { return spacing_ * static_cast<double>(count_ / 2); }
    /// Index of the bin nearest to xi, or size() when xi is outside the grid.
    std::size_t index_of(double xi) const noexcept {
        const double k = std::round(xi / spacing_) + static_cast<double>(count_ / 2);
        if (k < 0.0 || k >= static_cast<double>(count_)) return count_;
        return static_cast<std::size_t>(k);
    }

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
    double spacing_;
    std::size_t count_;
};

inline SpatialGrid make_grid(double center, double length, std::size_t count) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw InvalidArgument("length", "must be positive and finite");
    if (count < 4 || !std::has_single_bit(count))
        throw InvalidArgument("n", "count must be a power of two >= 4, got " + std::to_string(count));
    return SpatialGrid(center, length / static_cast<double>(count), count);
}

inline FrequencyGrid dual_grid(const SpatialGrid& grid) {
    return FrequencyGrid(2.0 * std::numbers::pi / grid.length(), grid.size());
}

namespace detail {
inline void require_finite(std::span<const cplx> values, const char* what) {
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidData(what, "non-finite sample");
}
}  // namespace detail

/// Complex samples of a function on a SpatialGrid.
class Field {
public:
    explicit Field(SpatialGrid grid) : grid_(grid), values_(grid.size()) {}

    Field(SpatialGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw InvalidData("values", "length " + std::to_string(values_.size()) +
                                            " does not match grid count " +
                                            std::to_string(grid_.size()));
        detail::require_finite(values_, "values");
    }

    const SpatialGrid& grid() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const cplx& operator[](std::size_t m) const noexcept { return values_[m]; }

    /// Hands the sample buffer over to the caller (the field is left empty).
    std::vector<cplx> release() && { return std::move(values_); }

private:
    SpatialGrid grid_;
    std::vector<cplx> values_;
};

/// Samples of f-hat on the dual grid, stored in ascending frequency order.
/// The spatial grid is retained because phases are referenced to absolute
/// coordinates x_m, so inversion needs the grid origin.
class Spectrum {
public:
    Spectrum(SpatialGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw InvalidData("values", "spectrum length does not match grid count");
        detail::require_finite(values_, "spectrum");
    }

    const SpatialGrid& grid() const noexcept { return grid_; }
    FrequencyGrid fgrid() const { return dual_grid(grid_); }
    std::span<const cplx> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
    double xi(std::size_t i) const { return fgrid().xi(i); }

    std::vector<cplx> release() && { return std::move(values_); }

private:
    SpatialGrid grid_;
    std::vector<cplx> values_;
};

/// u(t, x) sampled at strictly increasing times on one shared grid.
class SpaceTimeField {
public:
    SpaceTimeField(std::vector<double> times, std::vector<Field> slices)
        : times_(std::move(times)), slices_(std::move(slices)) {
        if (times_.size() != slices_.size())
            throw InvalidData("slices", "one slice per time is required");
        for (std::size_t i = 1; i < times_.size(); ++i)
            if (!(times_[i] > times_[i - 1]))
                throw InvalidData("times", "times must be strictly increasing");
        for (const auto& s : slices_)
            if (!(s.grid() == slices_.front().grid()))
                throw InvalidData("slices", "all slices must share one grid");
    }

    std::span<const double> times() const noexcept { return times_; }
    std::span<const Field> slices() const noexcept { return slices_; }

private:
    std::vector<double> times_;
    std::vector<Field> slices_;
};

inline Field sample(const std::function<cplx(double)>& fn, const SpatialGrid& grid) {
    std::vector<cplx> values(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) {
        values[m] = fn(grid.x(m));
        if (!std::isfinite(values[m].real()) || !std::isfinite(values[m].imag()))
            throw InvalidData("function", "non-finite sample at x = " + std::to_string(grid.x(m)));
    }
    return Field(grid, std::move(values));
}

// Pointwise arithmetic on fields sharing a grid.

inline Field operator+(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw InvalidArgument("grid", "fields live on different grids");
    std::vector<cplx> out(a.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = a[m] + b[m];
    return Field(a.grid(), std::move(out));
}

inline Field operator-(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw InvalidArgument("grid", "fields live on different grids");
    std::vector<cplx> out(a.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = a[m] - b[m];
    return Field(a.grid(), std::move(out));
}

inline Field operator*(cplx c, const Field& a) {
    std::vector<cplx> out(a.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = c * a[m];
    return Field(a.grid(), std::move(out));
}

}  // namespace fourthlab
