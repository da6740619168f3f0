#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fourthlab/extremal.hpp"
#include "fourthlab/quadrature.hpp"
#include "oracles.hpp"

using namespace fourthlab;

namespace {

Field gaussian(const SpatialGrid& g, double a = 1.0) {
    return sample([a](double x) { return cplx(std::exp(-0.5 * x * x / (a * a))); }, g);
}

TimeWindow window(double T, std::size_t steps, TimeSpacing spacing = TimeSpacing::sinh) {
    TimeWindow w;
    w.t_max = T;
    w.steps = steps;
    w.spacing = spacing;
    return w;
}

}  // namespace

TEST(TimeWindow, Validation) {
    EXPECT_THROW(window(10.0, 3).validate(), InvalidArgument);
    EXPECT_THROW(window(10.0, 0).validate(), InvalidArgument);
    EXPECT_THROW(window(0.0, 10).validate(), InvalidArgument);
    EXPECT_NO_THROW(window(10.0, 2).validate());
}

TEST(TimeWindow, NodesAreSymmetricAndIncludeZero) {
    for (auto spacing : {TimeSpacing::uniform, TimeSpacing::sinh}) {
        const auto t = window(40.0, 100, spacing).nodes();
        ASSERT_EQ(t.size(), 101u);
        EXPECT_EQ(t[50], 0.0);
        EXPECT_EQ(t.front(), -40.0);
        EXPECT_EQ(t.back(), 40.0);
        for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t[i], -t[100 - i]);
        for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GT(t[i], t[i - 1]);
    }
}

TEST(TimeWindow, TrapezoidWeightsIntegrateLinearsExactly) {
    for (auto spacing : {TimeSpacing::uniform, TimeSpacing::sinh}) {
        const auto w = window(25.0, 400, spacing);
        const auto t = w.nodes();
        const auto wt = w.weights();
        double one = 0.0, lin = 0.0, shifted = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            one += wt[i];
            lin += wt[i] * t[i];
            shifted += wt[i] * (t[i] + 25.0);
        }
        EXPECT_NEAR(one, 50.0, 1e-11);
        EXPECT_NEAR(lin, 0.0, 1e-10);
        EXPECT_NEAR(shifted, 25.0 * 50.0, 1e-9);
    }
}

TEST(SpatialNorm, Examples) {
    const auto g = make_grid(0.0, 2.0, 64);
    EXPECT_NEAR(spatial_norm(sample([](double) { return cplx(1.0); }, g), 2.0), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(spatial_norm(gaussian(make_grid(0.0, 40.0, 512)), 2.0), std::pow(std::numbers::pi, 0.25), 1e-8);
    EXPECT_NEAR(spatial_norm(sample([](double x) { return std::polar(1.0, 3.0 * x); }, g),
                             std::numeric_limits<double>::infinity()),
                1.0, 1e-15);
    EXPECT_THROW(spatial_norm(Field(g), 0.5), InvalidArgument);
}

TEST(SpacetimeNorm, MassConservationPath) {
    const auto g = make_grid(0.0, 64.0, 512);
    std::mt19937_64 rng(2);
    const auto f = inverse_transform(Spectrum(g, oracle::random_band_spectrum(g, 3.0, rng)));
    for (auto spacing : {TimeSpacing::uniform, TimeSpacing::sinh}) {
        const auto w = window(10.0, 200, spacing);
        const auto r = spacetime_norm(f, DispersionParams(1.0), 0.0, 2.0, w);
        EXPECT_NEAR(r.value / (std::sqrt(20.0) * l2_norm(f)), 1.0, 1e-10);
    }
}

TEST(SpacetimeNorm, ZeroInput) {
    const auto r = spacetime_norm(Field(make_grid(0.0, 16.0, 64)), DispersionParams(0.0), 1.0 / 3.0, 6.0,
                                  window(10.0, 100));
    EXPECT_EQ(r.value, 0.0);
    EXPECT_EQ(r.tail_bound, 0.0);
}

TEST(SpacetimeNorm, GaussianSchrodingerMatchesTruncatedClosedForm) {
    for (double a : {1.0, 2.0}) {
        const auto w = TimeWindow{}.scaled(a * a);
        const auto f = gaussian(schrodinger_grid(a, w.t_max), a);
        const double num = schrodinger_ratio(f, w).value;
        EXPECT_NEAR(num / oracle::gaussian_schrodinger_truncated(a, w.t_max), 1.0, 1e-6) << "a=" << a;
    }
}

TEST(SpacetimeNorm, MonotoneInWindowAndTailBoundCoversDoubling) {
    const auto g = schrodinger_grid(1.0, 200.0);
    const auto f = gaussian(g);
    double prev = 0.0;
    for (double T : {25.0, 50.0, 100.0}) {
        const auto a = spacetime_norm(f, schrodinger_flow(), 6.0, window(T, 2000));
        const auto b = spacetime_norm(f, schrodinger_flow(), 6.0, window(2.0 * T, 2000));
        EXPECT_GE(a.value, prev);
        prev = a.value;
        EXPECT_LE(std::pow(b.value, 6) - std::pow(a.value, 6), a.tail_bound) << "T=" << T;
    }
}

TEST(SpacetimeNorm, StepDoublingIsConverged) {
    const auto f = gaussian(free_gaussian_grid(1.0, 100.0));
    const TimeWindow w;
    const double a = strichartz_ratio(f, DispersionParams(0.0), w).value;
    const double b = strichartz_ratio(f, DispersionParams(0.0), window(w.t_max, 2 * w.steps)).value;
    EXPECT_LT(std::abs(a - b) / b, 1e-6);
}

TEST(SpacetimeNorm, SmallWindowWarns) {
    const auto g = schrodinger_grid(1.0, 100.0);
    const auto r = spacetime_norm(gaussian(g), schrodinger_flow(), 6.0, window(2.0, 200));
    ASSERT_TRUE(r.warning.has_value());
    EXPECT_NE(r.warning->find("window too small"), std::string::npos);
}

TEST(StrichartzRatio, DegenerateAndDeterministic) {
    const auto g = make_grid(0.0, 256.0, 1024);
    EXPECT_THROW(strichartz_ratio(Field(g), DispersionParams(0.0), window(10.0, 100)), DegenerateInput);
    const auto f = gaussian(g);
    const auto a = strichartz_ratio(f, DispersionParams(1.0), window(10.0, 200));
    const auto b = strichartz_ratio(f, DispersionParams(1.0), window(10.0, 200));
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.n, 1024u);
    EXPECT_EQ(a.mu, 1.0);
    EXPECT_DOUBLE_EQ(a.value, a.norm6 / a.norm2);
}

TEST(StrichartzRatio, ScalingInvariance) {
    // mu = 0: f_l(x) = l^{-1/2} f(x/l) on the l-dilated grid over the l^4-dilated window.
    const double T = 20.0;
    const auto g = free_gaussian_grid(1.0, T);
    const auto f = gaussian(g);
    const double base = strichartz_ratio(f, DispersionParams(0.0), window(T, 2000)).value;
    for (double l : {0.5, 2.0}) {
        const auto gl = make_grid(0.0, g.length() * l, g.size());
        const auto fl = sample([l](double x) { return cplx(std::exp(-0.5 * (x / l) * (x / l)) / std::sqrt(l)); }, gl);
        const double r = strichartz_ratio(fl, DispersionParams(0.0), window(T, 2000).scaled(std::pow(l, 4))).value;
        EXPECT_NEAR(r / base, 1.0, 1e-3) << "lambda=" << l;
    }
}

TEST(StrichartzRatio, ModulationChangesFourthOrderRatio) {
    const auto g = make_grid(0.0, 512.0, 4096);
    const auto f = gaussian(g);
    const auto fm = sample([](double x) { return std::polar(std::exp(-0.5 * x * x), x); }, g);
    const auto w = window(10.0, 400);
    EXPECT_NE(strichartz_ratio(f, DispersionParams(0.0), w).value, strichartz_ratio(fm, DispersionParams(0.0), w).value);
}

TEST(DispersiveDecay, SlopeIsMinusOneHalf) {
    const auto g = make_grid(0.0, 4096.0, 8192);
    const auto fg = dual_grid(g);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = oracle::bump(fg.xi(i), -1.0, 1.0);
    const auto f = inverse_transform(Spectrum(g, v));
    FlowEvaluator ev(f, fourth_flow(DispersionParams(1.0)));
    std::vector<double> ts, sups;
    for (double t = 10.0; t <= 100.0 + 1e-9; t *= std::pow(10.0, 0.1)) {
        ts.push_back(t);
        sups.push_back(spatial_norm(ev.slice(t), std::numeric_limits<double>::infinity()));
    }
    EXPECT_NEAR(oracle::loglog_slope(ts, sups), -0.5, 0.05);
}

TEST(LocalizedRestriction, IndicatorFiniteAndHomogeneous) {
    const auto g = make_grid(0.0, 2048.0, 2048);
    const auto fg = dual_grid(g);
    std::vector<cplx> v(g.size()), v3(g.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(fg.xi(i)) <= 1.0) v[i] = 1.0, v3[i] = 3.0;
    const auto w = window(50.0, 1000);
    const double a = localized_restriction_ratio(0.0, 1.0, 5.0, Spectrum(g, v), DispersionParams(0.0), w);
    const double b = localized_restriction_ratio(0.0, 1.0, 5.0, Spectrum(g, v3), DispersionParams(0.0), w);
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_GT(a, 0.0);
    EXPECT_NEAR(a, b, 1e-10 * a);
}

TEST(LocalizedRestriction, StableAcrossRandomBoundedSpectra) {
    const auto g = make_grid(0.0, 2048.0, 2048);
    const auto fg = dual_grid(g);
    const auto w = window(50.0, 1000);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> r;
    for (int k = 0; k < 20; ++k) {
        std::vector<cplx> v(g.size());
        std::size_t peak = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (std::abs(fg.xi(i)) <= 1.0) v[i] = std::polar(u(rng), 2.0 * std::numbers::pi * u(rng)), peak = i;
        v[peak] = 1.0;
        r.push_back(localized_restriction_ratio(0.0, 1.0, 5.0, Spectrum(g, v), DispersionParams(0.0), w));
    }
    std::vector<double> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (double x : r) EXPECT_NEAR(x / median, 1.0, 0.2);
}

TEST(LocalizedRestriction, RejectsOutsideSupportAndBadExponent) {
    const auto g = make_grid(0.0, 256.0, 256);
    const auto fg = dual_grid(g);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(fg.xi(i)) <= 2.0) v[i] = 1.0;
    const Spectrum G(g, v);
    EXPECT_THROW(localized_restriction_ratio(0.0, 1.0, 5.0, G, DispersionParams(0.0), window(5.0, 10)),
                 InvalidArgument);
    EXPECT_THROW(localized_restriction_ratio(0.0, 3.0, 6.0, G, DispersionParams(0.0), window(5.0, 10)),
                 InvalidArgument);
}
