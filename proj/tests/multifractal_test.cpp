#include <algorithm>
#include <cmath>
#include <numeric>

#include "test_support.hpp"

using namespace symdyn;

namespace {

constexpr double kM = 0.7;

// Closed-form binomial cascade: tau(q) = -log2(m^q + (1-m)^q), alpha = tau'(q) by a
// central difference, f = q alpha - tau.
double cascade_tau(double q) { return -std::log2(std::pow(kM, q) + std::pow(1 - kM, q)); }
double cascade_alpha(double q) {
    const double h = 1e-5;
    return (cascade_tau(q + h) - cascade_tau(q - h)) / (2 * h);
}
double cascade_f(double q) { return q * cascade_alpha(q) - cascade_tau(q); }

std::vector<WordDistribution> cascade_scales() {
    std::vector<WordDistribution> d;
    for (int l = 4; l <= 12; ++l) {
        d.push_back(cascade_distribution(7, 10, l));
    }
    return d;
}

std::vector<WordDistribution> uniform_scales() {
    std::vector<WordDistribution> d;
    for (int l = 2; l <= 9; ++l) {
        d.push_back(test::uniform_distribution(l));
    }
    return d;
}

std::vector<WordDistribution> point_scales() {
    std::vector<WordDistribution> d;
    for (int l = 2; l <= 9; ++l) {
        d.push_back(test::point_mass(l, 1));
    }
    return d;
}

const SpectrumPoint& at(const MultifractalSpectrum& s, double q) {
    return *std::find_if(s.points.begin(), s.points.end(), [q](const SpectrumPoint& p) { return p.q == q; });
}

}  // namespace

TEST(ChhabraWeights, Examples) {
    const WordDistribution d(1, 1, {1, 3});
    const auto one = chhabra_weights(d, 1.0);
    EXPECT_NEAR(one.weights[0], 0.25, 1e-15);
    EXPECT_NEAR(one.weights[1], 0.75, 1e-15);
    const auto two = chhabra_weights(d, 2.0);
    EXPECT_NEAR(two.weights[0], 0.1, 1e-15);
    EXPECT_NEAR(two.weights[1], 0.9, 1e-15);
    const auto zero = chhabra_weights(cascade_distribution(7, 10, 6), 0.0);
    EXPECT_EQ(zero.weights.size(), 64U);
    for (double w : zero.weights) {
        EXPECT_NEAR(w, 1.0 / 64.0, 1e-15);
    }
}

TEST(ChhabraWeights, SupportOnlyAndNormalised) {
    const auto seq = random_baseline(5000, 3, baseline::Markov1{0.95, 0.02});
    const auto d = word_distribution(seq, 8);
    for (double q : {-30.0, -3.0, 0.0, 0.5, 1.0, 4.0, 30.0}) {
        const auto w = chhabra_weights(d, q);
        EXPECT_EQ(w.codes, d.support_codes());
        EXPECT_NEAR(std::accumulate(w.weights.begin(), w.weights.end(), 0.0), 1.0, 1e-12);
        for (double x : w.weights) {
            EXPECT_GT(x, 0.0);
        }
    }
}

TEST(ChhabraSpectrum, UniformAndPointMass) {
    const auto grid = QGrid::range(-10, 10, 1);
    const auto uniform = chhabra_spectrum(uniform_scales(), grid);
    ASSERT_EQ(uniform.points.size(), grid.size());
    EXPECT_EQ(uniform.scale_range, (std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9}));
    for (const auto& p : uniform.points) {
        EXPECT_NEAR(p.alpha, 1.0, 1e-12);
        EXPECT_NEAR(p.f, 1.0, 1e-12);
        EXPECT_NEAR(p.r2_alpha, 1.0, 1e-12);
        EXPECT_NEAR(p.r2_f, 1.0, 1e-12);
        EXPECT_NEAR(p.tau, p.q - 1.0, 1e-12);
    }
    const auto point = chhabra_spectrum(point_scales(), grid);
    for (const auto& p : point.points) {
        EXPECT_EQ(p.alpha, 0.0);
        EXPECT_EQ(p.f, 0.0);
        EXPECT_EQ(p.condition_number, 1.0);
    }
}

TEST(ChhabraSpectrum, CascadeClosedForm) {
    const auto s = chhabra_spectrum(cascade_scales(), QGrid::range(-10, 10, 0.5));
    for (const auto& p : s.points) {
        EXPECT_NEAR(p.alpha, cascade_alpha(p.q), 0.05) << p.q;
        EXPECT_NEAR(p.f, cascade_f(p.q), 0.05) << p.q;
        EXPECT_NEAR(p.tau, cascade_tau(p.q), 1e-6) << p.q;
        EXPECT_GT(p.condition_number, 0.0);
    }
    const auto fmax = std::max_element(s.points.begin(), s.points.end(),
                                       [](const auto& a, const auto& b) { return a.f < b.f; });
    const double d0 = dimension_fit(cascade_scales(), 0.0).slope;
    EXPECT_NEAR(fmax->f, d0, 0.01);
    EXPECT_NEAR(at(s, 0.0).f, d0, 1e-6);
}

TEST(ChhabraSpectrum, StructuralInvariants) {
    const auto s = chhabra_spectrum(cascade_scales(), QGrid::range(-10, 10, 0.5));
    for (std::size_t i = 1; i < s.points.size(); ++i) {
        EXPECT_LE(s.points[i].alpha, s.points[i - 1].alpha + 1e-6);
    }
    EXPECT_NEAR(at(s, 1.0).f, at(s, 1.0).alpha, 1e-6);
    EXPECT_EQ(at(s, 1.0).tau, 0.0);
    for (const auto& p : s.points) {
        double envelope = std::numeric_limits<double>::infinity();
        for (const auto& other : s.points) {
            envelope = std::min(envelope, other.q * p.alpha - other.tau);
        }
        EXPECT_LE(p.f, envelope + 1e-6) << p.q;
    }
}

TEST(ChhabraSpectrum, Errors) {
    const auto grid = QGrid({0.0, 1.0});
    auto two = cascade_scales();
    two.erase(two.begin() + 2, two.end());
    EXPECT_SYMDYN_ERROR(chhabra_spectrum(two, grid), Errc::TooFewScales);
    const std::vector<WordDistribution> same{test::uniform_distribution(4), test::uniform_distribution(4),
                                             test::uniform_distribution(4)};
    EXPECT_SYMDYN_ERROR(chhabra_spectrum(same, grid), Errc::DegenerateRegression);
}

TEST(TauCurve, Examples) {
    const auto grid = QGrid::range(-5, 5, 0.5);
    const auto uniform = tau_curve(dimension_curve(uniform_scales(), grid));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(uniform[i], grid[i] - 1.0, 1e-12);
    }
    const auto cascade_dims = dimension_curve(cascade_scales(), grid);
    const auto tau = tau_curve(cascade_dims);
    EXPECT_EQ(tau[12], 0.0);
    EXPECT_NEAR(tau[14], 0.78590, 0.02);
    EXPECT_NEAR(tau[14], cascade_dims.dq[14], 1e-15);
    EXPECT_NEAR(tau[10], -cascade_dims.dq[10], 1e-15);
}

TEST(LegendreCheck, MonoFractalsAreExact) {
    const auto grid = QGrid::range(-10, 10, 0.5);
    for (const auto& dists : {uniform_scales(), point_scales()}) {
        const auto report = legendre_check(chhabra_spectrum(dists, grid), dimension_curve(dists, grid));
        EXPECT_LE(report.max_residual, 1e-9);
        EXPECT_EQ(report.residuals.size(), grid.size());
    }
}

TEST(LegendreCheck, Cascade) {
    const auto grid = QGrid::range(-10, 10, 0.5);
    const auto dists = cascade_scales();
    const auto report = legendre_check(chhabra_spectrum(dists, grid), dimension_curve(dists, grid));
    EXPECT_LE(report.max_residual, 0.05);
    EXPECT_LE(report.mean_residual, report.max_residual);
}

TEST(LegendreCheck, ShuffledAlphaIsCaught) {
    const auto grid = QGrid::range(-10, 10, 0.5);
    const auto dists = cascade_scales();
    auto spectrum = chhabra_spectrum(dists, grid);
    std::vector<double> alphas;
    for (const auto& p : spectrum.points) {
        alphas.push_back(p.alpha);
    }
    std::reverse(alphas.begin(), alphas.end());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        spectrum.points[i].alpha = alphas[i];
    }
    EXPECT_GT(legendre_check(spectrum, dimension_curve(dists, grid)).max_residual, 1.0);
}

TEST(LegendreCheck, GridMismatch) {
    const auto dists = cascade_scales();
    const auto spectrum = chhabra_spectrum(dists, QGrid::range(-2, 2, 1));
    EXPECT_SYMDYN_ERROR(legendre_check(spectrum, dimension_curve(dists, QGrid::range(-2, 2, 0.5))),
                        Errc::GridMismatch);
    EXPECT_SYMDYN_ERROR(legendre_check(spectrum, dimension_curve(dists, QGrid::range(-3, 1, 1))),
                        Errc::GridMismatch);
}
