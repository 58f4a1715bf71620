#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace medea {

inline double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Sample variance (Bessel-corrected).
inline double sample_variance(std::span<const double> x) {
    const double m = mean_of(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

inline double median_of(std::vector<double> x) {
    if (x.empty()) throw std::invalid_argument("median of empty sample");
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    return n % 2 == 1 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

// Ranks (1-based, ties as average rank) of the values in `v`.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * (static_cast<double>(i + 1) +
                                static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

struct ShapiroWilkResult {
    double w = 0.0;
    double p = 0.0;
};

// Shapiro-Wilk normality test, Royston (1995) AS R94 approximation,
// 3 <= n <= 5000. Constant samples have no defined W; they get p = 0 so
// the pipeline falls through to the rank-based branch.
inline ShapiroWilkResult shapiro_wilk(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 3) throw std::invalid_argument("shapiro_wilk needs n >= 3");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());

    const double xbar = mean_of(x);
    double ssq = 0.0;
    for (double v : x) ssq += (v - xbar) * (v - xbar);
    if (ssq <= 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};

    const boost::math::normal_distribution<double> std_normal;
    std::vector<double> m(n);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = boost::math::quantile(
            std_normal, (static_cast<double>(i + 1) - 0.375) /
                            (static_cast<double>(n) + 0.25));
        summ2 += m[i] * m[i];
    }

    std::vector<double> a(n);
    const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
    auto poly_c1 = [](double u) {
        return u * (0.221157 +
                    u * (-0.147981 +
                         u * (-2.071190 + u * (4.434685 + u * -2.706056))));
    };
    auto poly_c2 = [](double u) {
        return u * (0.042981 +
                    u * (-0.293762 +
                         u * (-1.752461 + u * (5.682633 + u * -3.582633))));
    };
    if (n == 3) {
        a[0] = -std::sqrt(0.5);
        a[1] = 0.0;
        a[2] = std::sqrt(0.5);
    } else {
        const double an = m[n - 1] / std::sqrt(summ2) + poly_c1(rsn);
        a[n - 1] = an;
        a[0] = -an;
        std::size_t lo = 1;
        double phi;
        if (n > 5) {
            const double an1 = m[n - 2] / std::sqrt(summ2) + poly_c2(rsn);
            a[n - 2] = an1;
            a[1] = -an1;
            lo = 2;
            phi = (summ2 - 2.0 * m[n - 1] * m[n - 1] -
                   2.0 * m[n - 2] * m[n - 2]) /
                  (1.0 - 2.0 * an * an - 2.0 * an1 * an1);
        } else {
            phi = (summ2 - 2.0 * m[n - 1] * m[n - 1]) / (1.0 - 2.0 * an * an);
        }
        const double sphi = std::sqrt(phi);
        for (std::size_t i = lo; i < n - lo; ++i) a[i] = m[i] / sphi;
    }

    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) num += a[i] * x[i];
    double w = num * num / ssq;
    if (w > 1.0) w = 1.0;

    double p;
    const double nn = static_cast<double>(n);
    if (n == 3) {
        constexpr double pi = 3.14159265358979323846;
        p = 6.0 / pi * (std::asin(std::sqrt(w)) - std::asin(std::sqrt(0.75)));
        if (p < 0.0) p = 0.0;
        if (p > 1.0) p = 1.0;
    } else if (1.0 - w < 1e-15) {
        p = 1.0;
    } else {
        const double y = std::log1p(-w);
        double mu, sigma, z;
        if (n <= 11) {
            const double gamma = -2.273 + 0.459 * nn;
            if (y >= gamma) return {w, 0.0};
            const double yy = -std::log(gamma - y);
            mu = 0.5440 + nn * (-0.39978 + nn * (0.025054 + nn * -0.0006714));
            sigma = std::exp(1.3822 +
                             nn * (-0.77857 + nn * (0.062767 + nn * -0.0020322)));
            z = (yy - mu) / sigma;
        } else {
            const double ln = std::log(nn);
            mu = -1.5861 + ln * (-0.31082 + ln * (-0.083751 + ln * 0.0038915));
            sigma = std::exp(-0.4803 + ln * (-0.082676 + ln * 0.0030302));
            z = (y - mu) / sigma;
        }
        p = boost::math::cdf(boost::math::complement(std_normal, z));
    }
    return {w, p};
}

struct TestResult {
    double statistic = 0.0;
    double p = 1.0;
};

// One-way ANOVA. Degenerate zero within-group variance: p = 0 when the group
// means differ, 1 when everything is equal.
inline TestResult anova_oneway(const std::vector<std::vector<double>>& groups) {
    const std::size_t k = groups.size();
    if (k < 2) throw std::invalid_argument("anova needs >= 2 groups");
    std::size_t total_n = 0;
    double grand = 0.0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw std::invalid_argument("anova group too small");
        total_n += g.size();
        for (double v : g) grand += v;
    }
    grand /= static_cast<double>(total_n);
    double ss_between = 0.0, ss_within = 0.0;
    for (const auto& g : groups) {
        const double m = mean_of(g);
        ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double v : g) ss_within += (v - m) * (v - m);
    }
    const double df1 = static_cast<double>(k - 1);
    const double df2 = static_cast<double>(total_n - k);
    if (ss_within <= 0.0) {
        if (ss_between > 0.0)
            return {std::numeric_limits<double>::infinity(), 0.0};
        return {std::numeric_limits<double>::quiet_NaN(), 1.0};
    }
    const double f = (ss_between / df1) / (ss_within / df2);
    const boost::math::fisher_f_distribution<double> dist(df1, df2);
    return {f, boost::math::cdf(boost::math::complement(dist, f))};
}

// Levene's homogeneity-of-variance test, mean-centered variant: one-way
// ANOVA over |x - group mean|.
inline TestResult levene_mean_centered(const std::vector<std::vector<double>>& groups) {
    std::vector<std::vector<double>> z;
    z.reserve(groups.size());
    for (const auto& g : groups) {
        const double m = mean_of(g);
        std::vector<double> zi;
        zi.reserve(g.size());
        for (double v : g) zi.push_back(std::abs(v - m));
        z.push_back(std::move(zi));
    }
    return anova_oneway(z);
}

// Welch's unequal-variance t-test, two-sided.
inline TestResult welch_t_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2 || y.size() < 2)
        throw std::invalid_argument("welch needs n >= 2 per sample");
    const double m = static_cast<double>(x.size());
    const double n = static_cast<double>(y.size());
    const double vx = sample_variance(x) / m;
    const double vy = sample_variance(y) / n;
    if (vx + vy <= 0.0) {
        if (mean_of(x) == mean_of(y))
            return {std::numeric_limits<double>::quiet_NaN(), 1.0};
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    const double t = (mean_of(x) - mean_of(y)) / std::sqrt(vx + vy);
    const double df = (vx + vy) * (vx + vy) /
                      (vx * vx / (m - 1.0) + vy * vy / (n - 1.0));
    const boost::math::students_t_distribution<double> dist(df);
    return {t, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)))};
}

// Kruskal-Wallis rank-sum test with tie correction.
inline TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    const std::size_t k = groups.size();
    if (k < 2) throw std::invalid_argument("kruskal-wallis needs >= 2 groups");
    std::vector<double> all;
    for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
    const std::size_t total_n = all.size();
    const std::vector<double> ranks = average_ranks(all);

    double h = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double r = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) r += ranks[offset + i];
        h += r * r / static_cast<double>(g.size());
        offset += g.size();
    }
    const double nn = static_cast<double>(total_n);
    h = 12.0 / (nn * (nn + 1.0)) * h - 3.0 * (nn + 1.0);

    // tie correction
    std::vector<double> sorted(all);
    std::sort(sorted.begin(), sorted.end());
    double tie_sum = 0.0;
    std::size_t i = 0;
    while (i < total_n) {
        std::size_t j = i;
        while (j + 1 < total_n && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
    }
    const double correction = 1.0 - tie_sum / (nn * nn * nn - nn);
    if (correction <= 0.0) return {0.0, 1.0};  // every value identical
    h /= correction;
    const boost::math::chi_squared_distribution<double> dist(
        static_cast<double>(k - 1));
    return {h, boost::math::cdf(boost::math::complement(dist, h))};
}

// Vargha-Delaney A: P(X > Y) + 0.5 P(X = Y), computed from rank sums.
inline double vargha_delaney_a(std::span<const double> x,
                               std::span<const double> y) {
    if (x.empty() || y.empty())
        throw std::invalid_argument("vargha_delaney_a needs nonempty samples");
    std::vector<double> all(x.begin(), x.end());
    all.insert(all.end(), y.begin(), y.end());
    const std::vector<double> ranks = average_ranks(all);
    double r1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r1 += ranks[i];
    const double m = static_cast<double>(x.size());
    const double n = static_cast<double>(y.size());
    // Single division: r1 and m(m+1)/2 are exact (sums of half-integers), so
    // this matches brute-force pair counting bit for bit.
    return (r1 - m * (m + 1.0) / 2.0) / (m * n);
}

enum class EffectMagnitude { None, Small, Medium, Large };

// Magnitude bands on the A scale itself (0.56 / 0.64 / 0.71 and their
// mirror images) so the published boundary values classify exactly.
inline EffectMagnitude vd_magnitude(double a) {
    if (a >= 0.71 || a <= 0.29) return EffectMagnitude::Large;
    if (a >= 0.64 || a <= 0.36) return EffectMagnitude::Medium;
    if (a >= 0.56 || a <= 0.44) return EffectMagnitude::Small;
    return EffectMagnitude::None;
}

inline std::string to_string(EffectMagnitude m) {
    switch (m) {
        case EffectMagnitude::None: return "none";
        case EffectMagnitude::Small: return "small";
        case EffectMagnitude::Medium: return "medium";
        case EffectMagnitude::Large: return "large";
    }
    return "?";
}

enum class StatTest { Anova, Welch, KruskalWallis };

inline std::string to_string(StatTest t) {
    switch (t) {
        case StatTest::Anova: return "anova";
        case StatTest::Welch: return "welch";
        case StatTest::KruskalWallis: return "kruskal-wallis";
    }
    return "?";
}

enum class Direction { Lower, Equal, Higher };

inline std::string direction_symbol(Direction d) {
    switch (d) {
        case Direction::Lower: return "<";
        case Direction::Equal: return "=";
        case Direction::Higher: return ">";
    }
    return "?";
}

struct StatReport {
    double normality_x = 0.0;
    double normality_y = 0.0;
    double variance_p = std::numeric_limits<double>::quiet_NaN();  // n/a
    StatTest chosen = StatTest::KruskalWallis;
    double p_value = 1.0;
    bool significant = false;
    double vd_a = 0.5;
    EffectMagnitude magnitude = EffectMagnitude::None;
    Direction direction = Direction::Equal;
};

// The paper's pipeline: Shapiro-Wilk on both samples; if both look normal,
// Levene decides between plain ANOVA and Welch; otherwise Kruskal-Wallis.
// Direction compares medians of x against y, gated by significance.
inline StatReport compare(std::span<const double> x, std::span<const double> y,
                          double alpha = 0.05) {
    if (x.size() < 3 || y.size() < 3)
        throw std::invalid_argument("compare needs n >= 3 per sample");
    StatReport rep;
    rep.normality_x = shapiro_wilk(x).p;
    rep.normality_y = shapiro_wilk(y).p;
    const std::vector<std::vector<double>> groups = {
        std::vector<double>(x.begin(), x.end()),
        std::vector<double>(y.begin(), y.end())};
    if (rep.normality_x < alpha || rep.normality_y < alpha) {
        rep.chosen = StatTest::KruskalWallis;
        rep.p_value = kruskal_wallis(groups).p;
    } else {
        rep.variance_p = levene_mean_centered(groups).p;
        if (rep.variance_p >= alpha) {
            rep.chosen = StatTest::Anova;
            rep.p_value = anova_oneway(groups).p;
        } else {
            rep.chosen = StatTest::Welch;
            rep.p_value = welch_t_test(x, y).p;
        }
    }
    rep.significant = rep.p_value < alpha;
    rep.vd_a = vargha_delaney_a(x, y);
    rep.magnitude = vd_magnitude(rep.vd_a);
    if (rep.significant) {
        const double mx = median_of(groups[0]);
        const double my = median_of(groups[1]);
        rep.direction = mx < my ? Direction::Lower
                                : (mx > my ? Direction::Higher
                                           : Direction::Equal);
    }
    return rep;
}

}  // namespace medea
