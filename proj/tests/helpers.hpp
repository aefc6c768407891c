#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "cosparse/operators.hpp"

namespace testutil {

using cosparse::Mat;
using cosparse::Vec;

inline Vec random_vec(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
}

inline Mat random_mat(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = normal(rng);
    return m;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Piecewise-constant signal with `jumps` jumps at distinct random positions.
/// Levels are drawn so that consecutive levels always differ.
inline Vec piecewise_constant(std::mt19937_64& rng, int n, int jumps) {
    std::vector<int> pos;
    while (static_cast<int>(pos.size()) < jumps) {
        const int p = uniform_int(rng, 1, n - 1);
        if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
    }
    std::sort(pos.begin(), pos.end());
    Vec x(n);
    double level = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    std::size_t next = 0;
    for (int i = 0; i < n; ++i) {
        if (next < pos.size() && i == pos[next]) {
            double step = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
            if (rng() & 1u) step = -step;
            level += step;
            ++next;
        }
        x[i] = level;
    }
    return x;
}

/// Minimizes a convex function of one variable on [lo, hi]: a coarse scan
/// followed by golden-section refinement of the best bracket.
template <class F>
double minimize_1d(F f, double lo, double hi, int scan = 2000) {
    double best_t = lo;
    double best = f(lo);
    const double h = (hi - lo) / scan;
    for (int k = 1; k <= scan; ++k) {
        const double t = lo + k * h;
        const double v = f(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    double a = std::max(lo, best_t - h);
    double b = std::min(hi, best_t + h);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        const double c = b - g * (b - a);
        const double d = a + g * (b - a);
        if (f(c) <= f(d)) b = d;
        else a = c;
    }
    return 0.5 * (a + b);
}

/// prox of gamma ||.||_inf by direct search over the clipping level t:
/// the minimizer is clamp(x, -t, t) for the t minimizing
/// 1/2 sum (|x_i| - t)_+^2 + gamma t, found by bisection on the derivative
/// gamma - sum (|x_i| - t)_+ (bisection keeps full precision in t, unlike
/// comparing nearly equal function values).
inline Vec brute_prox_linf(const Vec& x, double gamma) {
    auto slope = [&](double t) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) s += std::max(std::abs(x[i]) - t, 0.0);
        return gamma - s;
    };
    double lo = 0.0;
    double hi = x.cwiseAbs().maxCoeff();
    if (slope(lo) >= 0.0) return Vec::Zero(x.size());
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (slope(mid) < 0.0 ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    return x.cwiseMax(-t).cwiseMin(t);
}

}  // namespace testutil
