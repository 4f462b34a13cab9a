#include <cmath>
#include <limits>

#include "qfront/frontier.hpp"
#include "qfront/numkit.hpp"

namespace qfront::frontier {

namespace {

// Beyond this eta^-2 every finite n certifies depth 1; keeps the conversion in range.
constexpr double kLargestBlockCount = 4.0e18;

}  // namespace

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    if (b <= 0 || a < 0) {
        throw ValidationError("ceil_div expects a >= 0 and b > 0");
    }
    return a / b + (a % b != 0 ? 1 : 0);
}

FrontierPoint frontier_point(int n, int k) {
    if (n < 1) {
        throw ValidationError("n must be at least 1");
    }
    if (k < 1 || k > n) {
        throw ValidationError("depth cap k = " + std::to_string(k) + " must lie in 1.." + std::to_string(n));
    }
    const std::int64_t m = ceil_div(n, k);
    return {n, k, m, 1.0 / std::sqrt(static_cast<double>(m))};
}

double eta_max(int n, int k) {
    return frontier_point(n, k).eta_max;
}

std::int64_t snapped_floor(double x, double snap_tol) {
    if (x >= kLargestBlockCount) {
        return static_cast<std::int64_t>(kLargestBlockCount);
    }
    const double r = std::round(x);
    if (std::abs(x - r) <= snap_tol * std::abs(x)) {
        return static_cast<std::int64_t>(r);
    }
    return static_cast<std::int64_t>(std::floor(x));
}

std::int64_t snapped_ceil(double x, double snap_tol) {
    const double r = std::round(x);
    if (std::abs(x - r) <= snap_tol * std::abs(x)) {
        return static_cast<std::int64_t>(r);
    }
    return static_cast<std::int64_t>(std::ceil(x));
}

Certificate certified_depth(int n, double eta, double snap_tol) {
    if (n < 1) {
        throw ValidationError("n must be at least 1");
    }
    if (!std::isfinite(eta) || !(eta > 0.0)) {
        throw ValidationError("eta must be positive and finite");
    }
    if (eta > 1.0 + snap_tol) {
        throw ValidationError("eta = " + std::to_string(eta) +
                              " exceeds 1: complete charging cannot beat the speed limit");
    }
    eta = std::min(eta, 1.0);
    Certificate c;
    c.n = n;
    c.eta = eta;
    c.m_max = std::max<std::int64_t>(1, snapped_floor(1.0 / (eta * eta), snap_tol));
    c.depth_certified = ceil_div(n, c.m_max);
    c.smooth_bound = snapped_ceil(static_cast<double>(n) * eta * eta, snap_tol);
    c.genuine_npartite = n > 1 && c.m_max == 1;
    return c;
}

std::vector<StaircaseRow> staircase_curve(int n, std::span<const double> eta_grid, double snap_tol) {
    std::vector<StaircaseRow> rows;
    rows.reserve(eta_grid.size());
    for (const double eta : eta_grid) {
        const Certificate c = certified_depth(n, eta, snap_tol);
        rows.push_back({c.eta, c.depth_certified, c.smooth_bound});
    }
    return rows;
}

std::vector<double> unit_interval_grid(std::size_t points) {
    if (points == 0) {
        throw ValidationError("grid needs at least one point");
    }
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = static_cast<double>(i + 1) / static_cast<double>(points);
    }
    return g;
}

}  // namespace qfront::frontier
