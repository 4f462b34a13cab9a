#pragma once

// The integer speed-depth staircase: the largest rate reachable at a given
// entanglement depth, and the depth certified by an observed rate.

#include <cstdint>
#include <span>
#include <vector>

#include "qfront/tolerances.hpp"

namespace qfront::frontier {

std::int64_t ceil_div(std::int64_t a, std::int64_t b);

struct FrontierPoint {
    int n = 0;
    int k = 0;
    std::int64_t m_blocks = 0;  ///< ceil(n / k)
    double eta_max = 0.0;       ///< 1 / sqrt(m_blocks)
};

/// Throws ValidationError unless 1 <= k <= n.
FrontierPoint frontier_point(int n, int k);
double eta_max(int n, int k);

/// floor(x), except that x within snap_tol * x of an integer is taken as that
/// integer.
std::int64_t snapped_floor(double x, double snap_tol);
std::int64_t snapped_ceil(double x, double snap_tol);

struct Certificate {
    int n = 0;
    double eta = 0.0;
    std::int64_t m_max = 0;            ///< floor(eta^-2)
    std::int64_t depth_certified = 0;  ///< ceil(n / m_max)
    std::int64_t smooth_bound = 0;     ///< ceil(n eta^2)
    bool genuine_npartite = false;     ///< eta > 1/sqrt(2) with n > 1
};

/// Rejects eta <= 0 and eta > 1 + snap_tol; eta in (1, 1 + snap_tol] is
/// treated as 1.
Certificate certified_depth(int n, double eta, double snap_tol = kDefaultTolerances.snap);

struct StaircaseRow {
    double eta = 0.0;
    std::int64_t depth_certified = 0;
    std::int64_t smooth_bound = 0;
};

std::vector<StaircaseRow> staircase_curve(int n, std::span<const double> eta_grid,
                                          double snap_tol = kDefaultTolerances.snap);

/// eta_i = i / points for i = 1..points: a uniform grid on (0, 1] ending at 1.
std::vector<double> unit_interval_grid(std::size_t points);

}  // namespace qfront::frontier
