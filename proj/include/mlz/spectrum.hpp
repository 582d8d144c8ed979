#pragma once

#include <vector>

#include "mlz/model.hpp"

namespace mlz {

/// Adiabatic eigenvalue tracks on a uniform time grid; curves[i] is the i-th
/// eigenvalue in ascending order at every grid point.
struct EigenFlow {
    std::vector<double> times;
    std::vector<std::vector<double>> curves;
};

EigenFlow eigenflow(const DiabaticModel& model, double t_min, double t_max, int samples);

/// Crossing of two diabatic levels of different slope.
struct CrossingEvent {
    int a = 0, b = 0;      // diabatic indices, a < b
    double time = 0.0;     // crossing time t*
    double energy = 0.0;   // level energy at t*
    double coupling = 0.0; // direct coupling A0(a,b)
    double lz_p = 1.0;     // exp(-2 pi coupling^2 / |slope_a - slope_b|)
    bool isolated = true;  // no third level within 1e-9 * scale at (t*, energy)
};

/// All pairwise diabatic crossings, sorted by time (ties by index pair).
std::vector<CrossingEvent> diabatic_crossings(const DiabaticModel& model);

/// Eigenvalue degeneracy located by refining a local gap minimum.
struct ExactCrossing {
    double time = 0.0;
    int lower = 0;   // adjacent eigenvalue pair (lower, lower+1)
    double gap = 0.0; // refined minimal gap
};

/// Scans each adjacent-eigenvalue gap over [window_min, window_max] on `grid`
/// points, refines each local minimum by golden-section search (time tolerance
/// 1e-12), and keeps those with refined gap < threshold_rel * max|eigenvalue|.
std::vector<ExactCrossing> find_exact_crossings(const DiabaticModel& model,
                                                double window_min = -6.0, double window_max = 6.0,
                                                int grid = 2001, double threshold_rel = 1e-8);

/// Exact-crossing counting rule: one degeneracy is expected per isolated
/// crossing of directly-uncoupled diabatic levels (valid at small couplings).
struct CrossingCountReport {
    int predicted = 0;
    int found = 0;
    bool match = false;
    double coupling_scale = 0.0;
    std::vector<CrossingEvent> predicted_events;
    std::vector<ExactCrossing> found_events;
};

CrossingCountReport crossing_count_check(const DiabaticModel& model, double window_min = -6.0,
                                         double window_max = 6.0, int grid = 2001,
                                         double threshold_rel = 1e-8);

} // namespace mlz
