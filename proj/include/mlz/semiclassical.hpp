#pragma once

#include <vector>

#include "mlz/propagator.hpp"
#include "mlz/spectrum.hpp"

namespace mlz {

/// Chronological diagram of diabatic crossings. Every directly coupled event
/// carries a doubly stochastic block: identity except for the 2x2
/// [[p, q], [q, p]] on its level pair, with p the pairwise survival
/// probability. Uncoupled events carry the identity.
struct CrossingDiagram {
    int n = 0;
    struct Event {
        CrossingEvent crossing;
        Matrix block;
    };
    std::vector<Event> events; // sorted by time, ties by index pair
};

/// Throws std::runtime_error when two coupled events at the same time share a
/// level (the chronological product is ill-defined there).
CrossingDiagram build_diagram(const DiabaticModel& model);

/// Number of distinct diabatic paths between every initial/final pair; two or
/// more paths to the same destination mean the probability-level product is
/// only a non-interference approximation.
struct PathReport {
    Matrix counts; // counts(j,i): paths from initial i to final j
    bool interference = false;
};

struct Prediction {
    TransitionMatrix probability;
    PathReport paths;
    bool non_interference_approximation = false; // set when interference was flagged
};

/// Chronological product of the event blocks, earliest applied first.
/// Columns index initial diabatic states.
Prediction predict_probabilities(const DiabaticModel& model);

struct ComparisonReport {
    Matrix predicted;
    Matrix numeric;
    double max_deviation = 0.0;
    PathReport paths;
    double numeric_dispersion = 0.0;
    double max_unitarity_defect = 0.0;
};

ComparisonReport compare_with_numerics(const DiabaticModel& model,
                                       std::vector<double> horizons = {}, double rk_tol = 1e-10);

} // namespace mlz
