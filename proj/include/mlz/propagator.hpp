#pragma once

#include <utility>
#include <vector>

#include "mlz/model.hpp"

namespace mlz {

/// Transition probability matrix: p(j,i) is the probability of ending in
/// diabatic state j after starting in state i. Unitarity of the evolution
/// makes it doubly stochastic; stochastic_defect records how well the
/// row/column sums actually hit 1 (checked, never projected).
struct TransitionMatrix {
    Matrix p;
    double stochastic_defect = 0.0;
};

TransitionMatrix make_transition_matrix(Matrix p);

/// Evolution over [-T, T] in the diabatic interaction picture: the diagonal
/// phases theta_k(t) = slope_k t^2/2 + eps_k t are removed, so the returned
/// operator differs from the raw evolution by diagonal phase factors only and
/// carries the same transition probabilities. Integrated column-wise with an
/// embedded Dormand-Prince 5(4) pair, local error per step <= rk_tol.
/// Throws std::runtime_error on step-size underflow (message carries t).
ComplexMatrix propagate(const DiabaticModel& model, double T, double rk_tol);

struct PropagationResult {
    ComplexMatrix amplitude;          // interaction-picture evolution at the largest horizon
    TransitionMatrix probability;     // mean of |U(T)|^2 over the horizons
    std::vector<double> horizons;
    double dispersion = 0.0;          // max entrywise spread of |U|^2 across horizons
    double max_unitarity_defect = 0.0;
    double rk_tol = 0.0;
};

/// Probabilities averaged over a list of horizons (default
/// {500, 707, 1000, 1414, 2000}); the horizons run concurrently.
PropagationResult transition_matrix(const DiabaticModel& model, std::vector<double> horizons = {},
                                    double rk_tol = 1e-10);

/// Probability matrices of the same model re-assembled at each tau0; used to
/// watch the approach to the chronological pairwise product as the crossings
/// separate. Each entry averages the horizons {T/2, T/sqrt(2), T}.
std::vector<std::pair<double, TransitionMatrix>> tau_sweep(const DiabaticModel& model,
                                                           const std::vector<double>& tau0_list,
                                                           double T, double rk_tol);

} // namespace mlz
