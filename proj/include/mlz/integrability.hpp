#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mlz/model.hpp"

namespace mlz {

/// Frobenius residuals of the six commutation conditions that make
/// (H, H') a commuting pair for all t and tau, plus the directly assembled
/// commutator norms on a fixed (t, tau) sample grid.
struct ResidualReport {
    double r_cc1 = 0.0; // [B00,B11], [B00,B01], [B11,B01] (diagonal: zero by construction)
    double r_cc2 = 0.0; // [B01,A0] - [B00,A1]
    double r_cc3 = 0.0; // [B01,C] + [A0,A1]
    double r_cc4 = 0.0; // [B00,C]
    double r_cc5 = 0.0; // [A0,C]
    double r_cc6 = 0.0; // [B01,A1] - [B11,A0]

    struct Sample {
        double t;
        double tau;
        double commutator_norm;
    };
    std::vector<Sample> samples;
    double assembled_max = 0.0;

    double tolerance = 0.0;
    bool pass = false;

    double max_condition_residual() const;
};

ResidualReport verify_pair(const DiabaticModel& model, const TtauPartner& partner, double tol);

/// The compatibility of the two flows, d_tau H = d_t H', holds structurally:
/// both sides are diag(tau_slope) by the shape of the types.
struct FlowReport {
    bool holds = true;
    std::string note;
};

FlowReport verify_flow(const DiabaticModel& model, const TtauPartner& partner);

/// Outcome of solving the commutation conditions as a linear system for the
/// partner data (b11, a1, c) with the model as input.
struct PartnerSolveReport {
    bool feasible = false;
    double residual = 0.0;     // least-squares residual of the stacked system
    double scale = 0.0;        // ||[B01,A0]||_F + 1, the feasibility scale
    TtauPartner particular;    // minimum-norm solution
    int nullspace_dim = 0;     // >= 3: identity shifts of b11, a1, c always solve
    std::vector<TtauPartner> nullspace;
    bool nontrivial = false;   // inhomogeneous term nonzero or extra nullspace
    double inhomogeneous_norm = 0.0;
};

PartnerSolveReport solve_partner(const DiabaticModel& model, double tol = 1e-8,
                                 double rank_tol = 1e-10);

/// Distance from a candidate partner to the affine solution space
/// particular + span(nullspace) of a solve report.
double partner_projection_distance(const PartnerSolveReport& report, const TtauPartner& candidate);

/// One-parameter integrability scan: rebuilds the model at every grid value
/// and records the partner-solve residual; strict local minima whose
/// neighbours exceed the feasibility threshold are refined to 1e-6.
struct ScanPoint {
    double value = 0.0;
    double residual = 0.0;
    bool ok = false;
    std::string error;
};

struct ScanReport {
    std::string param_name;
    std::vector<ScanPoint> points;
    std::vector<double> roots; // refined residual zeros
    double feasibility_scale = 0.0;
};

ScanReport scan_parameter(const std::function<DiabaticModel(double)>& builder,
                          const std::string& param_name, const std::vector<double>& grid,
                          double tol);

/// Zero-area test on the coupling connectivity graph: every fundamental cycle
/// must have vanishing signed sum of (d tau_slope)^2 / (d slope) over its
/// directed edges. Edges between equal-slope levels carry no such value and
/// are flagged instead of evaluated.
struct ZeroAreaCycle {
    std::vector<int> vertices; // closed walk; last connects back to first
    double sum = 0.0;
    int skipped_edges = 0;
    bool pass = false;
};

struct ZeroAreaEdge {
    int a = 0, b = 0;
    bool evaluable = false;    // false when slopes are equal
    double slope_value = 0.0;  // (d tau_slope)^2 / (d slope)
    double partner_value = 0.0;// b11[a] - b11[b], when a partner is supplied
    double mismatch = 0.0;     // |partner_value - slope_value|
};

struct ZeroAreaReport {
    std::vector<ZeroAreaCycle> cycles;
    std::vector<ZeroAreaEdge> edges;
    bool has_partner = false;
    bool warn_nonzero_diagonal = false;
    double tolerance = 0.0;
    bool pass = false;
};

ZeroAreaReport zero_area_check(const DiabaticModel& model, double tol,
                               const TtauPartner* partner = nullptr);

/// Signed zero-area sum along an explicit closed walk (testing hook).
ZeroAreaCycle evaluate_cycle(const DiabaticModel& model, const std::vector<int>& vertices,
                             double tol);

} // namespace mlz
