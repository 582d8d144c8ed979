#pragma once

#include <vector>

#include "mlz/linalg.hpp"

namespace mlz {

/// Multistate Landau-Zener Hamiltonian H(t) = diag(slope)*t + diag(tau_slope)*tau + coupling.
/// slope and tau_slope are the diagonals of the commuting drive matrices B00 and B01;
/// coupling is the real symmetric A0 (its diagonal holds constant level offsets).
struct DiabaticModel {
    int n = 0;
    std::vector<double> slope;
    std::vector<double> tau_slope;
    Matrix coupling;
    double tau = 1.0;

    /// eps_k = tau_slope[k]*tau + coupling(k,k): the constant part of diabatic level k.
    std::vector<double> intercepts() const;
    std::vector<double> intercepts(double tau_override) const;

    /// Throws std::invalid_argument if shapes are inconsistent, values non-finite,
    /// or the coupling is not symmetric within 1e-12 relative.
    void validate() const;
};

/// Commuting partner data for H' = diag(b11)*tau + diag(tau_slope)*t + a1 + c/tau.
struct TtauPartner {
    std::vector<double> b11;
    Matrix a1;
    Matrix c;
};

/// A model together with its commuting partner.
struct CatalogPair {
    DiabaticModel model;
    TtauPartner partner;
};

Matrix assemble_H(const DiabaticModel& model, double t);
Matrix assemble_H(const DiabaticModel& model, double t, double tau_override);

/// Throws std::invalid_argument when the tau in effect is zero (pole of c/tau).
Matrix assemble_Hprime(const DiabaticModel& model, const TtauPartner& partner, double t);
Matrix assemble_Hprime(const DiabaticModel& model, const TtauPartner& partner, double t, double tau_override);

/// Generic operator of the family shape X(t,tau) = t*Xt + tau*Xtau + X0 + Xc/tau.
/// Used for the conserved operators of the interacting-fermion sectors.
struct TtauOperator {
    Matrix t_part;
    Matrix tau_part;
    Matrix const_part;
    Matrix invtau_part;

    Matrix assemble(double t, double tau) const;
    TtauOperator& add_scaled(const TtauOperator& other, double factor);
};

} // namespace mlz
