#pragma once

#include <string>
#include <vector>

#include "mlz/model.hpp"

namespace mlz {

/// Basis of a fixed-conserved-quantity subspace of a second-quantized model.
struct SectorBasis {
    std::vector<std::string> labels;
    int dimension = 0;
};

/// Driven Tavis-Cummings model restricted to the sector of fixed total
/// excitation number M = n_ph + (#spins up), for N spins with splittings eps.
/// Basis order: photon count descending, then spin pattern descending with
/// spin 1 as the most significant bit (u=1, d=0).
struct TavisCummingsSector {
    DiabaticModel model;
    TtauPartner partner;
    SectorBasis basis;
};

TavisCummingsSector build_tavis_cummings(const std::vector<double>& eps, double g, int excitations,
                                         double tau);

/// Interacting-fermion model of one driven mode d and N-1 static modes c_k,
/// restricted to the sector of fixed particle number. Basis order: occupation
/// patterns descending with the d mode as the most significant bit.
/// conserved[j] holds the commuting operator built around mode c_{j+1}; the
/// partner is their e-weighted sum.
struct FermionSector {
    DiabaticModel model;
    TtauPartner partner;
    std::vector<TtauOperator> conserved;
    SectorBasis basis;
};

FermionSector build_fermion(const std::vector<double>& e, const std::vector<double>& g, double x,
                            int n_particles, double tau);

// --- spin-1/2 algebra on the full 2^N space (spin j = 1..N, j = 1 is the
//     most significant bit; u=1) ---

Matrix spin_z(int n_spins, int j);
Matrix spin_plus(int n_spins, int j);
Matrix spin_minus(int n_spins, int j);
Matrix total_spin_squared(int n_spins);
/// sum over ordered pairs k != j of s_k . s_j
Matrix spin_pair_sum(int n_spins);

/// Numerical check of the collective-spin identities used by the
/// Tavis-Cummings partner: commutation of S^2 (and of the pair sum) with
/// S^+, and the measured constants in  pair_sum = alpha * S^2 + gamma * I.
struct SpinIdentityReport {
    int n_spins = 0;
    double s2_splus_comm_norm = 0.0;
    double pairsum_splus_comm_norm = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double fit_residual = 0.0;
};

SpinIdentityReport spin_identity_report(int n_spins);

} // namespace mlz
