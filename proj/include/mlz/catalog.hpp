#pragma once

#include <vector>

#include "mlz/model.hpp"

namespace mlz {

/// Two-state Landau-Zener model: slopes (beta, 0), coupling g.
DiabaticModel build_lz2(double g, double beta = 1.0, double tau = 1.0);

/// Five-state model of one single level and two two-level bands. The third
/// coupling is fixed by the integrability constraint g3 = sqrt(2(g2^2-g1^2));
/// throws std::invalid_argument when g2^2 < g1^2 or b = 0 or tau <= 0.
/// Returns the model with its commuting partner.
CatalogPair build_h5(double e1, double e2, double b, double g1, double g2, double tau);

/// Same five-state couplings but with g3 a free parameter (no partner):
/// the ansatz scanned for the integrability constraint.
DiabaticModel build_h5_ansatz(double e1, double e2, double b, double g1, double g2, double g3,
                              double tau);

/// Six-state model with bands of three, two and one level(s), all seven
/// couplings equal to g. No closed-form partner is attached; the partner
/// solver discovers one.
DiabaticModel build_h6(double e1, double e2, double b, double g, double tau);

/// Demkov-Osherov model: one level of unit slope crossing N-1 parallel
/// horizontal levels with intercepts tau*e_k and couplings g_k.
/// Intercepts must be distinct.
DiabaticModel build_demkov_osherov(const std::vector<double>& e, const std::vector<double>& g,
                                   double tau);

/// Generalized bowtie model: parallel levels 0+/0- (slopes 0, intercepts
/// +-tau) coupled to N crossing levels of distinct nonzero slopes beta_n.
/// State order: (0+, 0-, 1..N). Returns the model with its commuting partner.
CatalogPair build_bowtie(const std::vector<double>& beta, const std::vector<double>& g, double tau);

} // namespace mlz
