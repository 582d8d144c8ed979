#include "mlz/catalog.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace mlz {

namespace {

void set_pair(Matrix& m, int a, int b, double v) {
    m(a, b) = v;
    m(b, a) = v;
}

} // namespace

DiabaticModel build_lz2(double g, double beta, double tau) {
    if (beta == 0.0) throw std::invalid_argument("lz2 requires a nonzero slope");
    DiabaticModel m;
    m.n = 2;
    m.slope = {beta, 0.0};
    m.tau_slope = {0.0, 0.0};
    m.coupling = Matrix(2, 2);
    set_pair(m.coupling, 0, 1, g);
    m.tau = tau;
    return m;
}

DiabaticModel build_h5_ansatz(double e1, double e2, double b, double g1, double g2, double g3,
                              double tau) {
    if (b == 0.0) throw std::invalid_argument("h5 requires b != 0");
    if (tau <= 0.0) throw std::invalid_argument("h5 requires tau > 0");
    DiabaticModel m;
    m.n = 5;
    m.slope = {0.0, 0.0, -b, -b, b};
    m.tau_slope = {e1, -e2, -e2, e1, e1};
    m.coupling = Matrix(5, 5);
    const double r2 = std::sqrt(2.0);
    set_pair(m.coupling, 0, 2, g1);
    set_pair(m.coupling, 1, 2, g2);
    set_pair(m.coupling, 0, 3, g3);
    set_pair(m.coupling, 0, 4, r2 * g2);
    set_pair(m.coupling, 1, 4, r2 * g1);
    m.tau = tau;
    return m;
}

CatalogPair build_h5(double e1, double e2, double b, double g1, double g2, double tau) {
    if (g2 * g2 < g1 * g1)
        throw std::invalid_argument("h5 requires g2^2 >= g1^2 (g3 would be imaginary)");
    const double g3 = std::sqrt(2.0 * (g2 * g2 - g1 * g1));

    CatalogPair pair;
    pair.model = build_h5_ansatz(e1, e2, b, g1, g2, g3, tau);

    const double es = e1 + e2;
    TtauPartner& p = pair.partner;
    p.b11 = {0.0, -es * es / b, -es * es / b, 0.0, 0.0};
    p.a1 = Matrix(5, 5);
    set_pair(p.a1, 0, 2, es * g1 / b);
    set_pair(p.a1, 1, 4, std::sqrt(2.0) * es * g1 / b);
    p.c = Matrix(5, 5);
    p.c(0, 0) = g1 * g1 / b;
    p.c(1, 1) = g2 * g2 / b;
    p.c(2, 2) = g3 * g3 / (2.0 * b);
    p.c(3, 3) = 2.0 * g1 * g1 / b;
    set_pair(p.c, 0, 1, -g1 * g2 / b);
    set_pair(p.c, 2, 3, -g1 * g3 / b);
    return pair;
}

DiabaticModel build_h6(double e1, double e2, double b, double g, double tau) {
    if (b == 0.0) throw std::invalid_argument("h6 requires b != 0");
    if (tau <= 0.0) throw std::invalid_argument("h6 requires tau > 0");
    DiabaticModel m;
    m.n = 6;
    m.slope = {0.0, 0.0, 0.0, b, b, -b};
    m.tau_slope = {e1, 0.0, -e2, -e2, e1, 0.0};
    m.coupling = Matrix(6, 6);
    set_pair(m.coupling, 1, 3, g);
    set_pair(m.coupling, 2, 3, g);
    set_pair(m.coupling, 0, 4, g);
    set_pair(m.coupling, 1, 4, g);
    set_pair(m.coupling, 0, 5, g);
    set_pair(m.coupling, 1, 5, g);
    set_pair(m.coupling, 2, 5, g);
    m.tau = tau;
    return m;
}

DiabaticModel build_demkov_osherov(const std::vector<double>& e, const std::vector<double>& g,
                                   double tau) {
    if (e.empty() || e.size() != g.size())
        throw std::invalid_argument("demkov-osherov requires matching nonempty e and g lists");
    std::set<double> distinct(e.begin(), e.end());
    if (distinct.size() != e.size())
        throw std::invalid_argument("demkov-osherov intercepts must be distinct");
    const int n = static_cast<int>(e.size()) + 1;
    DiabaticModel m;
    m.n = n;
    m.slope.assign(n, 0.0);
    m.slope[0] = 1.0;
    m.tau_slope.assign(n, 0.0);
    for (int k = 1; k < n; ++k) m.tau_slope[k] = e[k - 1];
    m.coupling = Matrix(n, n);
    for (int k = 1; k < n; ++k) set_pair(m.coupling, 0, k, g[k - 1]);
    m.tau = tau;
    return m;
}

CatalogPair build_bowtie(const std::vector<double>& beta, const std::vector<double>& g, double tau) {
    if (beta.empty() || beta.size() != g.size())
        throw std::invalid_argument("bowtie requires matching nonempty beta and g lists");
    std::set<double> distinct(beta.begin(), beta.end());
    if (distinct.size() != beta.size() || distinct.count(0.0) > 0)
        throw std::invalid_argument("bowtie slopes must be distinct and nonzero");
    const int nlev = static_cast<int>(beta.size());
    const int n = nlev + 2;

    CatalogPair pair;
    DiabaticModel& m = pair.model;
    m.n = n;
    m.slope.assign(n, 0.0);
    m.tau_slope.assign(n, 0.0);
    m.tau_slope[0] = 1.0;
    m.tau_slope[1] = -1.0;
    m.coupling = Matrix(n, n);
    for (int k = 0; k < nlev; ++k) {
        m.slope[2 + k] = beta[k];
        set_pair(m.coupling, 0, 2 + k, g[k]);
        set_pair(m.coupling, 1, 2 + k, g[k]);
    }
    m.tau = tau;

    // Partner fixed by the commutation conditions. Note the slope-reciprocal
    // diagonal enters with a positive sign: that is what the tau-coefficient
    // of [H, H'] requires together with a1 below (and what the per-edge
    // slope relation (dB01)^2 = dB00 * dB11 gives on every coupled edge).
    TtauPartner& p = pair.partner;
    p.b11.assign(n, 0.0);
    p.a1 = Matrix(n, n);
    p.c = Matrix(n, n);
    double kappa = 0.0;
    for (int k = 0; k < nlev; ++k) {
        p.b11[2 + k] = 1.0 / beta[k];
        set_pair(p.a1, 0, 2 + k, -g[k] / beta[k]);
        set_pair(p.a1, 1, 2 + k, g[k] / beta[k]);
        kappa += g[k] * g[k] / beta[k];
    }
    p.c(0, 0) = kappa;
    p.c(1, 1) = kappa;
    set_pair(p.c, 0, 1, -kappa);
    return pair;
}

} // namespace mlz
