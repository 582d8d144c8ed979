#include "mlz/sectors.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace mlz {

namespace {

int popcount(unsigned mask) { return std::popcount(mask); }

} // namespace

// ---------------------------------------------------------------------------
// Tavis-Cummings sector
// ---------------------------------------------------------------------------

TavisCummingsSector build_tavis_cummings(const std::vector<double>& eps, double g, int excitations,
                                         double tau) {
    const int n_spins = static_cast<int>(eps.size());
    if (n_spins < 1) throw std::invalid_argument("tavis-cummings requires at least one spin");
    if (excitations < 0) throw std::invalid_argument("tavis-cummings sector is empty for M < 0");
    if (tau <= 0.0) throw std::invalid_argument("tavis-cummings requires tau > 0");

    // states |n_ph; s_1..s_N> with n_ph + #up = M
    struct State {
        int n_ph;
        unsigned mask; // bit (N-j) holds spin j, 1 = up
    };
    std::vector<State> states;
    for (int n_ph = excitations; n_ph >= std::max(0, excitations - n_spins); --n_ph) {
        const int ups = excitations - n_ph;
        if (ups > n_spins) continue;
        for (int mask = (1 << n_spins) - 1; mask >= 0; --mask)
            if (popcount(static_cast<unsigned>(mask)) == ups)
                states.push_back({n_ph, static_cast<unsigned>(mask)});
    }
    if (states.empty()) throw std::invalid_argument("tavis-cummings sector is empty");

    std::map<std::pair<int, unsigned>, int> index;
    const int dim = static_cast<int>(states.size());
    for (int i = 0; i < dim; ++i) index[{states[i].n_ph, states[i].mask}] = i;

    TavisCummingsSector out;
    out.basis.dimension = dim;
    for (const State& s : states) {
        std::string label = std::to_string(s.n_ph) + ";";
        for (int j = 1; j <= n_spins; ++j)
            label += ((s.mask >> (n_spins - j)) & 1u) ? 'u' : 'd';
        out.basis.labels.push_back(label);
    }

    DiabaticModel& m = out.model;
    m.n = dim;
    m.tau = tau;
    m.slope.assign(dim, 0.0);
    m.tau_slope.assign(dim, 0.0);
    m.coupling = Matrix(dim, dim);
    TtauPartner& p = out.partner;
    p.b11.assign(dim, 0.0);
    p.a1 = Matrix(dim, dim);
    p.c = Matrix(dim, dim);

    for (int i = 0; i < dim; ++i) {
        const State& s = states[i];
        m.slope[i] = -static_cast<double>(s.n_ph);
        double sz = 0.0;
        for (int j = 1; j <= n_spins; ++j) {
            const double z = ((s.mask >> (n_spins - j)) & 1u) ? 0.5 : -0.5;
            m.tau_slope[i] += eps[j - 1] * z;
            p.b11[i] += eps[j - 1] * eps[j - 1] * z;
            sz += z;
        }
        // zz part of the ordered pair sum: (sum z)^2 - N/4
        p.c(i, i) += g * g * (sz * sz - 0.25 * n_spins);

        for (int j = 1; j <= n_spins; ++j) {
            const unsigned bit_j = 1u << (n_spins - j);
            if (s.mask & bit_j) {
                // photon emission: psi^dag s_j^-  (h.c. filled symmetrically)
                const int to = index.at({s.n_ph + 1, s.mask & ~bit_j});
                const double el = std::sqrt(static_cast<double>(s.n_ph + 1));
                m.coupling(to, i) += g * el;
                m.coupling(i, to) += g * el;
                p.a1(to, i) += g * eps[j - 1] * el;
                p.a1(i, to) += g * eps[j - 1] * el;
                // spin-exchange part of the pair sum: flip j down, k up
                for (int k = 1; k <= n_spins; ++k) {
                    const unsigned bit_k = 1u << (n_spins - k);
                    if (k == j || (s.mask & bit_k)) continue;
                    const int flip = index.at({s.n_ph, (s.mask & ~bit_j) | bit_k});
                    p.c(flip, i) += g * g;
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// interacting fermions
// ---------------------------------------------------------------------------

namespace {

// Modes ordered d = 0 < c_1 < ... < c_{N-1}; bit (N-1-mode) of the mask holds
// the occupation so that the d mode is the most significant bit.
struct FermionSpace {
    int n_modes;
    std::vector<unsigned> masks;               // basis, descending
    std::map<unsigned, int> index;

    int occ(unsigned mask, int mode) const { return (mask >> (n_modes - 1 - mode)) & 1u; }

    // Jordan-Wigner parity of modes strictly before `mode`
    double jw_sign(unsigned mask, int mode) const {
        int count = 0;
        for (int l = 0; l < mode; ++l) count += occ(mask, l);
        return (count % 2 == 0) ? 1.0 : -1.0;
    }

    // c_p^dag c_q; returns false when it annihilates the state
    bool hop(unsigned mask, int p, int q, unsigned& out_mask, double& out_sign) const {
        if (!occ(mask, q) || occ(mask, p)) return false;
        double sign = jw_sign(mask, q);
        const unsigned cleared = mask & ~(1u << (n_modes - 1 - q));
        sign *= jw_sign(cleared, p);
        out_mask = cleared | (1u << (n_modes - 1 - p));
        out_sign = sign;
        return true;
    }
};

// accumulate factor * (c_p^dag c_q + c_q^dag c_p) restricted to the sector
void add_hop_pair(Matrix& m, const FermionSpace& space, int p, int q, double factor,
                  bool require_mode_occupied = false, int required_mode = -1) {
    unsigned to_mask;
    double sign;
    const int dim = static_cast<int>(space.masks.size());
    for (int i = 0; i < dim; ++i) {
        const unsigned mask = space.masks[i];
        if (require_mode_occupied && !space.occ(mask, required_mode)) continue;
        if (space.hop(mask, p, q, to_mask, sign)) m(space.index.at(to_mask), i) += factor * sign;
        if (space.hop(mask, q, p, to_mask, sign)) m(space.index.at(to_mask), i) += factor * sign;
    }
}

} // namespace

FermionSector build_fermion(const std::vector<double>& e, const std::vector<double>& g, double x,
                            int n_particles, double tau) {
    if (e.empty() || e.size() != g.size())
        throw std::invalid_argument("fermion model requires matching nonempty e and g lists");
    std::set<double> distinct(e.begin(), e.end());
    if (distinct.size() != e.size())
        throw std::invalid_argument("fermion model requires distinct e_k");
    if (tau <= 0.0) throw std::invalid_argument("fermion model requires tau > 0");
    const int n_modes = static_cast<int>(e.size()) + 1;
    if (n_particles < 1 || n_particles > n_modes)
        throw std::invalid_argument("fermion sector is empty");

    FermionSpace space;
    space.n_modes = n_modes;
    for (int mask = (1 << n_modes) - 1; mask >= 0; --mask)
        if (popcount(static_cast<unsigned>(mask)) == n_particles)
            space.masks.push_back(static_cast<unsigned>(mask));
    const int dim = static_cast<int>(space.masks.size());
    for (int i = 0; i < dim; ++i) space.index[space.masks[i]] = i;

    // mode k >= 1 carries e[k-1], g[k-1]
    auto ek = [&](int mode) { return e[mode - 1]; };
    auto gk = [&](int mode) { return g[mode - 1]; };

    FermionSector out;
    out.basis.dimension = dim;
    for (unsigned mask : space.masks) {
        std::string label;
        for (int mode = 0; mode < n_modes; ++mode) label += space.occ(mask, mode) ? '1' : '0';
        out.basis.labels.push_back(label);
    }

    DiabaticModel& m = out.model;
    m.n = dim;
    m.tau = tau;
    m.slope.assign(dim, 0.0);
    m.tau_slope.assign(dim, 0.0);
    m.coupling = Matrix(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const unsigned mask = space.masks[i];
        const int nd = space.occ(mask, 0);
        m.slope[i] = nd;
        for (int k = 1; k < n_modes; ++k)
            m.tau_slope[i] += ek(k) * (1.0 - x * nd) * space.occ(mask, k);
    }
    for (int k = 1; k < n_modes; ++k) add_hop_pair(m.coupling, space, 0, k, gk(k));

    // the conserved operator attached to mode j, with energies scaled by tau
    for (int j = 1; j < n_modes; ++j) {
        TtauOperator h;
        h.t_part = Matrix(dim, dim);
        h.tau_part = Matrix(dim, dim);
        h.const_part = Matrix(dim, dim);
        h.invtau_part = Matrix(dim, dim);
        for (int i = 0; i < dim; ++i) {
            const unsigned mask = space.masks[i];
            const int nd = space.occ(mask, 0);
            const int nj = space.occ(mask, j);
            h.t_part(i, i) = nj * (1.0 - x * nd);
            double diag_tau = -ek(j) * nj;
            if (nd && nj) {
                double esum = 0.0;
                for (int k = 1; k < n_modes; ++k) esum += ek(k) * space.occ(mask, k);
                diag_tau += x * x * esum;
            }
            if (nj)
                for (int k = 1; k < n_modes; ++k)
                    if (k != j) diag_tau -= x * ek(k) * space.occ(mask, k);
            h.tau_part(i, i) = diag_tau;
            for (int k = 1; k < n_modes; ++k)
                if (k != j)
                    h.invtau_part(i, i) += (gk(j) * gk(j) * space.occ(mask, k) +
                                            gk(k) * gk(k) * nj) /
                                           (ek(j) - ek(k));
        }
        add_hop_pair(h.const_part, space, 0, j, -gk(j));
        for (int k = 1; k < n_modes; ++k) {
            if (k == j) continue;
            add_hop_pair(h.const_part, space, 0, k, -x * gk(k), true, j);
            add_hop_pair(h.invtau_part, space, j, k, -gk(j) * gk(k) / (ek(j) - ek(k)));
        }
        out.conserved.push_back(std::move(h));
    }

    // partner = sum_j e_j H_j(tau e); its t coefficient reproduces diag(tau_slope)
    TtauOperator sum;
    sum.t_part = Matrix(dim, dim);
    sum.tau_part = Matrix(dim, dim);
    sum.const_part = Matrix(dim, dim);
    sum.invtau_part = Matrix(dim, dim);
    for (int j = 1; j < n_modes; ++j) sum.add_scaled(out.conserved[j - 1], ek(j));
    out.partner.b11.resize(dim);
    for (int i = 0; i < dim; ++i) out.partner.b11[i] = sum.tau_part(i, i);
    out.partner.a1 = sum.const_part;
    out.partner.c = sum.invtau_part;
    return out;
}

// ---------------------------------------------------------------------------
// spin algebra on 2^N
// ---------------------------------------------------------------------------

namespace {

int spin_dim(int n_spins) { return 1 << n_spins; }

unsigned spin_bit(int n_spins, int j) { return 1u << (n_spins - j); }

} // namespace

Matrix spin_z(int n_spins, int j) {
    const int d = spin_dim(n_spins);
    Matrix m(d, d);
    for (int s = 0; s < d; ++s) m(s, s) = (s & spin_bit(n_spins, j)) ? 0.5 : -0.5;
    return m;
}

Matrix spin_plus(int n_spins, int j) {
    const int d = spin_dim(n_spins);
    Matrix m(d, d);
    const unsigned bit = spin_bit(n_spins, j);
    for (int s = 0; s < d; ++s)
        if (!(s & bit)) m(s | bit, s) = 1.0;
    return m;
}

Matrix spin_minus(int n_spins, int j) { return spin_plus(n_spins, j).transpose(); }

Matrix total_spin_squared(int n_spins) {
    const int d = spin_dim(n_spins);
    Matrix sz(d, d), sp(d, d);
    for (int j = 1; j <= n_spins; ++j) {
        sz += spin_z(n_spins, j);
        sp += spin_plus(n_spins, j);
    }
    const Matrix sm = sp.transpose();
    Matrix s2 = sz * sz;
    Matrix anti = sp * sm + sm * sp;
    anti *= 0.5;
    s2 += anti;
    return s2;
}

Matrix spin_pair_sum(int n_spins) {
    const int d = spin_dim(n_spins);
    Matrix m(d, d);
    for (int s = 0; s < d; ++s) {
        const double sz = popcount(static_cast<unsigned>(s)) - 0.5 * n_spins;
        m(s, s) = sz * sz - 0.25 * n_spins;
        for (int j = 1; j <= n_spins; ++j) {
            const unsigned bj = spin_bit(n_spins, j);
            if (!(s & bj)) continue;
            for (int k = 1; k <= n_spins; ++k) {
                const unsigned bk = spin_bit(n_spins, k);
                if (k == j || (s & bk)) continue;
                m((s & ~bj) | bk, s) += 1.0;
            }
        }
    }
    return m;
}

SpinIdentityReport spin_identity_report(int n_spins) {
    if (n_spins < 1 || n_spins > 6)
        throw std::invalid_argument("spin identity report supports 1 <= N <= 6");

    const int d = spin_dim(n_spins);
    Matrix sp(d, d);
    for (int j = 1; j <= n_spins; ++j) sp += spin_plus(n_spins, j);
    const Matrix s2 = total_spin_squared(n_spins);
    const Matrix pair = spin_pair_sum(n_spins);

    SpinIdentityReport report;
    report.n_spins = n_spins;
    report.s2_splus_comm_norm = frobenius_norm(commutator(s2, sp));
    report.pairsum_splus_comm_norm = frobenius_norm(commutator(pair, sp));

    // least-squares fit  pair = alpha * s2 + gamma * I  in the Frobenius inner product
    auto inner = [](const Matrix& a, const Matrix& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
        return s;
    };
    const Matrix eye = Matrix::identity(d);
    const double a11 = inner(s2, s2), a12 = inner(s2, eye), a22 = inner(eye, eye);
    const double r1 = inner(s2, pair), r2 = inner(eye, pair);
    const double det = a11 * a22 - a12 * a12;
    report.alpha = (r1 * a22 - r2 * a12) / det;
    report.gamma = (a11 * r2 - a12 * r1) / det;
    Matrix fit = report.alpha * Matrix(s2) + report.gamma * Matrix(eye);
    report.fit_residual = frobenius_norm(pair - fit);
    return report;
}

} // namespace mlz
