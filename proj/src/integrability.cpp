#include "mlz/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace mlz {

namespace {

Matrix diag_of(const std::vector<double>& d) { return Matrix::diagonal(d); }

} // namespace

double ResidualReport::max_condition_residual() const {
    return std::max({r_cc1, r_cc2, r_cc3, r_cc4, r_cc5, r_cc6});
}

ResidualReport verify_pair(const DiabaticModel& model, const TtauPartner& partner, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("verify_pair requires tol > 0");
    model.validate();
    const int n = model.n;
    if (static_cast<int>(partner.b11.size()) != n || partner.a1.rows() != n ||
        partner.a1.cols() != n || partner.c.rows() != n || partner.c.cols() != n)
        throw std::invalid_argument("partner dimensions do not match the model");

    const Matrix b00 = diag_of(model.slope);
    const Matrix b01 = diag_of(model.tau_slope);
    const Matrix b11 = diag_of(partner.b11);
    const Matrix& a0 = model.coupling;
    const Matrix& a1 = partner.a1;
    const Matrix& c = partner.c;

    ResidualReport report;
    report.tolerance = tol;
    report.r_cc1 = frobenius_norm(commutator(b00, b11)) + frobenius_norm(commutator(b00, b01)) +
                   frobenius_norm(commutator(b11, b01));
    report.r_cc2 = frobenius_norm(commutator(b01, a0) - commutator(b00, a1));
    report.r_cc6 = frobenius_norm(commutator(b01, a1) - commutator(b11, a0));
    report.r_cc3 = frobenius_norm(commutator(b01, c) + commutator(a0, a1));
    report.r_cc4 = frobenius_norm(commutator(b00, c));
    report.r_cc5 = frobenius_norm(commutator(a0, c));

    for (double t : {-2.0, 0.0, 2.0})
        for (double tau : {0.5, 1.0, 2.0}) {
            const Matrix h = assemble_H(model, t, tau);
            const Matrix hp = assemble_Hprime(model, partner, t, tau);
            const double nrm = frobenius_norm(commutator(h, hp));
            report.samples.push_back({t, tau, nrm});
            report.assembled_max = std::max(report.assembled_max, nrm);
        }

    report.pass = report.max_condition_residual() < tol;
    return report;
}

FlowReport verify_flow(const DiabaticModel& model, const TtauPartner& partner) {
    model.validate();
    if (static_cast<int>(partner.b11.size()) != model.n)
        throw std::invalid_argument("partner dimensions do not match the model");
    FlowReport report;
    report.holds = true;
    report.note = "d_tau H and d_t H' are both diag(tau_slope); the identity is enforced "
                  "by the shared tau_slope field of the pair representation";
    return report;
}

// ---------------------------------------------------------------------------
// linear solve for the partner
// ---------------------------------------------------------------------------

namespace {

// packed index of the (a,b) entry, a <= b, of a symmetric n x n matrix
int sym_index(int n, int a, int b) {
    if (a > b) std::swap(a, b);
    return a * n - a * (a + 1) / 2 + b;
}

struct UnknownLayout {
    int n;
    int n_sym;
    int b11(int k) const { return k; }
    int a1(int a, int b) const { return n + sym_index(n, a, b); }
    int c(int a, int b) const { return n + n_sym + sym_index(n, a, b); }
    int total() const { return n + 2 * n_sym; }
};

TtauPartner unpack(const UnknownLayout& lay, const std::vector<double>& x) {
    TtauPartner p;
    p.b11.assign(lay.n, 0.0);
    p.a1 = Matrix(lay.n, lay.n);
    p.c = Matrix(lay.n, lay.n);
    for (int k = 0; k < lay.n; ++k) p.b11[k] = x[lay.b11(k)];
    for (int a = 0; a < lay.n; ++a)
        for (int b = a; b < lay.n; ++b) {
            p.a1(a, b) = x[lay.a1(a, b)];
            p.a1(b, a) = p.a1(a, b);
            p.c(a, b) = x[lay.c(a, b)];
            p.c(b, a) = p.c(a, b);
        }
    return p;
}

std::vector<double> pack(const UnknownLayout& lay, const TtauPartner& p) {
    std::vector<double> x(lay.total(), 0.0);
    for (int k = 0; k < lay.n; ++k) x[lay.b11(k)] = p.b11[k];
    for (int a = 0; a < lay.n; ++a)
        for (int b = a; b < lay.n; ++b) {
            x[lay.a1(a, b)] = p.a1(a, b);
            x[lay.c(a, b)] = p.c(a, b);
        }
    return x;
}

} // namespace

PartnerSolveReport solve_partner(const DiabaticModel& model, double tol, double rank_tol) {
    model.validate();
    const int n = model.n;
    const UnknownLayout lay{n, n * (n + 1) / 2};
    const Matrix& a0 = model.coupling;
    const std::vector<double>& s0 = model.slope;
    const std::vector<double>& s1 = model.tau_slope;

    // one row per strictly-upper entry of each commutator condition; the
    // commutator of a diagonal with a symmetric (or of two symmetrics) is
    // antisymmetric, so the upper triangle carries all the information
    const int n_pairs = n * (n - 1) / 2;
    const int rows = 5 * n_pairs;
    Matrix mat(rows, lay.total());
    std::vector<double> rhs(rows, 0.0);

    int row = 0;
    // cc2: (s1_a - s1_b) A0_ab = (s0_a - s0_b) A1_ab
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++row) {
            mat(row, lay.a1(a, b)) += s0[a] - s0[b];
            rhs[row] = (s1[a] - s1[b]) * a0(a, b);
        }
    // cc6: (s1_a - s1_b) A1_ab - (b11_a - b11_b) A0_ab = 0
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++row) {
            mat(row, lay.a1(a, b)) += s1[a] - s1[b];
            mat(row, lay.b11(a)) -= a0(a, b);
            mat(row, lay.b11(b)) += a0(a, b);
        }
    // cc3: (s1_a - s1_b) C_ab + [A0, A1]_ab = 0
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++row) {
            mat(row, lay.c(a, b)) += s1[a] - s1[b];
            for (int k = 0; k < n; ++k) {
                mat(row, lay.a1(k, b)) += a0(a, k);
                mat(row, lay.a1(a, k)) -= a0(k, b);
            }
        }
    // cc4: (s0_a - s0_b) C_ab = 0
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++row) mat(row, lay.c(a, b)) += s0[a] - s0[b];
    // cc5: [A0, C]_ab = 0
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++row)
            for (int k = 0; k < n; ++k) {
                mat(row, lay.c(k, b)) += a0(a, k);
                mat(row, lay.c(a, k)) -= a0(k, b);
            }

    const LinearSolveResult sol = solve_linear(mat, rhs, rank_tol);

    PartnerSolveReport report;
    report.inhomogeneous_norm = frobenius_norm(commutator(diag_of(s1), a0));
    report.scale = report.inhomogeneous_norm + 1.0;
    report.residual = sol.residual;
    report.feasible = sol.residual < tol * report.scale;
    report.particular = unpack(lay, sol.particular);
    report.nullspace_dim = static_cast<int>(sol.nullspace.size());
    for (const auto& v : sol.nullspace) report.nullspace.push_back(unpack(lay, v));
    report.nontrivial =
        report.inhomogeneous_norm > 1e-12 * (1.0 + frobenius_norm(a0)) || report.nullspace_dim > 3;
    return report;
}

double partner_projection_distance(const PartnerSolveReport& report, const TtauPartner& candidate) {
    const int n = static_cast<int>(candidate.b11.size());
    const UnknownLayout lay{n, n * (n + 1) / 2};
    std::vector<double> delta = pack(lay, candidate);
    const std::vector<double> part = pack(lay, report.particular);
    for (size_t i = 0; i < delta.size(); ++i) delta[i] -= part[i];
    // nullspace vectors are orthonormal in the packed coordinates
    for (const TtauPartner& dir : report.nullspace) {
        const std::vector<double> v = pack(lay, dir);
        const double coef = dot(delta, v);
        for (size_t i = 0; i < delta.size(); ++i) delta[i] -= coef * v[i];
    }
    return norm2(delta);
}

// ---------------------------------------------------------------------------
// parameter scan
// ---------------------------------------------------------------------------

ScanReport scan_parameter(const std::function<DiabaticModel(double)>& builder,
                          const std::string& param_name, const std::vector<double>& grid,
                          double tol) {
    if (grid.empty()) throw std::invalid_argument("scan_parameter requires a nonempty grid");

    ScanReport report;
    report.param_name = param_name;

    auto residual_at = [&](double value) -> ScanPoint {
        ScanPoint pt;
        pt.value = value;
        try {
            const PartnerSolveReport r = solve_partner(builder(value), tol);
            pt.residual = r.residual;
            pt.ok = true;
            report.feasibility_scale = std::max(report.feasibility_scale, r.scale);
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
        return pt;
    };

    for (double v : grid) report.points.push_back(residual_at(v));

    const double threshold = tol * std::max(report.feasibility_scale, 1.0);
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    for (size_t i = 1; i + 1 < report.points.size(); ++i) {
        const ScanPoint& lo = report.points[i - 1];
        const ScanPoint& mid = report.points[i];
        const ScanPoint& hi = report.points[i + 1];
        if (!lo.ok || !mid.ok || !hi.ok) continue;
        if (!(mid.residual < lo.residual && mid.residual <= hi.residual)) continue;
        if (std::max(lo.residual, hi.residual) <= threshold) continue; // residual flat near zero

        double a = lo.value, b = hi.value;
        double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
        double f1 = residual_at(x1).residual, f2 = residual_at(x2).residual;
        while (b - a > 1e-6) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - golden * (b - a);
                f1 = residual_at(x1).residual;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + golden * (b - a);
                f2 = residual_at(x2).residual;
            }
        }
        const double root = 0.5 * (a + b);
        if (residual_at(root).residual < threshold) report.roots.push_back(root);
    }
    return report;
}

// ---------------------------------------------------------------------------
// zero-area property
// ---------------------------------------------------------------------------

ZeroAreaCycle evaluate_cycle(const DiabaticModel& model, const std::vector<int>& vertices,
                             double tol) {
    ZeroAreaCycle cyc;
    cyc.vertices = vertices;
    const size_t len = vertices.size();
    for (size_t i = 0; i < len; ++i) {
        const int u = vertices[i];
        const int v = vertices[(i + 1) % len];
        const double ds = model.slope[u] - model.slope[v];
        if (ds == 0.0) {
            ++cyc.skipped_edges;
            continue;
        }
        const double dt = model.tau_slope[u] - model.tau_slope[v];
        cyc.sum += dt * dt / ds;
    }
    cyc.pass = cyc.skipped_edges == 0 && std::abs(cyc.sum) < tol;
    return cyc;
}

ZeroAreaReport zero_area_check(const DiabaticModel& model, double tol, const TtauPartner* partner) {
    model.validate();
    const int n = model.n;

    ZeroAreaReport report;
    report.tolerance = tol;
    report.has_partner = partner != nullptr;
    for (int k = 0; k < n; ++k)
        if (model.coupling(k, k) != 0.0) report.warn_nonzero_diagonal = true;

    std::vector<std::vector<int>> adj(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (model.coupling(a, b) == 0.0) continue;
            adj[a].push_back(b);
            adj[b].push_back(a);

            ZeroAreaEdge edge;
            edge.a = a;
            edge.b = b;
            const double ds = model.slope[a] - model.slope[b];
            if (ds != 0.0) {
                edge.evaluable = true;
                const double dt = model.tau_slope[a] - model.tau_slope[b];
                edge.slope_value = dt * dt / ds;
                if (partner) {
                    edge.partner_value = partner->b11[a] - partner->b11[b];
                    edge.mismatch = std::abs(edge.partner_value - edge.slope_value);
                }
            }
            report.edges.push_back(edge);
        }

    // breadth-first spanning forest; every non-tree edge closes one
    // fundamental cycle through the lowest common ancestor
    std::vector<int> parent(n, -1), depth(n, 0), state(n, 0);
    std::vector<std::pair<int, int>> chords;
    for (int root = 0; root < n; ++root) {
        if (state[root] != 0) continue;
        std::queue<int> q;
        q.push(root);
        state[root] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (state[v] == 0) {
                    state[v] = 1;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    q.push(v);
                } else if (v != parent[u] && u < v) {
                    chords.emplace_back(u, v);
                }
            }
        }
    }

    bool all_pass = true;
    for (const auto& [u, v] : chords) {
        std::vector<int> up_u{u}, up_v{v};
        int x = u, y = v;
        while (depth[x] > depth[y]) up_u.push_back(x = parent[x]);
        while (depth[y] > depth[x]) up_v.push_back(y = parent[y]);
        while (x != y) {
            up_u.push_back(x = parent[x]);
            up_v.push_back(y = parent[y]);
        }
        // walk u -> lca -> v; the closing edge (v,u) is the chord
        std::vector<int> cycle(up_u.begin(), up_u.end());
        for (auto it = up_v.rbegin() + 1; it != up_v.rend(); ++it) cycle.push_back(*it);
        ZeroAreaCycle cyc = evaluate_cycle(model, cycle, tol);
        all_pass = all_pass && cyc.pass;
        report.cycles.push_back(std::move(cyc));
    }

    if (partner)
        for (const ZeroAreaEdge& e : report.edges)
            if (e.evaluable && e.mismatch >= tol) all_pass = false;

    report.pass = all_pass;
    return report;
}

} // namespace mlz
