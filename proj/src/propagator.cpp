#include "mlz/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace mlz {

TransitionMatrix make_transition_matrix(Matrix p) {
    TransitionMatrix tm;
    const int n = p.rows();
    double defect = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < n; ++j) {
            row += p(i, j);
            col += p(j, i);
        }
        defect = std::max({defect, std::abs(row - 1.0), std::abs(col - 1.0)});
    }
    tm.p = std::move(p);
    tm.stochastic_defect = defect;
    return tm;
}

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
// difference between the 5th- and 4th-order weights
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

struct InteractionPicture {
    int n = 0;
    std::vector<double> slope;
    std::vector<double> eps; // tau_slope * tau + coupling diagonal
    struct Pair {
        int a, b;
        double g;
    };
    std::vector<Pair> pairs;

    explicit InteractionPicture(const DiabaticModel& model)
        : n(model.n), slope(model.slope), eps(model.intercepts()) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (model.coupling(a, b) != 0.0) pairs.push_back({a, b, model.coupling(a, b)});
    }

    // dB = -i V(t) B with V_ab = A0_ab exp(i(theta_a - theta_b))
    void rhs(double t, const Complex* B, Complex* dB, Complex* phase) const {
        for (int k = 0; k < n; ++k) {
            const double theta = (0.5 * slope[k] * t + eps[k]) * t;
            phase[k] = Complex(std::cos(theta), std::sin(theta));
        }
        const size_t total = static_cast<size_t>(n) * n;
        std::fill(dB, dB + total, Complex(0.0, 0.0));
        for (const Pair& p : pairs) {
            const Complex w = phase[p.a] * std::conj(phase[p.b]);
            const Complex f_ab(p.g * w.imag(), -p.g * w.real());  // -i g w
            const Complex f_ba(-p.g * w.imag(), -p.g * w.real()); // -i g conj(w)
            const Complex* row_a = B + static_cast<size_t>(p.a) * n;
            const Complex* row_b = B + static_cast<size_t>(p.b) * n;
            Complex* out_a = dB + static_cast<size_t>(p.a) * n;
            Complex* out_b = dB + static_cast<size_t>(p.b) * n;
            for (int c = 0; c < n; ++c) {
                out_a[c] += f_ab * row_b[c];
                out_b[c] += f_ba * row_a[c];
            }
        }
    }
};

} // namespace

ComplexMatrix propagate(const DiabaticModel& model, double T, double rk_tol) {
    if (T <= 0.0) throw std::invalid_argument("propagate requires T > 0");
    if (rk_tol <= 0.0) throw std::invalid_argument("propagate requires rk_tol > 0");
    model.validate();

    ComplexMatrix u = ComplexMatrix::identity(model.n);
    const InteractionPicture sys(model);
    if (sys.pairs.empty()) return u; // nothing couples: the interaction picture is static

    const int n = model.n;
    const size_t total = static_cast<size_t>(n) * n;
    std::vector<Complex> y(u.data()), ytmp(total), k1(total), k2(total), k3(total), k4(total),
        k5(total), k6(total), k7(total), phase(n);

    double t = -T;
    double rate = 0.0;
    for (int k = 0; k < n; ++k) rate = std::max(rate, std::abs(sys.slope[k] * t + sys.eps[k]));
    double h = std::min({2.0 * T, 1e-2, 0.1 / (1.0 + rate)});

    sys.rhs(t, y.data(), k1.data(), phase.data());
    while (t < T) {
        h = std::min(h, T - t);
        if (h < 1e-13 * (1.0 + std::abs(t)))
            throw std::runtime_error("step size underflow at t = " + std::to_string(t));

        for (size_t i = 0; i < total; ++i) ytmp[i] = y[i] + h * (A21 * k1[i]);
        sys.rhs(t + C2 * h, ytmp.data(), k2.data(), phase.data());
        for (size_t i = 0; i < total; ++i) ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        sys.rhs(t + C3 * h, ytmp.data(), k3.data(), phase.data());
        for (size_t i = 0; i < total; ++i)
            ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        sys.rhs(t + C4 * h, ytmp.data(), k4.data(), phase.data());
        for (size_t i = 0; i < total; ++i)
            ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        sys.rhs(t + C5 * h, ytmp.data(), k5.data(), phase.data());
        for (size_t i = 0; i < total; ++i)
            ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] +
                                  A65 * k5[i]);
        sys.rhs(t + h, ytmp.data(), k6.data(), phase.data());
        for (size_t i = 0; i < total; ++i)
            ytmp[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        sys.rhs(t + h, ytmp.data(), k7.data(), phase.data());

        double err = 0.0;
        for (size_t i = 0; i < total; ++i) {
            const Complex e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                                   E7 * k7[i]);
            err = std::max(err, std::abs(e));
        }

        if (err <= rk_tol) {
            t += h;
            y.swap(ytmp);
            k1.swap(k7); // first-same-as-last
        }
        const double factor =
            err > 0.0 ? 0.9 * std::pow(rk_tol / err, 0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }

    std::copy(y.begin(), y.end(), u.data().begin());
    return u;
}

PropagationResult transition_matrix(const DiabaticModel& model, std::vector<double> horizons,
                                    double rk_tol) {
    if (horizons.empty()) horizons = {500.0, 707.0, 1000.0, 1414.0, 2000.0};
    if (horizons.size() < 3) throw std::invalid_argument("transition_matrix needs >= 3 horizons");
    for (size_t i = 1; i < horizons.size(); ++i)
        if (horizons[i] <= horizons[i - 1])
            throw std::invalid_argument("horizons must be strictly increasing");

    const int n = model.n;
    const size_t runs = horizons.size();
    std::vector<ComplexMatrix> amplitudes(runs);
    std::vector<std::string> failures(runs);

    auto run = [&](size_t idx) {
        try {
            amplitudes[idx] = propagate(model, horizons[idx], rk_tol);
        } catch (const std::exception& e) {
            failures[idx] = e.what();
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw > 1 && runs > 1) {
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        const unsigned count = std::min<unsigned>(hw, static_cast<unsigned>(runs));
        for (unsigned w = 0; w < count; ++w)
            workers.emplace_back([&]() {
                for (size_t idx = next.fetch_add(1); idx < runs; idx = next.fetch_add(1)) run(idx);
            });
        for (auto& w : workers) w.join();
    } else {
        for (size_t idx = 0; idx < runs; ++idx) run(idx);
    }
    for (const std::string& f : failures)
        if (!f.empty()) throw std::runtime_error(f);

    PropagationResult result;
    result.horizons = horizons;
    result.rk_tol = rk_tol;
    Matrix mean(n, n), lo(n, n), hi(n, n);
    for (size_t r = 0; r < runs; ++r) {
        result.max_unitarity_defect =
            std::max(result.max_unitarity_defect, unitarity_defect(amplitudes[r]));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double p = std::norm(amplitudes[r](i, j));
                mean(i, j) += p;
                if (r == 0) {
                    lo(i, j) = p;
                    hi(i, j) = p;
                } else {
                    lo(i, j) = std::min(lo(i, j), p);
                    hi(i, j) = std::max(hi(i, j), p);
                }
            }
    }
    mean *= 1.0 / static_cast<double>(runs);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) result.dispersion = std::max(result.dispersion, hi(i, j) - lo(i, j));
    result.probability = make_transition_matrix(std::move(mean));
    result.amplitude = amplitudes.back();
    return result;
}

std::vector<std::pair<double, TransitionMatrix>> tau_sweep(const DiabaticModel& model,
                                                           const std::vector<double>& tau0_list,
                                                           double T, double rk_tol) {
    if (tau0_list.empty()) throw std::invalid_argument("tau_sweep requires tau0 values");
    for (size_t i = 0; i < tau0_list.size(); ++i) {
        if (tau0_list[i] <= 0.0) throw std::invalid_argument("tau0 values must be positive");
        if (i > 0 && tau0_list[i] <= tau0_list[i - 1])
            throw std::invalid_argument("tau0 values must be increasing");
    }

    std::vector<std::pair<double, TransitionMatrix>> sweep;
    for (double tau0 : tau0_list) {
        DiabaticModel m = model;
        m.tau = tau0;
        PropagationResult res =
            transition_matrix(m, {0.5 * T, T / std::sqrt(2.0), T}, rk_tol);
        sweep.emplace_back(tau0, std::move(res.probability));
    }
    return sweep;
}

} // namespace mlz
