#include "mlz/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mlz {

EigenFlow eigenflow(const DiabaticModel& model, double t_min, double t_max, int samples) {
    if (samples < 2) throw std::invalid_argument("eigenflow requires at least two samples");
    model.validate();

    EigenFlow flow;
    flow.times.resize(samples);
    flow.curves.assign(model.n, std::vector<double>(samples, 0.0));
    for (int i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * i / (samples - 1);
        flow.times[i] = t;
        const EigenDecomposition dec = sym_eigen(assemble_H(model, t));
        for (int k = 0; k < model.n; ++k) flow.curves[k][i] = dec.values[k];
    }
    return flow;
}

std::vector<CrossingEvent> diabatic_crossings(const DiabaticModel& model) {
    model.validate();
    const std::vector<double> eps = model.intercepts();

    std::vector<CrossingEvent> events;
    for (int a = 0; a < model.n; ++a)
        for (int b = a + 1; b < model.n; ++b) {
            const double dslope = model.slope[a] - model.slope[b];
            if (dslope == 0.0) continue;
            CrossingEvent ev;
            ev.a = a;
            ev.b = b;
            ev.time = -(eps[a] - eps[b]) / dslope;
            ev.energy = model.slope[a] * ev.time + eps[a];
            ev.coupling = model.coupling(a, b);
            ev.lz_p = std::exp(-2.0 * std::numbers::pi * ev.coupling * ev.coupling /
                               std::abs(dslope));

            double scale = 1.0;
            for (int k = 0; k < model.n; ++k)
                scale = std::max(scale, std::abs(model.slope[k] * ev.time + eps[k]));
            ev.isolated = true;
            for (int k = 0; k < model.n; ++k) {
                if (k == a || k == b) continue;
                const double ek = model.slope[k] * ev.time + eps[k];
                if (std::abs(ek - ev.energy) < 1e-9 * scale) ev.isolated = false;
            }
            events.push_back(ev);
        }

    std::sort(events.begin(), events.end(), [](const CrossingEvent& x, const CrossingEvent& y) {
        if (x.time != y.time) return x.time < y.time;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return events;
}

namespace {

double adjacent_gap(const DiabaticModel& model, int lower, double t) {
    const EigenDecomposition dec = sym_eigen(assemble_H(model, t));
    return dec.values[lower + 1] - dec.values[lower];
}

// golden-section minimum of the (lower, lower+1) gap on [a, b]
std::pair<double, double> refine_gap_minimum(const DiabaticModel& model, int lower, double a,
                                             double b) {
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - golden * (b - a);
    double x2 = a + golden * (b - a);
    double f1 = adjacent_gap(model, lower, x1);
    double f2 = adjacent_gap(model, lower, x2);
    while (b - a > 1e-12) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = adjacent_gap(model, lower, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = adjacent_gap(model, lower, x2);
        }
    }
    const double t = 0.5 * (a + b);
    return {t, adjacent_gap(model, lower, t)};
}

} // namespace

std::vector<ExactCrossing> find_exact_crossings(const DiabaticModel& model, double window_min,
                                                double window_max, int grid,
                                                double threshold_rel) {
    if (grid < 3) throw std::invalid_argument("find_exact_crossings requires grid >= 3");
    const EigenFlow flow = eigenflow(model, window_min, window_max, grid);

    double spectral_scale = 0.0;
    for (const auto& curve : flow.curves)
        for (double v : curve) spectral_scale = std::max(spectral_scale, std::abs(v));
    const double threshold = threshold_rel * std::max(spectral_scale, 1.0);

    std::vector<ExactCrossing> found;
    for (int lower = 0; lower + 1 < model.n; ++lower) {
        std::vector<double> gap(grid);
        for (int i = 0; i < grid; ++i) gap[i] = flow.curves[lower + 1][i] - flow.curves[lower][i];
        for (int i = 1; i + 1 < grid; ++i) {
            if (!(gap[i] <= gap[i - 1] && gap[i] <= gap[i + 1])) continue;
            const auto [t, g] = refine_gap_minimum(model, lower, flow.times[i - 1], flow.times[i + 1]);
            if (g >= threshold) continue;
            bool duplicate = false;
            for (const ExactCrossing& e : found)
                if (e.lower == lower && std::abs(e.time - t) < 1e-9) duplicate = true;
            if (!duplicate) found.push_back({t, lower, g});
        }
    }
    std::sort(found.begin(), found.end(), [](const ExactCrossing& x, const ExactCrossing& y) {
        if (x.time != y.time) return x.time < y.time;
        return x.lower < y.lower;
    });
    return found;
}

CrossingCountReport crossing_count_check(const DiabaticModel& model, double window_min,
                                         double window_max, int grid, double threshold_rel) {
    CrossingCountReport report;
    for (const CrossingEvent& ev : diabatic_crossings(model)) {
        if (ev.isolated && ev.coupling == 0.0 && ev.time >= window_min && ev.time <= window_max) {
            report.predicted_events.push_back(ev);
        }
    }
    report.predicted = static_cast<int>(report.predicted_events.size());
    report.found_events = find_exact_crossings(model, window_min, window_max, grid, threshold_rel);
    report.found = static_cast<int>(report.found_events.size());
    report.match = report.predicted == report.found;
    for (int a = 0; a < model.n; ++a)
        for (int b = a + 1; b < model.n; ++b)
            report.coupling_scale = std::max(report.coupling_scale, std::abs(model.coupling(a, b)));
    return report;
}

} // namespace mlz
