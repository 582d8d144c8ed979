#include "mlz/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlz {

CrossingDiagram build_diagram(const DiabaticModel& model) {
    CrossingDiagram diagram;
    diagram.n = model.n;
    const std::vector<CrossingEvent> events = diabatic_crossings(model);

    for (const CrossingEvent& ev : events) {
        Matrix block = Matrix::identity(model.n);
        if (ev.coupling != 0.0) {
            const double p = ev.lz_p;
            const double q = 1.0 - p;
            block(ev.a, ev.a) = p;
            block(ev.b, ev.b) = p;
            block(ev.a, ev.b) = q;
            block(ev.b, ev.a) = q;
        }
        diagram.events.push_back({ev, std::move(block)});
    }

    // two coupled transitions meeting at the same instant on a shared level
    // have no chronological order
    for (size_t i = 0; i < diagram.events.size(); ++i) {
        const CrossingEvent& x = diagram.events[i].crossing;
        if (x.coupling == 0.0) continue;
        for (size_t j = i + 1; j < diagram.events.size(); ++j) {
            const CrossingEvent& y = diagram.events[j].crossing;
            if (y.coupling == 0.0) continue;
            if (std::abs(x.time - y.time) > 1e-9 * (1.0 + std::abs(x.time))) break;
            if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b)
                throw std::runtime_error(
                    "degenerate crossing diagram: coupled events at t = " + std::to_string(x.time) +
                    " share level " + std::to_string(x.a == y.a || x.b == y.a ? y.a : y.b));
        }
    }
    return diagram;
}

Prediction predict_probabilities(const DiabaticModel& model) {
    const CrossingDiagram diagram = build_diagram(model);
    const int n = diagram.n;

    Matrix product = Matrix::identity(n);
    Matrix counts = Matrix::identity(n);
    for (const CrossingDiagram::Event& ev : diagram.events) {
        product = ev.block * product;
        if (ev.crossing.coupling != 0.0) {
            const int a = ev.crossing.a, b = ev.crossing.b;
            for (int col = 0; col < n; ++col) {
                const double merged = counts(a, col) + counts(b, col);
                counts(a, col) = merged;
                counts(b, col) = merged;
            }
        }
    }

    Prediction pred;
    pred.paths.counts = counts;
    for (double c : counts.data())
        if (c >= 2.0) pred.paths.interference = true;
    pred.non_interference_approximation = pred.paths.interference;
    pred.probability = make_transition_matrix(std::move(product));
    return pred;
}

ComparisonReport compare_with_numerics(const DiabaticModel& model, std::vector<double> horizons,
                                       double rk_tol) {
    const Prediction pred = predict_probabilities(model);
    const PropagationResult numeric = transition_matrix(model, std::move(horizons), rk_tol);

    ComparisonReport report;
    report.predicted = pred.probability.p;
    report.numeric = numeric.probability.p;
    report.paths = pred.paths;
    report.numeric_dispersion = numeric.dispersion;
    report.max_unitarity_defect = numeric.max_unitarity_defect;
    report.max_deviation = max_abs(report.predicted - report.numeric);
    return report;
}

} // namespace mlz
