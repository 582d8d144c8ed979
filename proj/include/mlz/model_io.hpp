#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "mlz/integrability.hpp"
#include "mlz/model.hpp"
#include "mlz/propagator.hpp"
#include "mlz/semiclassical.hpp"
#include "mlz/spectrum.hpp"

namespace mlz::io {

using nlohmann::json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, int rows, int cols, const std::string& what);

/// Model document: {"n", "slope", "tau_slope", "coupling", "tau"} plus an
/// optional "partner": {"b11", "a1", "c"}.
json model_to_json(const DiabaticModel& model, const TtauPartner* partner = nullptr);

struct LoadedModel {
    DiabaticModel model;
    std::optional<TtauPartner> partner;
};

/// Validates shapes, symmetry (1e-12 relative) and finiteness; throws
/// std::invalid_argument with a message on any violation.
LoadedModel model_from_json(const json& j);

LoadedModel load_model_file(const std::string& path);

json residual_report_to_json(const ResidualReport& r);
json solve_report_to_json(const PartnerSolveReport& r);
json scan_report_to_json(const ScanReport& r);
json zero_area_report_to_json(const ZeroAreaReport& r);
json crossing_events_to_json(const std::vector<CrossingEvent>& events);
json exact_crossings_to_json(const std::vector<ExactCrossing>& events);
json count_report_to_json(const CrossingCountReport& r);
json propagation_result_to_json(const PropagationResult& r);
json prediction_to_json(const Prediction& p);
json comparison_to_json(const ComparisonReport& r);

void write_eigenflow_csv(std::ostream& out, const EigenFlow& flow);
void write_matrix_csv(std::ostream& out, const Matrix& m);

} // namespace mlz::io
