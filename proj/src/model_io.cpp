#include "mlz/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mlz::io {

namespace {

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> vector_from_json(const json& j, int size, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != size)
        throw std::invalid_argument(what + " must be an array of length " + std::to_string(size));
    std::vector<double> v;
    for (const auto& x : j) {
        if (!x.is_number()) throw std::invalid_argument(what + " entries must be numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

json vector_to_json(const std::vector<double>& v) { return json(v); }

} // namespace

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument(what + " must be a " + std::to_string(rows) + "-row array");
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument(what + " rows must have length " + std::to_string(cols));
        for (int c = 0; c < cols; ++c) {
            if (!row[c].is_number()) throw std::invalid_argument(what + " entries must be numbers");
            m(r, c) = row[c].get<double>();
        }
    }
    return m;
}

json model_to_json(const DiabaticModel& model, const TtauPartner* partner) {
    json j;
    j["n"] = model.n;
    j["slope"] = vector_to_json(model.slope);
    j["tau_slope"] = vector_to_json(model.tau_slope);
    j["coupling"] = matrix_to_json(model.coupling);
    j["tau"] = model.tau;
    if (partner) {
        json p;
        p["b11"] = vector_to_json(partner->b11);
        p["a1"] = matrix_to_json(partner->a1);
        p["c"] = matrix_to_json(partner->c);
        j["partner"] = std::move(p);
    }
    return j;
}

LoadedModel model_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("model document must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("model document needs an integer \"n\"");
    const int n = j["n"].get<int>();
    if (n < 1) throw std::invalid_argument("model needs n >= 1");
    for (const char* key : {"slope", "tau_slope", "coupling", "tau"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("model document needs \"") + key + "\"");

    LoadedModel out;
    out.model.n = n;
    out.model.slope = vector_from_json(j["slope"], n, "slope");
    out.model.tau_slope = vector_from_json(j["tau_slope"], n, "tau_slope");
    out.model.coupling = matrix_from_json(j["coupling"], n, n, "coupling");
    if (!j["tau"].is_number()) throw std::invalid_argument("tau must be a number");
    out.model.tau = j["tau"].get<double>();
    out.model.validate();

    if (j.contains("partner")) {
        const json& p = j["partner"];
        for (const char* key : {"b11", "a1", "c"})
            if (!p.contains(key))
                throw std::invalid_argument(std::string("partner needs \"") + key + "\"");
        TtauPartner partner;
        partner.b11 = vector_from_json(p["b11"], n, "partner.b11");
        partner.a1 = matrix_from_json(p["a1"], n, n, "partner.a1");
        partner.c = matrix_from_json(p["c"], n, n, "partner.c");
        if (!partner.a1.is_symmetric(1e-12)) throw std::invalid_argument("partner.a1 must be symmetric");
        if (!partner.c.is_symmetric(1e-12)) throw std::invalid_argument("partner.c must be symmetric");
        out.partner = std::move(partner);
    }
    return out;
}

LoadedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return model_from_json(j);
}

json residual_report_to_json(const ResidualReport& r) {
    json j;
    j["cc1"] = r.r_cc1;
    j["cc2"] = r.r_cc2;
    j["cc3"] = r.r_cc3;
    j["cc4"] = r.r_cc4;
    j["cc5"] = r.r_cc5;
    j["cc6"] = r.r_cc6;
    j["max_condition_residual"] = r.max_condition_residual();
    json samples = json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"t", s.t}, {"tau", s.tau}, {"commutator_norm", s.commutator_norm}});
    j["assembled"] = std::move(samples);
    j["assembled_max"] = r.assembled_max;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

json solve_report_to_json(const PartnerSolveReport& r) {
    json j;
    j["feasible"] = r.feasible;
    j["residual"] = r.residual;
    j["scale"] = r.scale;
    j["nullspace_dim"] = r.nullspace_dim;
    j["nontrivial"] = r.nontrivial;
    j["inhomogeneous_norm"] = r.inhomogeneous_norm;
    json p;
    p["b11"] = vector_to_json(r.particular.b11);
    p["a1"] = matrix_to_json(r.particular.a1);
    p["c"] = matrix_to_json(r.particular.c);
    j["particular"] = std::move(p);
    return j;
}

json scan_report_to_json(const ScanReport& r) {
    json j;
    j["param"] = r.param_name;
    json pts = json::array();
    for (const auto& p : r.points) {
        json pt;
        pt["value"] = p.value;
        if (p.ok)
            pt["residual"] = p.residual;
        else
            pt["error"] = p.error;
        pts.push_back(std::move(pt));
    }
    j["points"] = std::move(pts);
    j["roots"] = vector_to_json(r.roots);
    j["feasibility_scale"] = r.feasibility_scale;
    return j;
}

json zero_area_report_to_json(const ZeroAreaReport& r) {
    json j;
    json cycles = json::array();
    for (const auto& c : r.cycles)
        cycles.push_back({{"vertices", c.vertices},
                          {"sum", c.sum},
                          {"skipped_edges", c.skipped_edges},
                          {"pass", c.pass}});
    j["cycles"] = std::move(cycles);
    json edges = json::array();
    for (const auto& e : r.edges) {
        json je;
        je["a"] = e.a;
        je["b"] = e.b;
        je["evaluable"] = e.evaluable;
        if (e.evaluable) {
            je["slope_value"] = e.slope_value;
            if (r.has_partner) {
                je["partner_value"] = e.partner_value;
                je["mismatch"] = e.mismatch;
            }
        }
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    j["warn_nonzero_diagonal"] = r.warn_nonzero_diagonal;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

json crossing_events_to_json(const std::vector<CrossingEvent>& events) {
    json arr = json::array();
    for (const auto& e : events)
        arr.push_back({{"a", e.a + 1},
                       {"b", e.b + 1},
                       {"time", e.time},
                       {"energy", e.energy},
                       {"coupling", e.coupling},
                       {"lz_p", e.lz_p},
                       {"isolated", e.isolated}});
    return arr;
}

json exact_crossings_to_json(const std::vector<ExactCrossing>& events) {
    json arr = json::array();
    for (const auto& e : events)
        arr.push_back({{"time", e.time}, {"pair", {e.lower + 1, e.lower + 2}}, {"gap", e.gap}});
    return arr;
}

json count_report_to_json(const CrossingCountReport& r) {
    json j;
    j["predicted"] = r.predicted;
    j["found"] = r.found;
    j["match"] = r.match;
    j["coupling_scale"] = r.coupling_scale;
    j["predicted_events"] = crossing_events_to_json(r.predicted_events);
    j["found_events"] = exact_crossings_to_json(r.found_events);
    return j;
}

json propagation_result_to_json(const PropagationResult& r) {
    json j;
    j["probability"] = matrix_to_json(r.probability.p);
    j["stochastic_defect"] = r.probability.stochastic_defect;
    j["dispersion"] = r.dispersion;
    j["max_unitarity_defect"] = r.max_unitarity_defect;
    json re = json::array(), im = json::array();
    for (int i = 0; i < r.amplitude.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (int c = 0; c < r.amplitude.cols(); ++c) {
            rrow.push_back(r.amplitude(i, c).real());
            irow.push_back(r.amplitude(i, c).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    j["amplitude_re"] = std::move(re);
    j["amplitude_im"] = std::move(im);
    j["integrator"] = {{"method", "dormand-prince-5(4), adaptive, interaction picture"},
                       {"rk_tol", r.rk_tol},
                       {"horizons", r.horizons},
                       {"averaging", "mean of |U(T)|^2 over horizons"}};
    return j;
}

json prediction_to_json(const Prediction& p) {
    json j;
    j["probability"] = matrix_to_json(p.probability.p);
    j["stochastic_defect"] = p.probability.stochastic_defect;
    j["path_counts"] = matrix_to_json(p.paths.counts);
    j["interference"] = p.paths.interference;
    j["non_interference_approximation"] = p.non_interference_approximation;
    return j;
}

json comparison_to_json(const ComparisonReport& r) {
    json j;
    j["predicted"] = matrix_to_json(r.predicted);
    j["numeric"] = matrix_to_json(r.numeric);
    j["max_deviation"] = r.max_deviation;
    j["interference"] = r.paths.interference;
    j["numeric_dispersion"] = r.numeric_dispersion;
    j["max_unitarity_defect"] = r.max_unitarity_defect;
    return j;
}

void write_eigenflow_csv(std::ostream& out, const EigenFlow& flow) {
    out << "t";
    for (size_t k = 0; k < flow.curves.size(); ++k) out << ",lambda_" << (k + 1);
    out << "\n";
    for (size_t i = 0; i < flow.times.size(); ++i) {
        out << format17(flow.times[i]);
        for (const auto& curve : flow.curves) out << "," << format17(curve[i]);
        out << "\n";
    }
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format17(m(r, c));
        out << "\n";
    }
}

} // namespace mlz::io
