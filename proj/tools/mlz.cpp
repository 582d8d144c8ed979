// Command-line front end for the multistate Landau-Zener workbench:
// model construction and I/O, commuting-partner verification and discovery,
// spectra and crossing analysis, numeric propagation, and the chronological
// pairwise-product prediction.
//
// Exit codes: 0 success / check passed, 1 check failed, 2 invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mlz/catalog.hpp"
#include "mlz/integrability.hpp"
#include "mlz/model_io.hpp"
#include "mlz/propagator.hpp"
#include "mlz/sectors.hpp"
#include "mlz/semiclassical.hpp"
#include "mlz/spectrum.hpp"

namespace {

using mlz::io::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write to " + out_path);
    out << text << "\n";
}

void emit_json(const json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

struct Window {
    double lo = -6.0;
    double hi = 6.0;
};

Window parse_window(const std::string& spec) {
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos || colon == 0)
        throw std::invalid_argument("window must be given as lo:hi");
    Window w;
    w.lo = std::stod(spec.substr(0, colon));
    w.hi = std::stod(spec.substr(colon + 1));
    if (!(w.lo < w.hi)) throw std::invalid_argument("window requires lo < hi");
    return w;
}

std::vector<double> parse_range(const std::string& spec) {
    // a:b:steps -> inclusive uniform grid
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("range must be given as a:b:steps");
    const double a = std::stod(parts[0]);
    const double b = std::stod(parts[1]);
    const int steps = std::stoi(parts[2]);
    if (steps < 2 || !(a < b)) throw std::invalid_argument("range requires a < b and steps >= 2");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) grid[i] = a + (b - a) * i / (steps - 1);
    return grid;
}

// ---------------------------------------------------------------------------
// catalog construction shared by `catalog` and `scan`
// ---------------------------------------------------------------------------

struct CatalogParams {
    double e1 = 1.0, e2 = 1.0, b = 1.0, tau = 1.0;
    double g = 0.105, g1 = 0.15, g2 = 0.25;
    std::optional<double> g3; // h5: free third coupling; default = constraint value
    double beta = 1.0, x = 0.0;
    int excitations = 1, n_particles = 1;
    std::vector<double> e_list{1.0};
    std::vector<double> g_list{0.1};
    std::vector<double> beta_list{1.0};
    std::vector<double> eps_list{1.0};
};

json build_catalog_json(const std::string& name, const CatalogParams& p) {
    if (name == "lz2") return mlz::io::model_to_json(mlz::build_lz2(p.g, p.beta, p.tau));
    if (name == "h5") {
        if (p.g3) {
            return mlz::io::model_to_json(
                mlz::build_h5_ansatz(p.e1, p.e2, p.b, p.g1, p.g2, *p.g3, p.tau));
        }
        const mlz::CatalogPair pair = mlz::build_h5(p.e1, p.e2, p.b, p.g1, p.g2, p.tau);
        return mlz::io::model_to_json(pair.model, &pair.partner);
    }
    if (name == "h6") return mlz::io::model_to_json(mlz::build_h6(p.e1, p.e2, p.b, p.g, p.tau));
    if (name == "demkov-osherov")
        return mlz::io::model_to_json(mlz::build_demkov_osherov(p.e_list, p.g_list, p.tau));
    if (name == "bowtie") {
        const mlz::CatalogPair pair = mlz::build_bowtie(p.beta_list, p.g_list, p.tau);
        return mlz::io::model_to_json(pair.model, &pair.partner);
    }
    if (name == "tavis-cummings") {
        const mlz::TavisCummingsSector sec =
            mlz::build_tavis_cummings(p.eps_list, p.g, p.excitations, p.tau);
        return mlz::io::model_to_json(sec.model, &sec.partner);
    }
    if (name == "fermion") {
        const mlz::FermionSector sec =
            mlz::build_fermion(p.e_list, p.g_list, p.x, p.n_particles, p.tau);
        return mlz::io::model_to_json(sec.model, &sec.partner);
    }
    throw std::invalid_argument("unknown catalog model: " + name);
}

// scan support: rebuild the named model with one parameter replaced
std::function<mlz::DiabaticModel(double)> scan_builder(const std::string& name,
                                                       const std::string& param,
                                                       CatalogParams base) {
    return [name, param, base](double value) {
        CatalogParams p = base;
        if (param == "e1") p.e1 = value;
        else if (param == "e2") p.e2 = value;
        else if (param == "b") p.b = value;
        else if (param == "tau") p.tau = value;
        else if (param == "g") p.g = value;
        else if (param == "g1") p.g1 = value;
        else if (param == "g2") p.g2 = value;
        else if (param == "g3") p.g3 = value;
        else if (param == "beta") p.beta = value;
        else if (param == "x") p.x = value;
        else throw std::invalid_argument("unknown scan parameter: " + param);

        if (name == "h5") {
            const double g3 = p.g3 ? *p.g3 : std::sqrt(2.0 * (p.g2 * p.g2 - p.g1 * p.g1));
            return mlz::build_h5_ansatz(p.e1, p.e2, p.b, p.g1, p.g2, g3, p.tau);
        }
        if (name == "h6") return mlz::build_h6(p.e1, p.e2, p.b, p.g, p.tau);
        if (name == "lz2") return mlz::build_lz2(p.g, p.beta, p.tau);
        throw std::invalid_argument("scan supports the h5, h6 and lz2 builders");
    };
}

void add_catalog_options(CLI::App* cmd, CatalogParams& p) {
    cmd->add_option("--e1", p.e1, "band intercept parameter e1");
    cmd->add_option("--e2", p.e2, "band intercept parameter e2");
    cmd->add_option("--b", p.b, "band slope b");
    cmd->add_option("--tau", p.tau, "tau parameter");
    cmd->add_option("--g", p.g, "uniform coupling");
    cmd->add_option("--g1", p.g1, "first coupling (h5)");
    cmd->add_option("--g2", p.g2, "second coupling (h5)");
    double g3_value = 0.0;
    cmd->add_option("--g3", g3_value, "third coupling (h5 ansatz; default: constraint value)")
        ->each([&p](const std::string& s) { p.g3 = std::stod(s); });
    cmd->add_option("--beta", p.beta, "slope of the driven level (lz2)");
    cmd->add_option("--x", p.x, "fermion interaction strength x");
    cmd->add_option("--M", p.excitations, "excitation number (tavis-cummings)");
    cmd->add_option("--nf", p.n_particles, "particle number (fermion)");
    cmd->add_option("--e", p.e_list, "level parameters e_k (comma separated)")->delimiter(',');
    cmd->add_option("--gs", p.g_list, "couplings g_k (comma separated)")->delimiter(',');
    cmd->add_option("--betas", p.beta_list, "slopes beta_n (comma separated)")->delimiter(',');
    cmd->add_option("--eps", p.eps_list, "spin splittings eps_j (comma separated)")->delimiter(',');
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multistate Landau-Zener workbench"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "write the report to a file instead of stdout")
        ->configurable(false);

    // catalog
    auto* cat = app.add_subcommand("catalog", "emit a catalog model as JSON");
    std::string cat_name;
    cat->add_option("name", cat_name,
                    "one of: lz2, h5, h6, demkov-osherov, bowtie, tavis-cummings, fermion")
        ->required();
    CatalogParams cat_params;
    add_catalog_options(cat, cat_params);

    // verify
    auto* ver = app.add_subcommand("verify", "verify the commutation conditions of a model+partner file");
    std::string ver_file;
    double ver_tol = 1e-8;
    ver->add_option("model", ver_file, "model JSON file (must contain a partner)")->required();
    ver->add_option("--tol", ver_tol, "pass tolerance on the condition residuals");

    // solve
    auto* sol = app.add_subcommand("solve", "solve the commutation conditions for a partner");
    std::string sol_file;
    double sol_tol = 1e-8, sol_rank_tol = 1e-10;
    sol->add_option("model", sol_file, "model JSON file")->required();
    sol->add_option("--tol", sol_tol, "feasibility tolerance (relative to the data scale)");
    sol->add_option("--rank-tol", sol_rank_tol, "singular-value threshold for rank decisions");

    // scan
    auto* scn = app.add_subcommand("scan", "scan one builder parameter for integrability");
    std::string scn_name, scn_param, scn_range;
    double scn_tol = 1e-8;
    scn->add_option("name", scn_name, "builder to scan: h5, h6, lz2")->required();
    scn->add_option("--param", scn_param, "parameter to vary")->required();
    scn->add_option("--range", scn_range, "grid a:b:steps")->required();
    scn->add_option("--tol", scn_tol, "feasibility tolerance");
    CatalogParams scn_params;
    add_catalog_options(scn, scn_params);

    // spectrum
    auto* spc = app.add_subcommand("spectrum", "eigenvalue flow as CSV");
    std::string spc_file, spc_window = "-6:6";
    int spc_samples = 1201;
    spc->add_option("model", spc_file, "model JSON file")->required();
    spc->add_option("--window", spc_window, "time window lo:hi");
    spc->add_option("--samples", spc_samples, "number of grid points")->check(CLI::PositiveNumber);

    // crossings
    auto* crs = app.add_subcommand("crossings", "diabatic and exact crossings as JSON");
    std::string crs_file, crs_window = "-6:6";
    int crs_samples = 2001;
    double crs_threshold = 1e-8;
    crs->add_option("model", crs_file, "model JSON file")->required();
    crs->add_option("--window", crs_window, "time window lo:hi");
    crs->add_option("--samples", crs_samples, "grid points for the gap scan")->check(CLI::PositiveNumber);
    crs->add_option("--threshold", crs_threshold, "relative exactness threshold on the refined gap");

    // propagate
    auto* prp = app.add_subcommand("propagate", "numeric transition probabilities as JSON");
    std::string prp_file, prp_csv;
    std::vector<double> prp_horizons;
    double prp_rk_tol = 1e-10;
    prp->add_option("model", prp_file, "model JSON file")->required();
    prp->add_option("--T-list", prp_horizons, "horizons (comma separated; >= 3 increasing)")
        ->delimiter(',');
    prp->add_option("--rk-tol", prp_rk_tol, "local error per step")->check(CLI::PositiveNumber);
    prp->add_option("--csv", prp_csv, "also write the probability matrix to this CSV file");

    // predict
    auto* prd = app.add_subcommand("predict", "chronological pairwise-product prediction as JSON");
    std::string prd_file;
    prd->add_option("model", prd_file, "model JSON file")->required();

    // compare
    auto* cmp = app.add_subcommand("compare", "max |P_predicted - P_numeric|; exit 0 iff below --tol");
    std::string cmp_file;
    std::vector<double> cmp_horizons;
    double cmp_rk_tol = 1e-10, cmp_tol = 5e-3;
    cmp->add_option("model", cmp_file, "model JSON file")->required();
    cmp->add_option("--T-list", cmp_horizons, "horizons (comma separated; >= 3 increasing)")
        ->delimiter(',');
    cmp->add_option("--rk-tol", cmp_rk_tol, "local error per step")->check(CLI::PositiveNumber);
    cmp->add_option("--tol", cmp_tol, "acceptance threshold on the max deviation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (cat->parsed()) {
            emit_json(build_catalog_json(cat_name, cat_params), out_path);
            return kExitPass;
        }

        if (ver->parsed()) {
            const mlz::io::LoadedModel loaded = mlz::io::load_model_file(ver_file);
            if (!loaded.partner)
                throw std::invalid_argument("verify requires a \"partner\" block in the model file");
            const mlz::ResidualReport report =
                mlz::verify_pair(loaded.model, *loaded.partner, ver_tol);
            emit_json(mlz::io::residual_report_to_json(report), out_path);
            return report.pass ? kExitPass : kExitFail;
        }

        if (sol->parsed()) {
            const mlz::io::LoadedModel loaded = mlz::io::load_model_file(sol_file);
            const mlz::PartnerSolveReport report =
                mlz::solve_partner(loaded.model, sol_tol, sol_rank_tol);
            emit_json(mlz::io::solve_report_to_json(report), out_path);
            return report.feasible ? kExitPass : kExitFail;
        }

        if (scn->parsed()) {
            const mlz::ScanReport report = mlz::scan_parameter(
                scan_builder(scn_name, scn_param, scn_params), scn_param, parse_range(scn_range),
                scn_tol);
            emit_json(mlz::io::scan_report_to_json(report), out_path);
            return kExitPass;
        }

        if (spc->parsed()) {
            const mlz::io::LoadedModel loaded = mlz::io::load_model_file(spc_file);
            const Window w = parse_window(spc_window);
            const mlz::EigenFlow flow = mlz::eigenflow(loaded.model, w.lo, w.hi, spc_samples);
            std::ostringstream csv;
            mlz::io::write_eigenflow_csv(csv, flow);
            std::string text = csv.str();
            if (!text.empty() && text.back() == '\n') text.pop_back();
            emit(text, out_path);
            return kExitPass;
        }

        if (crs->parsed()) {
            const mlz::io::LoadedModel loaded = mlz::io::load_model_file(crs_file);
            const Window w = parse_window(crs_window);
            json j;
            j["diabatic"] = mlz::io::crossing_events_to_json(mlz::diabatic_crossings(loaded.model));
            j["exact"] = mlz::io::exact_crossings_to_json(
                mlz::find_exact_crossings(loaded.model, w.lo, w.hi, crs_samples, crs_threshold));
            j["count_check"] = mlz::io::count_report_to_json(
                mlz::crossing_count_check(loaded.model, w.lo, w.hi, crs_samples, crs_threshold));
            emit_json(j, out_path);
            return kExitPass;
        }

        if (prp->parsed()) {
            const mlz::io::LoadedModel loaded = mlz::io::load_model_file(prp_file);
            const mlz::PropagationResult result =
                mlz::transition_matrix(loaded.model, prp_horizons, prp_rk_tol);
            emit_json(mlz::io::propagation_result_to_json(result), out_path);
            if (!prp_csv.empty()) {
                std::ofstream csv(prp_csv);
                if (!csv) throw std::invalid_argument("cannot write to " + prp_csv);
                mlz::io::write_matrix_csv(csv, result.probability.p);
            }
            return kExitPass;
        }

        if (prd->parsed()) {
            const mlz::io::LoadedModel loaded = mlz::io::load_model_file(prd_file);
            emit_json(mlz::io::prediction_to_json(mlz::predict_probabilities(loaded.model)),
                      out_path);
            return kExitPass;
        }

        if (cmp->parsed()) {
            const mlz::io::LoadedModel loaded = mlz::io::load_model_file(cmp_file);
            const mlz::ComparisonReport report =
                mlz::compare_with_numerics(loaded.model, cmp_horizons, cmp_rk_tol);
            json j = mlz::io::comparison_to_json(report);
            j["tol"] = cmp_tol;
            j["pass"] = report.max_deviation < cmp_tol;
            emit_json(j, out_path);
            return report.max_deviation < cmp_tol ? kExitPass : kExitFail;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitInvalid;
}
