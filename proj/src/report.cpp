#include "cvtele/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace cvtele {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

ordered_json to_ordered_json(const ProtocolReport& r) {
    ordered_json j;
    j["schema"] = "cvtele-report/1";
    j["input"] = r.input_label;
    j["resource"] = r.resource_label;
    j["gain"] = r.gain;
    j["seed"] = r.seed;
    j["n_c"] = r.numerics.dim;
    j["grid_l"] = r.numerics.grid_l;
    j["grid_h"] = r.numerics.grid_h;
    j["mlattice_l"] = r.numerics.m_l;
    j["mlattice_d"] = r.numerics.m_d;
    j["eta_l"] = r.numerics.eta_l;
    j["eta_d"] = r.numerics.eta_d;
    j["added_noise"] = r.added_noise;
    j["added_noise_analytic"] = r.added_noise_analytic;
    j["delta_epr"] = r.delta_epr;
    j["theorem1_defect"] = r.theorem1_defect;
    j["theorem1_defect_analytic"] = r.theorem1_defect_analytic;
    j["cm_qq"] = r.cm_m.sqq;
    j["cm_qp"] = r.cm_m.sqp;
    j["cm_pp"] = r.cm_m.spp;
    j["det_cm"] = r.det_cm;
    j["min_eig_cm_minus_half"] = r.min_eig_cm_minus_half;
    j["f_coh"] = r.f_coh;
    j["f_coh_q0"] = r.f_coh_q0;
    j["f_in_out"] = r.f_in_out;
    j["overlap_in_out"] = r.overlap_in_out;
    j["recon_herm_defect"] = r.out_defects.herm_defect;
    j["recon_trace_defect"] = r.out_defects.trace_defect;
    j["recon_min_eig"] = r.recon_min_eig;
    j["distorting_herm_defect"] = r.distorting_defects.herm_defect;
    j["distorting_trace_defect"] = r.distorting_defects.trace_defect;
    j["oracle_fidelity"] = number_or_null(r.oracle_fidelity);
    j["oracle_prob_deficit"] = number_or_null(r.oracle_prob_deficit);
    return j;
}

std::string csv_cell(const ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

std::string report_to_json(const ProtocolReport& rep) { return to_ordered_json(rep).dump(2) + "\n"; }

std::string report_csv_header() {
    const ordered_json j = to_ordered_json(ProtocolReport{});
    std::ostringstream os;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        os << it.key();
        first = false;
    }
    os << '\n';
    return os.str();
}

std::string report_to_csv(const ProtocolReport& rep) {
    const ordered_json j = to_ordered_json(rep);
    std::ostringstream os;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        os << csv_cell(it.value());
        first = false;
    }
    os << '\n';
    return os.str();
}

std::string error_to_json(const Error& err) {
    ordered_json j;
    j["error"]["module"] = err.module();
    j["error"]["check"] = err.check();
    j["error"]["message"] = err.what();
    j["error"]["defect"] = err.defect();
    j["error"]["tolerance"] = err.tolerance();
    return j.dump(2) + "\n";
}

}  // namespace cvtele
