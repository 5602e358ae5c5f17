#pragma once

#include <cstdint>
#include <limits>

#include "cvtele/state_handle.hpp"

// The Braunstein-Kimble protocol in the CF picture: the teleported state has
// chi_out(lambda) = chi_in(lambda) * chi_AB(lambda^*, lambda), and the second
// factor is the normally ordered CF of the one-mode distorting state rho_M.

namespace cvtele {

struct Numerics {
    int dim = 20;          // Fock truncation N_c
    double grid_l = 6.0;   // CF lattice half-width
    double grid_h = 0.1;   // CF lattice step
    double m_l = 6.0;      // measurement outcome lattice half-width
    double m_d = 0.1;      // measurement outcome lattice step
    double eta_l = 8.0;    // position-basis lattice half-width
    double eta_d = 0.05;   // position-basis lattice step

    void validate() const;
};

struct TeleportJob {
    StateHandle input;     // one mode
    StateHandle resource;  // two modes
    Numerics numerics;

    void validate() const;
};

struct TeleportResult {
    CFGrid out_grid;
    FockDensityMatrix rho_out;
    ReconstructionDefects defects;
};

// chi_in * chi_AB(lambda^*, lambda) sampled on the job lattice, then
// reconstructed.
TeleportResult teleport_cf(const TeleportJob& job);

// rho_M from chi_M(lambda) = chi_AB(lambda^*, lambda) e^{-|lambda|^2/2}
// (normal-to-symmetric ordering conversion) via reconstruction.
FockDensityMatrix distorting_state(const StateHandle& resource, const Numerics& num,
                                   ReconstructionDefects* defects = nullptr);

// CM of rho_M from resource correlators:
//   sqq = 1/2 + s(q2q2) + s(q1q1) - 2 s(q1q2)
//   sqp = s(q2p2) - s(q1p1) + s(q2p1) - s(q1p2)
//   spp = 1/2 + s(p2p2) + s(p1p1) + 2 s(p1p2)
// with all correlators symmetrized (Re of operator products). Requires an
// undisplaced resource.
CovMatrix2 cm_from_resource(const StateHandle& resource);

struct MomentRelationDefects {
    double a2_defect;  // | <a^2>_M - (<a2^2> + <a1^dag^2> - 2<a1^dag a2>) |
    double n_defect;   // | <n>_M - (1 + <n1> + <n2> - <a1 a2> - <a1^dag a2^dag>) |
};

// Left sides from the reconstructed rho_M, right sides from resource
// expectation values; the two computation paths are independent.
MomentRelationDefects moment_relations_check(const StateHandle& resource, const Numerics& num);

// Delta_EPR = ( <(q2-q1)^2> + <(p1+p2)^2> ) / 2 for an undisplaced resource.
double epr_uncertainty(const StateHandle& resource);

// Mean occupancy of the distorting state: quadrature path (reconstructed
// rho_M) and analytic path (moment relations applied to resource moments).
double added_noise(const StateHandle& resource, const Numerics& num);
double added_noise_analytic(const StateHandle& resource);

// F_coh = (1/pi) integral e^{-|lambda|^2} chi_AB(lambda^*, lambda) d^2lambda
// by lattice quadrature.
double fidelity_coherent(const StateHandle& resource, const Numerics& num);
double fidelity_coherent(const CFGrid& resource_kernel);

// Q(0) with the convention Q(alpha) = <alpha|rho|alpha> (no 1/pi), which
// makes F_coh = Q_M(0) hold exactly.
double q_function_zero(const FockDensityMatrix& rho_m);

// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const FockDensityMatrix& a, const FockDensityMatrix& b);
// tr(a b); equals the CF overlap integral (1/pi) int chi_a^* chi_b.
double overlap(const FockDensityMatrix& a, const FockDensityMatrix& b);
double overlap_cf(const CFGrid& a, const CFGrid& b);

// Resource-kernel grid chi_AB(lambda^*, lambda); shared by the pipeline ops.
CFGrid sample_resource_kernel(const StateHandle& resource, const Numerics& num);

// <Q^2>, <P^2> and symmetrized <QP> with Q = q2 - q1, P = p1 + p2 built as
// explicit two-mode operators; consistency route for the CM entries.
struct QPMoments {
    double q2;
    double p2;
    double qp;
};
QPMoments qp_moments(const StateHandle& resource);

struct ProtocolReport {
    std::string input_label;
    std::string resource_label;
    Numerics numerics;
    std::string gain = "sqrt2";
    std::uint64_t seed = 0;

    double added_noise = 0.0;           // quadrature path
    double added_noise_analytic = 0.0;  // moment-relation path
    double delta_epr = 0.0;
    double theorem1_defect = 0.0;           // |added_noise - delta_epr|
    double theorem1_defect_analytic = 0.0;  // |added_noise_analytic - delta_epr|

    CovMatrix2 cm_m;
    double det_cm = 0.0;
    double min_eig_cm_minus_half = 0.0;

    double f_coh = 0.0;
    double f_coh_q0 = 0.0;  // <0|rho_M|0> cross-check of Eq. F_coh = Q_M(0)
    double f_in_out = 0.0;
    double overlap_in_out = 0.0;

    ReconstructionDefects out_defects;
    ReconstructionDefects distorting_defects;
    double recon_min_eig = 0.0;  // min eigenvalue of rho_out

    double oracle_fidelity = std::numeric_limits<double>::quiet_NaN();
    double oracle_prob_deficit = std::numeric_limits<double>::quiet_NaN();

    // added_noise >= 0, det_cm >= 1/4 - 1e-9, min_eig_cm_minus_half >= -1e-9
    void validate() const;
};

// Runs the full factorized pipeline and all metrics.
ProtocolReport run_protocol(const TeleportJob& job);

}  // namespace cvtele
