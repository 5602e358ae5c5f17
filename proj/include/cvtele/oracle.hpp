#pragma once

#include "cvtele/teleport.hpp"

// Brute-force simulation of the protocol: explicit joint quadrature
// measurement of (q_in - q_1, p_in + p_1), conditioning, and the classical
// displacement at Bob's side, averaged over a lattice of outcomes. Fully
// independent of the CF factorization path; used to validate it.

namespace cvtele {

// How the measurement outcome (q, p) maps to Bob's displacement amplitude.
// sqrt2 sets alpha = (q + ip)/sqrt(2), the choice consistent with
// q = (a + a^dag)/sqrt(2); literal uses alpha = q + ip verbatim and exists
// as a negative control.
enum class GainConvention { sqrt2, literal };

// Harmonic-oscillator position wavefunctions psi_n(x) on a uniform lattice,
// <q^2>_vac = 1/2 convention.
struct PositionBasisTable {
    double half_width = 0.0;
    double step = 0.0;
    Eigen::VectorXd lattice;
    Eigen::MatrixXd psi;  // dim x lattice.size()

    // Fails if the lattice cannot hold the highest wavefunction (coverage
    // check plus orthonormality defect <= 1e-6).
    static PositionBasisTable build(int dim, double half_width, double step);
    double orthonormality_defect() const;
};

struct OracleWorkspace {
    int dim = 0;
    Numerics num;
    PositionBasisTable eta;
    double completeness = 1.0;  // measured resolution-of-identity constant
};

// Builds the eta table and measures the completeness constant by summing
// |Phi_nm(q,p)|^2 over the outcome lattice for the low Fock block.
OracleWorkspace make_oracle_workspace(int dim, const Numerics& num);

// Phi_nm(q,p) = (2 pi)^{-1/2} sum_eta e^{i p eta} psi_n(q+eta) psi_m(eta) d_eta;
// coefficients of the (delta-normalized) measurement eigenvector.
Matrix phi_coefficients(double q, double p, int dim, const PositionBasisTable& eta_table);

struct ConditionalState {
    FockDensityMatrix rho;  // unnormalized; trace = raw outcome density
    double prob_density;    // trace / completeness constant
};

ConditionalState conditional_bob_state(const FockDensityMatrix& rho_in,
                                       const FockDensityMatrix& rho_ab, double q, double p,
                                       const OracleWorkspace& ws);

struct OracleResult {
    FockDensityMatrix rho_out;
    double prob_total = 0.0;    // captured outcome probability
    double completeness = 1.0;  // measured constant used for densities
};

OracleResult oracle_teleport(const FockDensityMatrix& rho_in, const FockDensityMatrix& rho_ab,
                             const Numerics& num, GainConvention gain = GainConvention::sqrt2);

}  // namespace cvtele
