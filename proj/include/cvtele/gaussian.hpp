#pragma once

#include <Eigen/Dense>
#include <span>

#include "cvtele/fock.hpp"

// Exact analytic representation of Gaussian states. Covariance convention:
// vacuum = (1/2) I, quadrature ordering (q1, p1, q2, p2).

namespace cvtele {

// 2x2 symmetric covariance matrix of a one-mode state.
struct CovMatrix2 {
    double sqq = 0.0;
    double sqp = 0.0;
    double spp = 0.0;

    double det() const { return sqq * spp - sqp * sqp; }
    double min_eig() const;
    double max_eig() const;
};

struct GaussianState {
    int modes = 1;
    Eigen::VectorXd mean;  // (<q1>, <p1>, ...)
    Eigen::MatrixXd cm;

    // symmetry within 1e-12; cm + (i/2) Omega >= -1e-10
    void validate() const;
    bool undisplaced(double tol = 1e-10) const { return mean.cwiseAbs().maxCoeff() <= tol; }
};

GaussianState vacuum_gaussian(int modes);
GaussianState coherent_gaussian(cxd alpha);
GaussianState thermal_gaussian(double nbar);
// Two-mode squeezed vacuum; diagonal blocks cosh(2r)/2 I, off-diagonal
// sinh(2r)/2 diag(1, -1).
GaussianState svs(double r);

// chi(lambda_1, ..., lambda_modes) = exp(-w^T cm w / 2 + i w^T mean) with
// w_j = (sqrt(2) Im lambda_j, -sqrt(2) Re lambda_j); matches tr[rho D(l1)...].
cxd gaussian_cf(const GaussianState& s, std::span<const cxd> lambda);

// Builds the Fock representation from the state's preparation circuit
// (coherent/thermal/displaced-thermal for one mode, SVS pattern for two).
// Fails if the truncation captures less than 1 - 1e-6 of the population.
FockDensityMatrix gaussian_to_fock(const GaussianState& s, int dim);

}  // namespace cvtele
