#pragma once

#include <optional>
#include <string>

#include "cvtele/cf.hpp"

namespace cvtele {

// A state together with whichever representations exist for it. Gaussian
// kinds carry the exact analytic form; pure kinds carry the amplitude
// vector; the Fock density matrix is materialized on demand. CF evaluation
// dispatches to the cheapest exact path available.
struct StateHandle {
    std::string label;
    int modes = 1;
    int dim = 0;
    double population = 1.0;

    std::optional<GaussianState> gaussian;
    std::optional<FockVector> pure;
    std::optional<FockDensityMatrix> fock;

    static StateHandle from_fock(FockDensityMatrix rho, std::string label = "fock");
    static StateHandle from_pure(FockVector psi, std::string label = "pure");
    // Carries both representations; fock built lazily unless eager_fock.
    static StateHandle from_gaussian(GaussianState g, int dim, std::string label = "gaussian",
                                     bool eager_fock = true);

    // Density matrix in the truncated basis (built from pure/gaussian if absent).
    FockDensityMatrix fock_state() const;

    cxd cf(cxd lambda) const;            // one-mode chi(lambda)
    cxd cf2(cxd l1, cxd l2) const;       // two-mode chi(l1, l2)
    // chi_AB(lambda^*, lambda): the resource-side factor of the teleported CF
    // and the normally ordered CF of the distorting state.
    cxd resource_kernel(cxd lambda) const { return cf2(std::conj(lambda), lambda); }

    bool undisplaced(double tol = 1e-10) const;
};

}  // namespace cvtele
