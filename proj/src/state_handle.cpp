#include "cvtele/state_handle.hpp"

#include <array>
#include <cmath>

#include "cvtele/kernels.hpp"

namespace cvtele {

StateHandle StateHandle::from_fock(FockDensityMatrix rho, std::string label) {
    StateHandle h;
    h.label = std::move(label);
    h.modes = rho.modes();
    h.dim = rho.dim();
    h.population = rho.trace();
    h.fock = std::move(rho);
    return h;
}

StateHandle StateHandle::from_pure(FockVector psi, std::string label) {
    StateHandle h;
    h.label = std::move(label);
    h.modes = psi.modes();
    h.dim = psi.dim();
    h.population = psi.population();
    h.pure = std::move(psi);
    return h;
}

StateHandle StateHandle::from_gaussian(GaussianState g, int dim, std::string label,
                                       bool eager_fock) {
    StateHandle h;
    h.label = std::move(label);
    h.modes = g.modes;
    h.dim = dim;
    h.gaussian = std::move(g);
    if (eager_fock) {
        h.fock = gaussian_to_fock(*h.gaussian, dim);
        h.population = h.fock->trace();
    }
    return h;
}

FockDensityMatrix StateHandle::fock_state() const {
    if (fock) return *fock;
    if (pure) return FockDensityMatrix::pure(*pure);
    if (gaussian) return gaussian_to_fock(*gaussian, dim);
    throw Error("states-lib", "handle", "StateHandle has no representation");
}

cxd StateHandle::cf(cxd lambda) const {
    if (modes != 1) throw Error("states-lib", "cf", "cf expects a one-mode handle");
    if (gaussian) return gaussian_cf(*gaussian, std::array{lambda});
    if (pure) {
        const Matrix d = displacement_matrix(lambda, dim).mat;
        const CVector v = d * pure->amps();
        return kern::cdotc({pure->amps().data(), static_cast<std::size_t>(dim)},
                           {v.data(), static_cast<std::size_t>(dim)});
    }
    return cf_eval(*fock, lambda);
}

cxd StateHandle::cf2(cxd l1, cxd l2) const {
    if (modes != 2) throw Error("states-lib", "cf", "cf2 expects a two-mode handle");
    if (gaussian) return gaussian_cf(*gaussian, std::array{l1, l2});
    if (pure) {
        // <psi| D1 (x) D2 |psi> = <Psi, D1 Psi D2^T>_F on the row-major
        // reshape Psi(n1, n2) of the amplitude vector.
        using RowMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        const Eigen::Map<const RowMat> psi(pure->amps().data(), dim, dim);
        const Matrix d1 = displacement_matrix(l1, dim).mat;
        const Matrix d2 = displacement_matrix(l2, dim).mat;
        const RowMat v = d1 * (psi * d2.transpose());
        return kern::cdotc({pure->amps().data(), static_cast<std::size_t>(dim) * dim},
                           {v.data(), static_cast<std::size_t>(dim) * dim});
    }
    return cf_eval2(*fock, l1, l2);
}

bool StateHandle::undisplaced(double tol) const {
    if (gaussian) return gaussian->undisplaced(tol);
    const int d = dim;
    const ModeOperator a = ModeOperator::annihilate(d);
    for (int mode = 1; mode <= modes; ++mode) {
        const std::array ops{TaggedOp{a, mode}};
        const cxd mean = pure ? expect(*pure, ops) : expect(*fock, ops);
        if (std::abs(mean) > tol) return false;
    }
    return true;
}

}  // namespace cvtele
