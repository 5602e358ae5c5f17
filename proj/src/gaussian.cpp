#include "cvtele/gaussian.hpp"

#include <cmath>

#include "cvtele/cf.hpp"

namespace cvtele {

double CovMatrix2::min_eig() const {
    const double mid = 0.5 * (sqq + spp);
    const double rad = std::sqrt(0.25 * (sqq - spp) * (sqq - spp) + sqp * sqp);
    return mid - rad;
}

double CovMatrix2::max_eig() const {
    const double mid = 0.5 * (sqq + spp);
    const double rad = std::sqrt(0.25 * (sqq - spp) * (sqq - spp) + sqp * sqp);
    return mid + rad;
}

void GaussianState::validate() const {
    if (modes != 1 && modes != 2)
        throw Error("gaussian-core", "modes", "GaussianState: modes must be 1 or 2");
    const int n = 2 * modes;
    if (mean.size() != n || cm.rows() != n || cm.cols() != n)
        throw Error("gaussian-core", "shape", "GaussianState: mean/cm size mismatch");
    const double sym = (cm - cm.transpose()).cwiseAbs().maxCoeff();
    if (sym > 1e-12)
        throw Error("gaussian-core", "symmetry", "GaussianState: cm not symmetric", sym, 1e-12);
    Matrix test = cm.cast<cxd>();
    for (int m = 0; m < modes; ++m) {
        test(2 * m, 2 * m + 1) += cxd(0.0, 0.5);
        test(2 * m + 1, 2 * m) += cxd(0.0, -0.5);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(test, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -1e-10)
        throw Error("gaussian-core", "physicality", "GaussianState: cm violates cm + i/2 Omega >= 0",
                    lo, 1e-10);
}

GaussianState vacuum_gaussian(int modes) {
    GaussianState s;
    s.modes = modes;
    s.mean = Eigen::VectorXd::Zero(2 * modes);
    s.cm = 0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
    return s;
}

GaussianState coherent_gaussian(cxd alpha) {
    GaussianState s = vacuum_gaussian(1);
    s.mean(0) = std::sqrt(2.0) * alpha.real();
    s.mean(1) = std::sqrt(2.0) * alpha.imag();
    return s;
}

GaussianState thermal_gaussian(double nbar) {
    if (nbar < 0.0) throw Error("gaussian-core", "nbar", "thermal: nbar must be >= 0");
    GaussianState s = vacuum_gaussian(1);
    s.cm = (nbar + 0.5) * Eigen::MatrixXd::Identity(2, 2);
    return s;
}

GaussianState svs(double r) {
    if (!std::isfinite(r)) throw Error("gaussian-core", "svs", "svs: r must be finite");
    GaussianState s = vacuum_gaussian(2);
    const double c = 0.5 * std::cosh(2.0 * r);
    const double t = 0.5 * std::sinh(2.0 * r);
    s.cm(0, 0) = s.cm(1, 1) = s.cm(2, 2) = s.cm(3, 3) = c;
    s.cm(0, 2) = s.cm(2, 0) = t;
    s.cm(1, 3) = s.cm(3, 1) = -t;
    return s;
}

cxd gaussian_cf(const GaussianState& s, std::span<const cxd> lambda) {
    if (static_cast<int>(lambda.size()) != s.modes)
        throw Error("gaussian-core", "cf", "gaussian_cf: one lambda per mode required");
    Eigen::VectorXd w(2 * s.modes);
    for (int m = 0; m < s.modes; ++m) {
        w(2 * m) = std::sqrt(2.0) * lambda[m].imag();
        w(2 * m + 1) = -std::sqrt(2.0) * lambda[m].real();
    }
    const double quad = -0.5 * w.dot(s.cm * w);
    const double phase = w.dot(s.mean);
    return std::exp(quad) * cxd(std::cos(phase), std::sin(phase));
}

namespace {

FockDensityMatrix coherent_fock(cxd alpha, int dim) {
    CVector amps(dim);
    cxd c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        amps(n) = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    FockVector psi(1, dim, std::move(amps));
    if (psi.population() < 1.0 - 1e-6)
        throw Error("gaussian-core", "truncation-population",
                    "coherent state does not fit the truncation", psi.population(), 1e-6);
    return FockDensityMatrix::pure(psi);
}

Matrix thermal_diag(double nbar, int dim) {
    Matrix m = Matrix::Zero(dim, dim);
    const double x = nbar / (nbar + 1.0);
    double p = 1.0 / (nbar + 1.0);
    for (int n = 0; n < dim; ++n) {
        m(n, n) = p;
        p *= x;
    }
    return m;
}

FockDensityMatrix svs_fock(double r, int dim) {
    CVector amps = CVector::Zero(dim * dim);
    const double t = std::tanh(r);
    double c = 1.0 / std::cosh(r);
    for (int n = 0; n < dim; ++n) {
        amps(n * dim + n) = c;
        c *= t;
    }
    FockVector psi(2, dim, std::move(amps));
    if (psi.population() < 1.0 - 1e-6)
        throw Error("gaussian-core", "truncation-population",
                    "SVS does not fit the truncation", psi.population(), 1e-6);
    return FockDensityMatrix::pure(psi);
}

}  // namespace

FockDensityMatrix gaussian_to_fock(const GaussianState& s, int dim) {
    s.validate();
    if (s.modes == 1) {
        const bool isotropic = std::abs(s.cm(0, 0) - s.cm(1, 1)) <= 1e-10 &&
                               std::abs(s.cm(0, 1)) <= 1e-10;
        if (!isotropic)
            throw Error("gaussian-core", "preparation",
                        "gaussian_to_fock: no closed-form preparation for this one-mode cm");
        const double nbar = std::max(0.0, 0.5 * (s.cm(0, 0) + s.cm(1, 1)) - 0.5);
        const cxd alpha((s.mean(0)) / std::sqrt(2.0), (s.mean(1)) / std::sqrt(2.0));
        if (nbar <= 1e-12) return coherent_fock(alpha, dim);
        if (std::abs(alpha) <= 1e-14) {
            Matrix m = thermal_diag(nbar, dim);
            const double pop = m.trace().real();
            if (pop < 1.0 - 1e-6)
                throw Error("gaussian-core", "truncation-population",
                            "thermal state does not fit the truncation", pop, 1e-6);
            return FockDensityMatrix(1, dim, m / pop);
        }
        // displaced thermal: prepare at a padded truncation, displace, crop
        const int work = dim + 16 + static_cast<int>(std::ceil(4.0 * std::abs(alpha)));
        Matrix d = displacement_matrix(alpha, work).mat;
        Matrix full = d * thermal_diag(nbar, work) * d.adjoint();
        Matrix crop = full.topLeftCorner(dim, dim);
        crop = 0.5 * (crop + crop.adjoint().eval());
        const double pop = crop.trace().real();
        if (pop < 1.0 - 1e-6)
            throw Error("gaussian-core", "truncation-population",
                        "displaced thermal state does not fit the truncation", pop, 1e-6);
        return FockDensityMatrix(1, dim, crop / pop);
    }
    if (!s.undisplaced())
        throw Error("gaussian-core", "preparation",
                    "gaussian_to_fock: displaced two-mode Gaussians are not supported");
    const Eigen::Matrix2d a = s.cm.block<2, 2>(0, 0);
    const Eigen::Matrix2d b = s.cm.block<2, 2>(2, 2);
    const Eigen::Matrix2d c = s.cm.block<2, 2>(0, 2);
    const double cc = a(0, 0);
    const double ss = c(0, 0);
    const bool svs_pattern = std::abs(a(0, 1)) <= 1e-10 && std::abs(a(1, 1) - cc) <= 1e-10 &&
                             (a - b).cwiseAbs().maxCoeff() <= 1e-10 &&
                             std::abs(c(0, 1)) <= 1e-10 && std::abs(c(1, 0)) <= 1e-10 &&
                             std::abs(c(1, 1) + ss) <= 1e-10 && ss >= -1e-12;
    if (!svs_pattern)
        throw Error("gaussian-core", "preparation",
                    "gaussian_to_fock: no closed-form preparation for this two-mode cm");
    const double r = 0.5 * std::asinh(2.0 * std::max(0.0, ss));
    if (std::abs(2.0 * cc - std::cosh(2.0 * r)) > 1e-8)
        throw Error("gaussian-core", "preparation",
                    "gaussian_to_fock: two-mode cm is not a pure SVS",
                    std::abs(2.0 * cc - std::cosh(2.0 * r)), 1e-8);
    return svs_fock(r, dim);
}

}  // namespace cvtele
