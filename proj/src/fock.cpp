#include "cvtele/fock.hpp"

#include <cmath>

#include "cvtele/kernels.hpp"

namespace cvtele {

namespace {

std::span<const cxd> flat(const Matrix& m) {
    return {m.data(), static_cast<std::size_t>(m.size())};
}

int expected_size(int modes, int dim) {
    return modes == 1 ? dim : dim * dim;
}

}  // namespace

FockVector::FockVector(int modes, int dim, CVector amps)
    : modes_(modes), dim_(dim), amps_(std::move(amps)) {
    if (modes_ != 1 && modes_ != 2)
        throw Error("fock-core", "modes", "FockVector: modes must be 1 or 2");
    if (dim_ < 2) throw Error("fock-core", "dim", "FockVector: dim must be >= 2");
    if (amps_.size() != expected_size(modes_, dim_))
        throw Error("fock-core", "shape", "FockVector: amplitude length does not match modes/dim");
    population_ = amps_.squaredNorm();
    if (!(population_ > 0.0) || population_ > 1.0 + 1e-9)
        throw Error("fock-core", "norm", "FockVector: squared norm must lie in (0, 1]",
                    population_, 1e-9);
    amps_ /= std::sqrt(population_);
}

FockDensityMatrix::FockDensityMatrix(int modes, int dim, Matrix mat)
    : modes_(modes), dim_(dim), mat_(std::move(mat)) {
    if (modes_ != 1 && modes_ != 2)
        throw Error("fock-core", "modes", "FockDensityMatrix: modes must be 1 or 2");
    if (dim_ < 2) throw Error("fock-core", "dim", "FockDensityMatrix: dim must be >= 2");
    const int n = expected_size(modes_, dim_);
    if (mat_.rows() != n || mat_.cols() != n)
        throw Error("fock-core", "shape", "FockDensityMatrix: matrix size does not match modes/dim");
    const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12)
        throw Error("fock-core", "hermiticity", "FockDensityMatrix: matrix is not Hermitian",
                    herm, 1e-12);
    const cxd tr = mat_.trace();
    if (std::abs(tr.imag()) > 1e-10 || tr.real() <= -1e-10 || tr.real() > 1.0 + 1e-9)
        throw Error("fock-core", "trace", "FockDensityMatrix: trace must be real in (0, 1]",
                    tr.real(), 1e-9);
    trace_ = tr.real();
}

FockDensityMatrix FockDensityMatrix::pure(const FockVector& psi) {
    Matrix m = psi.amps() * psi.amps().adjoint();
    return FockDensityMatrix(psi.modes(), psi.dim(), std::move(m));
}

FockDensityMatrix FockDensityMatrix::normalized() const {
    if (trace_ <= 0.0)
        throw Error("fock-core", "trace", "cannot normalize a state with non-positive trace", trace_);
    return FockDensityMatrix(modes_, dim_, mat_ / trace_);
}

double FockDensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return mat_.squaredNorm();
}

double FockDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

ModeOperator ModeOperator::annihilate(int dim) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {dim, std::move(m), Label::annihilate};
}

ModeOperator ModeOperator::create(int dim) {
    Matrix m = annihilate(dim).mat.adjoint();
    return {dim, std::move(m), Label::create};
}

ModeOperator ModeOperator::quadrature_q(int dim) {
    Matrix a = annihilate(dim).mat;
    Matrix m = (a + a.adjoint()) / std::sqrt(2.0);
    return {dim, std::move(m), Label::q};
}

ModeOperator ModeOperator::quadrature_p(int dim) {
    Matrix a = annihilate(dim).mat;
    Matrix m = (a - a.adjoint()) / (cxd(0.0, 1.0) * std::sqrt(2.0));
    return {dim, std::move(m), Label::p};
}

ModeOperator ModeOperator::identity(int dim) {
    return {dim, Matrix::Identity(dim, dim), Label::custom};
}

ModeOperator ModeOperator::custom(Matrix m) {
    const int dim = static_cast<int>(m.rows());
    return {dim, std::move(m), Label::custom};
}

FockDensityMatrix tensor(const FockDensityMatrix& a, const FockDensityMatrix& b) {
    if (a.modes() != 1 || b.modes() != 1)
        throw Error("fock-core", "tensor", "tensor expects two one-mode states");
    if (a.dim() != b.dim())
        throw Error("fock-core", "tensor", "tensor: per-mode dimensions differ");
    const int n = a.dim();
    Matrix out(n * n, n * n);
    for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2)
            for (int n1 = 0; n1 < n; ++n1)
                for (int n2 = 0; n2 < n; ++n2)
                    out(n1 * n + n2, m1 * n + m2) = a.mat()(n1, m1) * b.mat()(n2, m2);
    return FockDensityMatrix(2, n, std::move(out));
}

FockDensityMatrix partial_trace(const FockDensityMatrix& rho, int keep) {
    if (rho.modes() != 2)
        throw Error("fock-core", "partial_trace", "partial_trace expects a two-mode state");
    if (keep != 1 && keep != 2)
        throw Error("fock-core", "partial_trace", "keep must be 1 or 2");
    const int n = rho.dim();
    Matrix out = Matrix::Zero(n, n);
    if (keep == 1) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) out(i, j) += rho.mat()(i * n + k, j * n + k);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) out(i, j) += rho.mat()(k * n + i, k * n + j);
    }
    return FockDensityMatrix(1, n, std::move(out));
}

namespace {

// Collapses an ordered op list into per-mode products (modes commute).
void split_modes(std::span<const TaggedOp> ops, int modes, int dim, Matrix& m1, Matrix& m2,
                 bool& used1, bool& used2) {
    m1 = Matrix::Identity(dim, dim);
    m2 = Matrix::Identity(dim, dim);
    used1 = used2 = false;
    for (const TaggedOp& t : ops) {
        if (t.mode < 1 || t.mode > modes)
            throw Error("fock-core", "expect", "operator mode tag out of range");
        if (t.op.dim != dim)
            throw Error("fock-core", "expect", "operator dimension does not match state");
        if (t.mode == 1) {
            m1 = m1 * t.op.mat;
            used1 = true;
        } else {
            m2 = m2 * t.op.mat;
            used2 = true;
        }
    }
}

}  // namespace

cxd expect(const FockDensityMatrix& rho, std::span<const TaggedOp> ops) {
    const int dim = rho.dim();
    Matrix m1, m2;
    bool used1, used2;
    split_modes(ops, rho.modes(), dim, m1, m2, used1, used2);
    if (rho.modes() == 1) {
        // tr(rho * A) = sum conj(rho_ij) A_ij for Hermitian rho
        return kern::cdotc(flat(rho.mat()), flat(m1));
    }
    // tr[rho (A (x) B)] = sum_{n1 m1} A(m1,n1) * tr(block(n1,m1) * B)
    const Matrix bt = m2.transpose();
    Matrix s(dim, dim);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int mm = 0; mm < dim; ++mm)
            s(n1, mm) = rho.mat().block(n1 * dim, mm * dim, dim, dim).cwiseProduct(bt).sum();
    return s.cwiseProduct(m1.transpose()).sum();
}

cxd expect(const FockVector& psi, std::span<const TaggedOp> ops) {
    const int dim = psi.dim();
    if (psi.modes() == 1) {
        CVector v = psi.amps();
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            if (it->mode != 1) throw Error("fock-core", "expect", "operator mode tag out of range");
            if (it->op.dim != dim)
                throw Error("fock-core", "expect", "operator dimension does not match state");
            v = it->op.mat * v;
        }
        return kern::cdotc({psi.amps().data(), static_cast<std::size_t>(dim)},
                           {v.data(), static_cast<std::size_t>(dim)});
    }
    // Two modes: view the amplitude vector as the row-major matrix Psi(n1, n2);
    // mode-1 operators act on rows, mode-2 on columns.
    using RowMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    RowMat v = Eigen::Map<const RowMat>(psi.amps().data(), dim, dim);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->mode < 1 || it->mode > 2)
            throw Error("fock-core", "expect", "operator mode tag out of range");
        if (it->op.dim != dim)
            throw Error("fock-core", "expect", "operator dimension does not match state");
        if (it->mode == 1)
            v = it->op.mat * v;
        else
            v = v * it->op.mat.transpose();
    }
    return kern::cdotc({psi.amps().data(), static_cast<std::size_t>(dim * dim)},
                       {v.data(), static_cast<std::size_t>(dim * dim)});
}

}  // namespace cvtele
