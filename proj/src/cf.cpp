#include "cvtele/cf.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "cvtele/kernels.hpp"
#include "cvtele/parallel.hpp"

namespace cvtele {

namespace {

std::span<const cxd> flat(const Matrix& m) {
    return {m.data(), static_cast<std::size_t>(m.size())};
}

}  // namespace

ModeOperator displacement_matrix(cxd alpha, int dim) {
    if (dim < 2) throw Error("cf-engine", "displacement", "displacement_matrix: dim must be >= 2");
    const double x = std::norm(alpha);
    const double e = std::exp(-0.5 * x);
    Matrix out(dim, dim);
    // Offset diagonal d: lower entries (n+d, n) use alpha, upper entries
    // (n, n+d) use -conj(alpha); both share L_n^{(d)}(x).
    for (int d = 0; d < dim; ++d) {
        cxd lo = e, up = e;
        for (int k = 1; k <= d; ++k) {
            lo *= alpha / std::sqrt(static_cast<double>(k));
            up *= -std::conj(alpha) / std::sqrt(static_cast<double>(k));
        }
        double lag_prev = 0.0, lag = 1.0;  // L_0^{(d)}
        for (int n = 0; n + d < dim; ++n) {
            if (n > 0) {
                const double f = std::sqrt(static_cast<double>(n) / (n + d));
                lo *= f;
                up *= f;
            }
            out(n + d, n) = lo * lag;
            if (d > 0) out(n, n + d) = up * lag;
            const double next = ((2.0 * n + 1.0 + d - x) * lag - (n + d) * lag_prev) / (n + 1.0);
            lag_prev = lag;
            lag = next;
        }
    }
    return {dim, std::move(out), ModeOperator::Label::displacement};
}

cxd cf_eval(const FockDensityMatrix& rho, cxd lambda) {
    if (rho.modes() != 1) throw Error("cf-engine", "cf_eval", "cf_eval expects a one-mode state");
    const Matrix d = displacement_matrix(lambda, rho.dim()).mat;
    // tr(rho D) = sum conj(rho_ij) D_ij for Hermitian rho
    return kern::cdotc(flat(rho.mat()), flat(d));
}

cxd cf_eval2(const FockDensityMatrix& rho, cxd l1, cxd l2) {
    if (rho.modes() != 2) throw Error("cf-engine", "cf_eval2", "cf_eval2 expects a two-mode state");
    const int dim = rho.dim();
    const Matrix d1t = displacement_matrix(l1, dim).mat.transpose();
    const Matrix d2t = displacement_matrix(l2, dim).mat.transpose();
    Matrix s(dim, dim);
    for (int n1 = 0; n1 < dim; ++n1)
        for (int m1 = 0; m1 < dim; ++m1)
            s(n1, m1) = rho.mat().block(n1 * dim, m1 * dim, dim, dim).cwiseProduct(d2t).sum();
    return s.cwiseProduct(d1t).sum();
}

CFGrid sample_grid(const std::function<cxd(cxd)>& evaluator, double half_width, double step,
                   std::string meta) {
    if (!(half_width > 0.0) || !(step > 0.0) || step > half_width)
        throw Error("cf-engine", "grid-params", "sample_grid requires 0 < h <= L");
    CFGrid grid;
    grid.half_width = half_width;
    grid.step = step;
    grid.m = static_cast<int>(std::lround(half_width / step));
    grid.meta = std::move(meta);
    const int side = grid.side();
    grid.values.assign(static_cast<std::size_t>(side) * side, cxd{});
    parallel_for(side, [&](std::size_t row) {
        const int j = static_cast<int>(row) - grid.m;
        for (int k = -grid.m; k <= grid.m; ++k)
            grid.values[grid.index(j, k)] = evaluator(grid.lambda(j, k));
    });
    const double center = std::abs(grid.at(0, 0) - cxd(1.0, 0.0));
    if (center > 1e-10)
        throw Error("cf-engine", "grid-center", "sample_grid: chi(0) != 1", center, 1e-10);
    double herm = 0.0;
    for (int j = -grid.m; j <= grid.m; ++j)
        for (int k = -grid.m; k <= grid.m; ++k)
            herm = std::max(herm, std::abs(grid.at(-j, -k) - std::conj(grid.at(j, k))));
    if (herm > 1e-10)
        throw Error("cf-engine", "grid-hermitian-symmetry",
                    "sample_grid: chi(-lambda) != conj(chi(lambda))", herm, 1e-10);
    return grid;
}

FockDensityMatrix reconstruct(const CFGrid& grid, int dim, ReconstructionDefects* defects) {
    const int side = grid.side();
    const double weight = grid.step * grid.step / M_PI;
    std::vector<Matrix> partial(side);
    parallel_for(side, [&](std::size_t row) {
        const int j = static_cast<int>(row) - grid.m;
        Matrix acc = Matrix::Zero(dim, dim);
        for (int k = -grid.m; k <= grid.m; ++k) {
            const Matrix d = displacement_matrix(-grid.lambda(j, k), dim).mat;
            kern::caxpy(weight * grid.at(j, k), flat(d),
                        {acc.data(), static_cast<std::size_t>(acc.size())});
        }
        partial[row] = std::move(acc);
    });
    Matrix raw = Matrix::Zero(dim, dim);
    for (const Matrix& p : partial) raw += p;
    const double herm = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    Matrix sym = 0.5 * (raw + raw.adjoint().eval());
    const double tr = sym.trace().real();
    if (tr <= 0.0)
        throw Error("cf-engine", "reconstruct-trace",
                    "reconstruct: non-normalizable output (trace <= 0)", tr);
    if (defects) {
        defects->herm_defect = herm;
        defects->trace_defect = std::abs(tr - 1.0);
    }
    return FockDensityMatrix(1, dim, sym / tr);
}

Moments1 moments_from_state(const FockDensityMatrix& rho) {
    if (rho.modes() != 1)
        throw Error("cf-engine", "moments", "moments_from_state expects a one-mode state");
    const int dim = rho.dim();
    const ModeOperator a = ModeOperator::annihilate(dim);
    const TaggedOp ta{a, 1};
    Moments1 mom;
    mom.a = expect(rho, std::array{ta});
    mom.a2 = expect(rho, std::array{ta, ta});
    const ModeOperator ad = ModeOperator::create(dim);
    mom.n = expect(rho, std::array{TaggedOp{ad, 1}, ta}).real();
    const double mq = std::sqrt(2.0) * mom.a.real();
    const double mp = std::sqrt(2.0) * mom.a.imag();
    mom.cm.sqq = mom.a2.real() + mom.n + 0.5 - mq * mq;
    mom.cm.spp = -mom.a2.real() + mom.n + 0.5 - mp * mp;
    mom.cm.sqp = mom.a2.imag() - mq * mp;
    return mom;
}

void write_grid(std::ostream& os, const CFGrid& grid) {
    os.precision(17);
    os << grid.half_width << ' ' << grid.step << ' ' << grid.m << '\n';
    for (int j = -grid.m; j <= grid.m; ++j)
        for (int k = -grid.m; k <= grid.m; ++k) {
            const cxd v = grid.at(j, k);
            os << j << ' ' << k << ' ' << v.real() << ' ' << v.imag() << '\n';
        }
}

CFGrid read_grid(std::istream& is) {
    CFGrid grid;
    if (!(is >> grid.half_width >> grid.step >> grid.m) || grid.m < 0)
        throw Error("cf-engine", "grid-io", "read_grid: bad header");
    const std::size_t count = static_cast<std::size_t>(grid.side()) * grid.side();
    grid.values.assign(count, cxd{});
    std::vector<bool> seen(count, false);
    for (std::size_t i = 0; i < count; ++i) {
        int j, k;
        double re, im;
        if (!(is >> j >> k >> re >> im))
            throw Error("cf-engine", "grid-io", "read_grid: truncated sample rows");
        if (j < -grid.m || j > grid.m || k < -grid.m || k > grid.m)
            throw Error("cf-engine", "grid-io", "read_grid: sample index out of range");
        grid.values[grid.index(j, k)] = {re, im};
        seen[grid.index(j, k)] = true;
    }
    for (bool s : seen)
        if (!s) throw Error("cf-engine", "grid-io", "read_grid: duplicate or missing samples");
    return grid;
}

}  // namespace cvtele
