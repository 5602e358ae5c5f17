#include "cvtele/oracle.hpp"

#include <cmath>
#include <vector>

#include "cvtele/parallel.hpp"

namespace cvtele {

namespace {

// psi_0 = pi^{-1/4} e^{-x^2/2}, psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}
Eigen::MatrixXd psi_values(int dim, const Eigen::VectorXd& xs) {
    const auto n_pts = xs.size();
    Eigen::MatrixXd out(dim, n_pts);
    out.row(0) = (-0.5 * xs.array().square()).exp() * std::pow(M_PI, -0.25);
    if (dim > 1) out.row(1) = std::sqrt(2.0) * xs.array().transpose() * out.row(0).array();
    for (int n = 1; n + 1 < dim; ++n)
        out.row(n + 1) = std::sqrt(2.0 / (n + 1)) * xs.array().transpose() * out.row(n).array() -
                         std::sqrt(n / (n + 1.0)) * out.row(n - 1).array();
    return out;
}

Eigen::VectorXd uniform_lattice(double half_width, double step) {
    const int m = static_cast<int>(std::lround(half_width / step));
    Eigen::VectorXd xs(2 * m + 1);
    for (int i = -m; i <= m; ++i) xs(i + m) = i * step;
    return xs;
}

// Low Fock block used to measure the resolution-of-identity constant; these
// states are fully covered by any sane outcome lattice.
std::vector<std::pair<int, int>> completeness_block(int dim) {
    std::vector<std::pair<int, int>> pairs;
    for (int n = 0; n < dim && n <= 2; ++n)
        for (int m = 0; m + n <= 2 && m < dim; ++m) pairs.emplace_back(n, m);
    return pairs;
}

}  // namespace

PositionBasisTable PositionBasisTable::build(int dim, double half_width, double step) {
    if (dim < 2 || !(half_width > 0.0) || !(step > 0.0) || step > half_width)
        throw Error("oracle", "eta-lattice", "position lattice requires dim >= 2 and 0 < d <= L");
    // classical turning point of the highest level plus tail room
    if (std::sqrt(2.0 * dim + 1.0) + 2.0 > half_width)
        throw Error("oracle", "eta-coverage",
                    "position lattice too narrow for the requested truncation",
                    std::sqrt(2.0 * dim + 1.0) + 2.0, half_width);
    PositionBasisTable t;
    t.half_width = half_width;
    t.step = step;
    t.lattice = uniform_lattice(half_width, step);
    t.psi = psi_values(dim, t.lattice);
    const double defect = t.orthonormality_defect();
    if (defect > 1e-6)
        throw Error("oracle", "eta-coverage", "position basis not orthonormal on this lattice",
                    defect, 1e-6);
    return t;
}

double PositionBasisTable::orthonormality_defect() const {
    const int dim = static_cast<int>(psi.rows());
    Eigen::MatrixXd g = psi * psi.transpose() * step;
    g -= Eigen::MatrixXd::Identity(dim, dim);
    return g.cwiseAbs().maxCoeff();
}

Matrix phi_coefficients(double q, double p, int dim, const PositionBasisTable& eta_table) {
    if (eta_table.psi.rows() < dim)
        throw Error("oracle", "eta-coverage", "position table truncation smaller than requested");
    const Eigen::VectorXd shifted = eta_table.lattice.array() + q;
    const Eigen::MatrixXd psi_q = psi_values(dim, shifted);
    const double scale = eta_table.step / std::sqrt(2.0 * M_PI);
    const Eigen::ArrayXd phase = p * eta_table.lattice.array();
    const Eigen::VectorXd wc = (phase.cos() * scale).matrix();
    const Eigen::VectorXd ws = (phase.sin() * scale).matrix();
    const Eigen::MatrixXd b = eta_table.psi.topRows(dim);
    Matrix out = (psi_q * wc.asDiagonal() * b.transpose()).cast<cxd>() +
                 cxd(0.0, 1.0) * (psi_q * ws.asDiagonal() * b.transpose()).cast<cxd>();
    return out;
}

OracleWorkspace make_oracle_workspace(int dim, const Numerics& num) {
    num.validate();
    OracleWorkspace ws;
    ws.dim = dim;
    ws.num = num;
    ws.eta = PositionBasisTable::build(dim, num.eta_l, num.eta_d);

    const Eigen::VectorXd qs = uniform_lattice(num.m_l, num.m_d);
    const Eigen::VectorXd ps = qs;
    const auto n_eta = ws.eta.lattice.size();
    const double scale = num.eta_d / std::sqrt(2.0 * M_PI);
    Eigen::MatrixXd ecos(n_eta, ps.size()), esin(n_eta, ps.size());
    for (Eigen::Index ip = 0; ip < ps.size(); ++ip) {
        const Eigen::ArrayXd phase = ps(ip) * ws.eta.lattice.array();
        ecos.col(ip) = (phase.cos() * scale).matrix();
        esin.col(ip) = (phase.sin() * scale).matrix();
    }
    const auto pairs = completeness_block(dim);
    std::vector<double> partial(qs.size(), 0.0);
    parallel_for(qs.size(), [&](std::size_t iq) {
        const Eigen::VectorXd shifted = ws.eta.lattice.array() + qs(iq);
        const Eigen::MatrixXd psi_q = psi_values(dim, shifted);
        Eigen::MatrixXd rows(pairs.size(), n_eta);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            rows.row(i) = psi_q.row(pairs[i].first).cwiseProduct(ws.eta.psi.row(pairs[i].second));
        const Eigen::MatrixXd fre = rows * ecos;
        const Eigen::MatrixXd fim = rows * esin;
        partial[iq] = (fre.array().square() + fim.array().square()).sum() * num.m_d * num.m_d;
    });
    double total = 0.0;
    for (double v : partial) total += v;
    ws.completeness = total / static_cast<double>(pairs.size());
    return ws;
}

ConditionalState conditional_bob_state(const FockDensityMatrix& rho_in,
                                       const FockDensityMatrix& rho_ab, double q, double p,
                                       const OracleWorkspace& ws) {
    if (rho_in.modes() != 1 || rho_ab.modes() != 2 || rho_in.dim() != rho_ab.dim())
        throw Error("oracle", "states", "conditional_bob_state: expects one-mode input and "
                                        "two-mode resource of equal truncation");
    const int n = rho_in.dim();
    const Matrix phi = phi_coefficients(q, p, n, ws.eta);
    const Matrix t = phi.adjoint() * rho_in.mat() * phi;
    Matrix rho_b = Matrix::Zero(n, n);
    for (int b = 0; b < n; ++b)
        for (int bp = 0; bp < n; ++bp) {
            cxd acc = 0.0;
            for (int ma = 0; ma < n; ++ma)
                for (int mb = 0; mb < n; ++mb)
                    acc += t(ma, mb) * rho_ab.mat()(ma * n + b, mb * n + bp);
            rho_b(b, bp) = acc;
        }
    const double w = rho_b.trace().real();
    if (w < -1e-10)
        throw Error("oracle", "conditional-trace",
                    "conditional state has negative trace (quadrature breakdown)", w, 1e-10);
    rho_b = 0.5 * (rho_b + rho_b.adjoint().eval());
    return {FockDensityMatrix(1, n, std::move(rho_b)), w / ws.completeness};
}

OracleResult oracle_teleport(const FockDensityMatrix& rho_in, const FockDensityMatrix& rho_ab,
                             const Numerics& num, GainConvention gain) {
    if (rho_in.modes() != 1 || rho_ab.modes() != 2 || rho_in.dim() != rho_ab.dim())
        throw Error("oracle", "states", "oracle_teleport: expects one-mode input and two-mode "
                                        "resource of equal truncation");
    const int n = rho_in.dim();
    const OracleWorkspace ws = make_oracle_workspace(n, num);

    // rho_B(b,b') = sum_{ma,mb} T(ma,mb) rho_AB[(ma b),(mb b')], flattened so
    // one GEMV per outcome: v = R vec(T).
    Matrix big_r(n * n, n * n);
    for (int b = 0; b < n; ++b)
        for (int bp = 0; bp < n; ++bp)
            for (int ma = 0; ma < n; ++ma)
                for (int mb = 0; mb < n; ++mb)
                    big_r(b + bp * n, ma + mb * n) = rho_ab.mat()(ma * n + b, mb * n + bp);

    const Eigen::VectorXd qs = uniform_lattice(num.m_l, num.m_d);
    const Eigen::VectorXd ps = qs;
    const auto n_eta = ws.eta.lattice.size();
    const double scale = num.eta_d / std::sqrt(2.0 * M_PI);
    Eigen::MatrixXd ecos(n_eta, ps.size()), esin(n_eta, ps.size());
    for (Eigen::Index ip = 0; ip < ps.size(); ++ip) {
        const Eigen::ArrayXd phase = ps(ip) * ws.eta.lattice.array();
        ecos.col(ip) = (phase.cos() * scale).matrix();
        esin.col(ip) = (phase.sin() * scale).matrix();
    }

    const double cell = num.m_d * num.m_d;
    std::vector<Matrix> acc_rows(qs.size());
    std::vector<double> prob_rows(qs.size(), 0.0);
    parallel_for(qs.size(), [&](std::size_t iq) {
        const double q = qs(iq);
        const Eigen::VectorXd shifted = ws.eta.lattice.array() + q;
        const Eigen::MatrixXd psi_q = psi_values(n, shifted);
        Eigen::MatrixXd rows(n * n, n_eta);  // row n_in * n + m_a
        for (int ni = 0; ni < n; ++ni)
            for (int ma = 0; ma < n; ++ma)
                rows.row(ni * n + ma) = psi_q.row(ni).cwiseProduct(ws.eta.psi.row(ma));
        const Eigen::MatrixXd fre = rows * ecos;
        const Eigen::MatrixXd fim = rows * esin;

        Matrix acc = Matrix::Zero(n, n);
        Matrix phi(n, n), t(n, n);
        double prob = 0.0;
        for (Eigen::Index ip = 0; ip < ps.size(); ++ip) {
            const double p = ps(ip);
            for (int ni = 0; ni < n; ++ni)
                for (int ma = 0; ma < n; ++ma)
                    phi(ni, ma) = cxd(fre(ni * n + ma, ip), fim(ni * n + ma, ip));
            t.noalias() = phi.adjoint() * rho_in.mat() * phi;
            const Eigen::Map<const CVector> tv(t.data(), n * n);
            const CVector v = big_r * tv;
            const Eigen::Map<const Matrix> rho_b(v.data(), n, n);
            const double w = rho_b.trace().real();
            if (w < -1e-10)
                throw Error("oracle", "conditional-trace",
                            "conditional state has negative trace (quadrature breakdown)", w,
                            1e-10);
            prob += w * cell;
            const cxd mu(q, p);
            const cxd alpha = gain == GainConvention::sqrt2 ? mu / std::sqrt(2.0) : mu;
            const Matrix d = displacement_matrix(alpha, n).mat;
            acc.noalias() += cell * (d * rho_b * d.adjoint());
        }
        acc_rows[iq] = std::move(acc);
        prob_rows[iq] = prob;
    });

    Matrix out = Matrix::Zero(n, n);
    double raw_prob = 0.0;
    for (std::size_t i = 0; i < acc_rows.size(); ++i) {
        out += acc_rows[i];
        raw_prob += prob_rows[i];
    }
    const double prob_total = raw_prob / ws.completeness;
    if (1.0 - prob_total > 0.05)
        throw Error("oracle", "probability-deficit",
                    "outcome lattice captures too little probability; enlarge the measurement "
                    "lattice half-width",
                    1.0 - prob_total, 0.05);
    out = 0.5 * (out + out.adjoint().eval());
    const double tr = out.trace().real();
    if (tr <= 0.0)
        throw Error("oracle", "output-trace", "oracle output has non-positive trace", tr);
    return {FockDensityMatrix(1, n, out / tr), prob_total, ws.completeness};
}

}  // namespace cvtele
