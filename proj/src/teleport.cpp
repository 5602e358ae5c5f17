#include "cvtele/teleport.hpp"

#include <array>
#include <cmath>

#include "cvtele/kernels.hpp"

namespace cvtele {

namespace {

std::span<const cxd> flat(const Matrix& m) {
    return {m.data(), static_cast<std::size_t>(m.size())};
}

// Symmetrized second-order correlators of an undisplaced two-mode resource:
// Gaussian states read them off the CM, Fock states compute Re<A B>.
struct ResourceCorrelators {
    double q1q1, p1p1, q2q2, p2p2;
    double q1p1, q2p2;
    double q1q2, p1p2, q1p2, p1q2;
};

ResourceCorrelators correlators(const StateHandle& resource) {
    if (resource.modes != 2)
        throw Error("teleport", "resource", "resource must be a two-mode state");
    if (!resource.undisplaced())
        throw Error("teleport", "undisplaced",
                    "resource is displaced; CM/EPR formulas require first moments <= 1e-10");
    ResourceCorrelators c{};
    if (resource.gaussian) {
        const Eigen::MatrixXd& cm = resource.gaussian->cm;
        c.q1q1 = cm(0, 0);
        c.p1p1 = cm(1, 1);
        c.q2q2 = cm(2, 2);
        c.p2p2 = cm(3, 3);
        c.q1p1 = cm(0, 1);
        c.q2p2 = cm(2, 3);
        c.q1q2 = cm(0, 2);
        c.p1p2 = cm(1, 3);
        c.q1p2 = cm(0, 3);
        c.p1q2 = cm(1, 2);
        return c;
    }
    const int dim = resource.dim;
    const ModeOperator q = ModeOperator::quadrature_q(dim);
    const ModeOperator p = ModeOperator::quadrature_p(dim);
    auto sym = [&](const ModeOperator& a, int ma, const ModeOperator& b, int mb) {
        const std::array ops{TaggedOp{a, ma}, TaggedOp{b, mb}};
        const cxd v = resource.pure ? expect(*resource.pure, ops)
                                    : expect(resource.fock_state(), ops);
        return v.real();
    };
    c.q1q1 = sym(q, 1, q, 1);
    c.p1p1 = sym(p, 1, p, 1);
    c.q2q2 = sym(q, 2, q, 2);
    c.p2p2 = sym(p, 2, p, 2);
    c.q1p1 = sym(q, 1, p, 1);
    c.q2p2 = sym(q, 2, p, 2);
    c.q1q2 = sym(q, 1, q, 2);
    c.p1p2 = sym(p, 1, p, 2);
    c.q1p2 = sym(q, 1, p, 2);
    c.p1q2 = sym(p, 1, q, 2);
    return c;
}

CFGrid product_grid(const CFGrid& a, const CFGrid& b, std::string meta) {
    CFGrid out = a;
    out.meta = std::move(meta);
    kern::cmul(a.values, b.values, out.values);
    return out;
}

}  // namespace

void Numerics::validate() const {
    if (dim < 2) throw Error("cli", "numerics", "truncation must be >= 2");
    if (!(grid_l > 0.0) || !(grid_h > 0.0) || grid_h > grid_l)
        throw Error("cli", "numerics", "CF lattice requires 0 < h <= L");
    if (!(m_l > 0.0) || !(m_d > 0.0) || m_d > m_l)
        throw Error("cli", "numerics", "measurement lattice requires 0 < d <= L");
    if (!(eta_l > 0.0) || !(eta_d > 0.0) || eta_d > eta_l)
        throw Error("cli", "numerics", "position lattice requires 0 < d <= L");
}

void TeleportJob::validate() const {
    numerics.validate();
    if (input.modes != 1) throw Error("teleport", "job", "input must be a one-mode state");
    if (resource.modes != 2) throw Error("teleport", "job", "resource must be a two-mode state");
}

CFGrid sample_resource_kernel(const StateHandle& resource, const Numerics& num) {
    if (resource.modes != 2)
        throw Error("teleport", "resource", "resource must be a two-mode state");
    return sample_grid([&](cxd lam) { return resource.resource_kernel(lam); }, num.grid_l,
                       num.grid_h, "resource");
}

TeleportResult teleport_cf(const TeleportJob& job) {
    job.validate();
    const CFGrid in = sample_grid([&](cxd lam) { return job.input.cf(lam); },
                                  job.numerics.grid_l, job.numerics.grid_h, "input");
    const CFGrid kernel = sample_resource_kernel(job.resource, job.numerics);
    CFGrid out = product_grid(in, kernel, "output");
    ReconstructionDefects defects;
    FockDensityMatrix rho_out = reconstruct(out, job.numerics.dim, &defects);
    return {std::move(out), std::move(rho_out), defects};
}

FockDensityMatrix distorting_state(const StateHandle& resource, const Numerics& num,
                                   ReconstructionDefects* defects) {
    const CFGrid grid =
        sample_grid([&](cxd lam) { return resource.resource_kernel(lam) *
                                          std::exp(-0.5 * std::norm(lam)); },
                    num.grid_l, num.grid_h, "distorting");
    return reconstruct(grid, num.dim, defects);
}

CovMatrix2 cm_from_resource(const StateHandle& resource) {
    const ResourceCorrelators c = correlators(resource);
    CovMatrix2 cm;
    cm.sqq = 0.5 + c.q2q2 + c.q1q1 - 2.0 * c.q1q2;
    cm.sqp = c.q2p2 - c.q1p1 + c.p1q2 - c.q1p2;
    cm.spp = 0.5 + c.p2p2 + c.p1p1 + 2.0 * c.p1p2;
    return cm;
}

double epr_uncertainty(const StateHandle& resource) {
    const ResourceCorrelators c = correlators(resource);
    const double qq = c.q1q1 + c.q2q2 - 2.0 * c.q1q2;  // <(q2 - q1)^2>
    const double pp = c.p1p1 + c.p2p2 + 2.0 * c.p1p2;  // <(p1 + p2)^2>
    return 0.5 * (qq + pp);
}

double added_noise_analytic(const StateHandle& resource) {
    const ResourceCorrelators c = correlators(resource);
    // <n>_M = 1 + <n1> + <n2> - <a1 a2> - <a1^dag a2^dag> expressed through
    // quadrature correlators (undisplaced resource).
    const double n1 = 0.5 * (c.q1q1 + c.p1p1 - 1.0);
    const double n2 = 0.5 * (c.q2q2 + c.p2p2 - 1.0);
    return 1.0 + n1 + n2 - c.q1q2 + c.p1p2;
}

double added_noise(const StateHandle& resource, const Numerics& num) {
    const FockDensityMatrix rho_m = distorting_state(resource, num);
    return moments_from_state(rho_m).n;
}

MomentRelationDefects moment_relations_check(const StateHandle& resource, const Numerics& num) {
    if (resource.modes != 2)
        throw Error("teleport", "resource", "resource must be a two-mode state");
    if (!resource.undisplaced())
        throw Error("teleport", "undisplaced", "moment relations require an undisplaced resource");
    const FockDensityMatrix rho_m = distorting_state(resource, num);
    const Moments1 lhs = moments_from_state(rho_m);

    const int dim = resource.dim;
    const ModeOperator a = ModeOperator::annihilate(dim);
    const ModeOperator ad = ModeOperator::create(dim);
    auto ex = [&](std::span<const TaggedOp> ops) {
        return resource.pure ? expect(*resource.pure, ops) : expect(resource.fock_state(), ops);
    };
    const cxd a2_rhs = ex(std::array{TaggedOp{a, 2}, TaggedOp{a, 2}}) +
                       ex(std::array{TaggedOp{ad, 1}, TaggedOp{ad, 1}}) -
                       2.0 * ex(std::array{TaggedOp{ad, 1}, TaggedOp{a, 2}});
    const cxd n_rhs = 1.0 + ex(std::array{TaggedOp{ad, 1}, TaggedOp{a, 1}}) +
                      ex(std::array{TaggedOp{ad, 2}, TaggedOp{a, 2}}) -
                      ex(std::array{TaggedOp{a, 1}, TaggedOp{a, 2}}) -
                      ex(std::array{TaggedOp{ad, 1}, TaggedOp{ad, 2}});
    return {std::abs(lhs.a2 - a2_rhs), std::abs(cxd(lhs.n) - n_rhs)};
}

namespace {

// A on mode 1 embeds as A (x) I, B on mode 2 as I (x) B (mode-1-major).
Matrix embed1(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    Matrix out = Matrix::Zero(n * n, n * n);
    for (int n1 = 0; n1 < n; ++n1)
        for (int m1 = 0; m1 < n; ++m1)
            for (int k = 0; k < n; ++k) out(n1 * n + k, m1 * n + k) = a(n1, m1);
    return out;
}

Matrix embed2(const Matrix& b) {
    const int n = static_cast<int>(b.rows());
    Matrix out = Matrix::Zero(n * n, n * n);
    for (int k = 0; k < n; ++k)
        for (int n2 = 0; n2 < n; ++n2)
            for (int m2 = 0; m2 < n; ++m2) out(k * n + n2, k * n + m2) = b(n2, m2);
    return out;
}

}  // namespace

QPMoments qp_moments(const StateHandle& resource) {
    if (resource.modes != 2)
        throw Error("teleport", "resource", "qp_moments expects a two-mode state");
    const int n = resource.dim;
    const Matrix qm = ModeOperator::quadrature_q(n).mat;
    const Matrix pm = ModeOperator::quadrature_p(n).mat;
    const Matrix qq = embed2(qm) - embed1(qm);  // q2 - q1
    const Matrix pp = embed1(pm) + embed2(pm);  // p1 + p2
    if (resource.pure) {
        const CVector& psi = resource.pure->amps();
        const CVector qv = qq * psi;
        const CVector pv = pp * psi;
        return {qv.squaredNorm(), pv.squaredNorm(), qv.dot(pv).real()};
    }
    const Matrix& rho = resource.fock_state().mat();
    const Matrix qr = qq * rho;
    const Matrix pr = pp * rho;
    return {(qq * qr).trace().real(), (pp * pr).trace().real(),
            0.5 * ((qq * pr).trace() + (pp * qr).trace()).real()};
}

double fidelity_coherent(const CFGrid& kernel) {
    std::vector<cxd> gauss(kernel.values.size());
    for (int j = -kernel.m; j <= kernel.m; ++j)
        for (int k = -kernel.m; k <= kernel.m; ++k)
            gauss[kernel.index(j, k)] = std::exp(-std::norm(kernel.lambda(j, k)));
    const cxd sum = kern::cdotu(gauss, kernel.values);
    return (kernel.step * kernel.step / M_PI) * sum.real();
}

double fidelity_coherent(const StateHandle& resource, const Numerics& num) {
    return fidelity_coherent(sample_resource_kernel(resource, num));
}

double q_function_zero(const FockDensityMatrix& rho_m) { return rho_m.mat()(0, 0).real(); }

namespace {

Matrix psd_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const FockDensityMatrix& a, const FockDensityMatrix& b) {
    if (a.dim() != b.dim() || a.modes() != b.modes())
        throw Error("teleport", "fidelity", "fidelity: dimension mismatch");
    const Matrix sa = psd_sqrt(a.mat());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sa * b.mat() * sa, Eigen::EigenvaluesOnly);
    const double root_sum = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return root_sum * root_sum;
}

double overlap(const FockDensityMatrix& a, const FockDensityMatrix& b) {
    if (a.dim() != b.dim() || a.modes() != b.modes())
        throw Error("teleport", "overlap", "overlap: dimension mismatch");
    // tr(ab) = sum conj(a_ij) b_ij for Hermitian a
    return kern::cdotc(flat(a.mat()), flat(b.mat())).real();
}

double overlap_cf(const CFGrid& a, const CFGrid& b) {
    if (a.m != b.m || a.step != b.step)
        throw Error("teleport", "overlap", "overlap_cf: lattice mismatch");
    const cxd sum = kern::cdotc(a.values, b.values);
    return (a.step * a.step / M_PI) * sum.real();
}

void ProtocolReport::validate() const {
    if (added_noise < 0.0)
        throw Error("teleport", "added-noise", "added noise must be nonnegative", added_noise);
    if (det_cm < 0.25 - 1e-9)
        throw Error("teleport", "uncertainty-relation",
                    "det CM violates the Robertson-Schroedinger bound", det_cm, 1e-9);
    if (min_eig_cm_minus_half < -1e-9)
        throw Error("teleport", "no-squeezing",
                    "distorting state appears squeezed", min_eig_cm_minus_half, 1e-9);
}

ProtocolReport run_protocol(const TeleportJob& job) {
    job.validate();
    const Numerics& num = job.numerics;

    ProtocolReport rep;
    rep.input_label = job.input.label;
    rep.resource_label = job.resource.label;
    rep.numerics = num;

    const CFGrid in_grid = sample_grid([&](cxd lam) { return job.input.cf(lam); }, num.grid_l,
                                       num.grid_h, "input");
    const CFGrid kernel = sample_resource_kernel(job.resource, num);
    const CFGrid out_grid = product_grid(in_grid, kernel, "output");
    const FockDensityMatrix rho_out = reconstruct(out_grid, num.dim, &rep.out_defects);

    CFGrid m_grid = kernel;
    m_grid.meta = "distorting";
    for (int j = -kernel.m; j <= kernel.m; ++j)
        for (int k = -kernel.m; k <= kernel.m; ++k)
            m_grid.values[kernel.index(j, k)] *= std::exp(-0.5 * std::norm(kernel.lambda(j, k)));
    const FockDensityMatrix rho_m = reconstruct(m_grid, num.dim, &rep.distorting_defects);

    rep.added_noise = moments_from_state(rho_m).n;
    rep.added_noise_analytic = added_noise_analytic(job.resource);
    rep.delta_epr = epr_uncertainty(job.resource);
    rep.theorem1_defect = std::abs(rep.added_noise - rep.delta_epr);
    rep.theorem1_defect_analytic = std::abs(rep.added_noise_analytic - rep.delta_epr);

    rep.cm_m = cm_from_resource(job.resource);
    rep.det_cm = rep.cm_m.det();
    rep.min_eig_cm_minus_half = rep.cm_m.min_eig() - 0.5;

    rep.f_coh = fidelity_coherent(kernel);
    rep.f_coh_q0 = q_function_zero(rho_m);

    const FockDensityMatrix rho_in = job.input.fock_state();
    rep.f_in_out = fidelity(rho_in, rho_out);
    rep.overlap_in_out = overlap_cf(in_grid, out_grid);
    rep.recon_min_eig = rho_out.min_eigenvalue();

    rep.validate();
    return rep;
}

}  // namespace cvtele
