#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "cvtele/error.hpp"

// Truncated Fock-space linear algebra. Conventions frozen across the whole
// project:
//   - hbar = 1, q = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)),
//     so <q^2> = 1/2 in vacuum;
//   - two-mode indices are mode-1-major: index = n1 * dim + n2.
// All types are immutable after construction and safe to share across threads.

namespace cvtele {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Pure state amplitudes over |0..dim-1> (one mode) or |n1 n2> (two modes).
// Normalized on construction; `population` records the squared norm of the
// raw amplitudes, i.e. the probability mass the truncation captured when the
// untruncated state is normalized.
class FockVector {
public:
    FockVector(int modes, int dim, CVector amps);

    int modes() const { return modes_; }
    int dim() const { return dim_; }
    const CVector& amps() const { return amps_; }
    double population() const { return population_; }

private:
    int modes_;
    int dim_;
    CVector amps_;
    double population_;
};

class FockDensityMatrix {
public:
    // Checks squareness, mode/dim consistency, hermiticity (1e-12) and that
    // the trace is real and in (-1e-10, 1 + 1e-9].
    FockDensityMatrix(int modes, int dim, Matrix mat);

    static FockDensityMatrix pure(const FockVector& psi);

    int modes() const { return modes_; }
    int dim() const { return dim_; }
    const Matrix& mat() const { return mat_; }

    double trace() const { return trace_; }
    FockDensityMatrix normalized() const;

    double purity() const;         // tr(rho^2)
    double min_eigenvalue() const; // dense self-adjoint solve, on demand

private:
    int modes_;
    int dim_;
    Matrix mat_;
    double trace_;
};

struct ModeOperator {
    enum class Label { annihilate, create, q, p, displacement, custom };

    int dim;
    Matrix mat;
    Label label;

    static ModeOperator annihilate(int dim);
    static ModeOperator create(int dim);
    static ModeOperator quadrature_q(int dim);
    static ModeOperator quadrature_p(int dim);
    static ModeOperator identity(int dim);
    static ModeOperator custom(Matrix m);
};

// One factor of an ordered operator product; mode is 1-based.
struct TaggedOp {
    const ModeOperator& op;
    int mode;
};

// Kronecker product with the mode-1-major convention; trace multiplies.
FockDensityMatrix tensor(const FockDensityMatrix& a, const FockDensityMatrix& b);

// keep selects the retained mode (1 or 2); trace is preserved.
FockDensityMatrix partial_trace(const FockDensityMatrix& rho, int keep);

// tr(rho * op_1 * op_2 * ...) in the given order; operators on different
// modes commute and are combined per mode before contraction.
cxd expect(const FockDensityMatrix& rho, std::span<const TaggedOp> ops);

// <psi| op_1 * op_2 * ... |psi> for pure states; O(dim^3) for two modes.
cxd expect(const FockVector& psi, std::span<const TaggedOp> ops);

}  // namespace cvtele
