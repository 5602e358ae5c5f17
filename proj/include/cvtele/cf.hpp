#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cvtele/gaussian.hpp"

// Characteristic-function machinery: chi(lambda) = tr[rho D(lambda)] with
// D(alpha) = exp(alpha a^dag - alpha^* a), and the inverse Weyl expansion
// rho = (1/pi) integral d^2lambda chi(lambda) D(-lambda).

namespace cvtele {

// Complex samples on the square lattice lambda = (j h, k h), j,k in [-M, M],
// M = round(L/h).
struct CFGrid {
    double half_width = 0.0;
    double step = 0.0;
    int m = 0;
    std::vector<cxd> values;
    std::string meta;  // provenance: input/resource/output/distorting

    int side() const { return 2 * m + 1; }
    std::size_t index(int j, int k) const {
        return static_cast<std::size_t>(j + m) * side() + (k + m);
    }
    cxd at(int j, int k) const { return values[index(j, k)]; }
    cxd lambda(int j, int k) const { return {j * step, k * step}; }
};

// <m|D(alpha)|n> via the stable ascending associated-Laguerre recurrence,
// one diagonal offset at a time; exact matrix elements of the untruncated
// operator restricted to the truncated basis.
ModeOperator displacement_matrix(cxd alpha, int dim);

cxd cf_eval(const FockDensityMatrix& rho, cxd lambda);
cxd cf_eval2(const FockDensityMatrix& rho, cxd l1, cxd l2);

// Samples the evaluator and asserts the CFGrid invariants (chi(0) = 1 and
// Hermitian symmetry within 1e-10). Rows run in parallel.
CFGrid sample_grid(const std::function<cxd(cxd)>& evaluator, double half_width, double step,
                   std::string meta = "");

struct ReconstructionDefects {
    double herm_defect = 0.0;   // max |raw - raw^dag| before re-Hermitization
    double trace_defect = 0.0;  // |raw trace - 1| before renormalization
};

// rho = (1/pi) sum chi(lambda) D(-lambda) h^2, re-Hermitized and
// trace-normalized; row partial sums are reduced in fixed order so the
// result does not depend on the thread count.
FockDensityMatrix reconstruct(const CFGrid& grid, int dim,
                              ReconstructionDefects* defects = nullptr);

struct Moments1 {
    cxd a;       // <a>
    cxd a2;      // <a^2>
    double n;    // <a^dag a>
    CovMatrix2 cm;  // symmetrized second moments about the mean
};

Moments1 moments_from_state(const FockDensityMatrix& rho);

// Columnar text format: header "L h M", one row "j k re im" per sample.
void write_grid(std::ostream& os, const CFGrid& grid);
CFGrid read_grid(std::istream& is);

}  // namespace cvtele
