#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qcasim/electrostatics.hpp"
#include "qcasim/layout.hpp"

namespace qcasim {

// The 2^M circuit Hamiltonian. Basis word w: bit k of w is the state of
// device cell k (bit 0 = cell 1 in the |x_M ... x_2 x_1> ordering). The
// diagonal is stored explicitly; the off-diagonal part is uniform, -gamma_eff
// on every single-bit flip, and never stored:
//
//   (Hv)[w] = diagonal[w] v[w] - gamma_eff sum_k v[w ^ (1 << k)]
//
// The diagonal is shifted so its minimum is zero; all polarization
// observables are unaffected by the shift.
struct HamiltonianModel {
    int m = 0;
    std::vector<double> diagonal;  // 2^m entries, eV
    double gamma_eff = 0.0;        // eV

    std::size_t dim() const { return diagonal.size(); }
};

// Builds the diagonal from the pairwise interaction table, driver potentials
// and field detunings. Throws on M = 0; M > 14 is allowed but prints a
// memory warning to stderr.
HamiltonianModel assemble(const CircuitLayout& layout, const FieldVector& field,
                          const TwoStateParams& p);
HamiltonianModel assemble(const CircuitLayout& layout, const FieldVector& field);

// Matrix-free application, out = H v. Deterministic, single pass over the
// basis in index order.
void apply(const HamiltonianModel& h, const std::vector<double>& v, std::vector<double>& out);
std::vector<double> apply(const HamiltonianModel& h, const std::vector<double>& v);

// Explicit dense matrix; oracle path, M <= 12 (memory guard).
Eigen::MatrixXd dense_matrix(const HamiltonianModel& h);

}  // namespace qcasim
