#pragma once

#include <functional>
#include <vector>

#include "qcasim/hamiltonian.hpp"

namespace qcasim {

struct GroundStateResult {
    double energy = 0.0;    // E0, eV
    double gap = 0.0;       // E1 - E0, eV
    std::vector<double> vector;
    int iterations = 0;     // 0 on the dense path
    double residual = 0.0;  // |Hv - E0 v|, eV
    bool degenerate = false;
};

struct SolverOptions {
    double tol = 1e-10;                  // residual tolerance, eV
    int max_iter = 2000;
    int dense_threshold = 10;            // M <= this: full dense diagonalization
    double degeneracy_threshold = 1e-9;  // gap below this sets the degenerate flag
};

// y = A x for a symmetric operator of dimension dim().
using MatVec = std::function<void(const std::vector<double>&, std::vector<double>&)>;

// Lanczos with full reorthogonalization and a fixed deterministic start
// vector (uniform plus a small per-index perturbation to break symmetry).
// Iterates until the residual bounds of the two lowest Ritz pairs drop
// below tol, or the Krylov space exhausts the full dimension.
GroundStateResult lanczos_ground(std::size_t dim, const MatVec& matvec,
                                 const SolverOptions& opts = {});

// Dense path for M <= dense_threshold, Lanczos otherwise. Deterministic
// across runs and thread counts.
GroundStateResult ground_state(const HamiltonianModel& h, const SolverOptions& opts = {});

// Full sorted spectrum from the dense path; M <= 10.
std::vector<double> spectrum_small(const HamiltonianModel& h);

}  // namespace qcasim
