#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcasim/eigensolver.hpp"
#include "qcasim/layout.hpp"
#include "qcasim/observables.hpp"

namespace qcasim {

enum class FieldUnits { EoRelative, Absolute };

struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    double value(int i) const {
        return steps <= 1 ? min : min + (max - min) * i / (steps - 1);
    }
};

struct SweepSpec {
    AxisRange ex;
    AxisRange ey;
    FieldUnits units = FieldUnits::EoRelative;
    int threads = 1;
    SolverOptions solver;
};

struct SweepRow {
    double ex_over_eo = 0.0;
    double ey_over_eo = 0.0;
    double ground_energy = 0.0;  // eV
    double gap = 0.0;            // eV
    std::vector<double> p_pair;  // per device pair, pair_id order
    double p_out = 0.0;
    bool degenerate = false;
    int iterations = 0;
    bool solver_error = false;
    std::string error_message;
};

struct SweepResult {
    int ex_steps = 1;
    int ey_steps = 1;
    int n_pairs = 0;
    std::vector<SweepRow> rows;  // row-major: ex outer, ey inner
};

// One ground-state solve per grid point. Solver failures are recorded
// per row, not fatal. Deterministic: rows are stored in index order
// regardless of how the work is scheduled across threads.
SweepResult run_sweep(const CircuitLayout& layout, const SweepSpec& spec);

// CSV with header ex_over_Eo,ey_over_Eo,e0_eV,gap_eV,p_pair_1..N,p_out,
// degenerate,iters; 12 significant digits, LF line endings. Byte-identical
// across repeated runs and thread counts.
std::string sweep_to_csv(const SweepResult& result);
SweepResult sweep_from_csv(const std::string& text);

struct OnsetResult {
    std::optional<double> positive;  // |field| of the first crossing, E_o units
    std::optional<double> negative;
    int excluded_degenerate = 0;
};

// Smallest |field| per sign direction at which |p_out| drops below
// threshold * |p_out(0)|, linearly interpolated between grid points.
// Requires a 1-D sweep along 'x' or 'y'.
OnsetResult failure_onset(const SweepResult& result, char axis, double threshold = 0.5);

struct TruthRow {
    int a = 0, b = 0, c = 0;
    double p_out = 0.0;
    bool pass = false;
    bool solver_error = false;
};

// All 2^3 majority input configurations at one field point (E_o units).
// pass iff sign(p_out) encodes M(A,B,C) and |p_out| >= 0.5.
std::vector<TruthRow> majority_truth_table(bool rotated, double ex_over_eo, double ey_over_eo,
                                           const LayoutParams& params = {});

}  // namespace qcasim
