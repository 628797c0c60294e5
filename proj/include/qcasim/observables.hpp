#pragma once

#include <vector>

#include "qcasim/layout.hpp"

namespace qcasim {

struct PolarizationReport {
    std::vector<double> per_cell;  // <sigma_z> per device cell, in [-1, 1]
    std::vector<double> per_pair;  // one entry per device pair, pair_id order
    double output = 0.0;           // mean over output-flagged pairs
    bool degenerate = false;
};

// <sigma_z> of cell k: sum_w v_w^2 (+1 if bit k of w set, else -1).
double cell_polarization(const std::vector<double>& v, int m, int k);

// P_pair = s (P_first - P_second) / 2. With the builder handedness
// convention a driver pair encoding bit 1 reports +1.
double pair_polarization(double p_first, double p_second, double sign);

// Connected correlator <sz_j sz_k> - <sz_j><sz_k>, in [-1, 1].
double pair_correlation(const std::vector<double>& v, int m, int j, int k);

PolarizationReport compute_report(const CircuitLayout& layout, const std::vector<double>& v,
                                  bool degenerate = false);

// Mean of P_pair over all output-flagged pairs; throws if none designated.
double output_polarization(const CircuitLayout& layout, const PolarizationReport& report);

}  // namespace qcasim
