#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qcasim/eigensolver.hpp"
#include "qcasim/layout.hpp"

namespace qcasim {

// Full three-state cell parameters. v_c is the clock interaction -q_e E.h
// (helper below); e_a the null-dot affinity; v_n a neighbor null bias.
struct ThreeStateParams {
    double gamma = 0.100;  // null <-> active tunneling, eV
    double e_a = 1.0;      // null-dot affinity, eV
    double v_c = 0.0;      // clock interaction, eV
    double v_n = 0.0;      // neighbor null bias, eV
    double delta = 0.0;    // active-state detuning, eV
};

// V_c = -q_e E_z h for h^ = h z^.
inline double clock_interaction(double ez, double h) { return -ez * h; }

// Ordered basis (|0>, |1>, |N>): diagonal (-delta/2, +delta/2, v_c + v_n - e_a),
// -gamma coupling |N> to each active state, no direct 0 <-> 1 element.
Eigen::Matrix3d build_three_state_hamiltonian(const ThreeStateParams& p);

// Half the avoided-crossing energy of the delta = 0 three-state cell:
// [sqrt((v_c - e_a)^2 + 8 gamma^2) - (v_c - e_a)] / 4.
double gamma_eff(double v_c, double e_a, double gamma);

// Ground-state null-dot population <P_N> of an isolated cell, in [0, 1].
// Sets `degenerate` (if given) when the ground gap is below 1e-12 eV.
double null_population(const ThreeStateParams& p, bool* degenerate = nullptr);

struct ThreeStateCircuitResult {
    double energy = 0.0;
    double gap = 0.0;
    std::vector<double> vector;           // 3^M amplitudes, digit k = state of cell k (2 = N)
    std::vector<double> cell_polarization;  // <Z> per device cell
    std::vector<double> cell_null_population;
    bool degenerate = false;
};

// Exact 3^M ground state: per-cell three-state terms plus the electrostatic
// interaction diagonal. A cell in state N is electrostatically neutral
// (electron and hole co-located on the null dot). M <= 8 enforced.
// Only the in-plane field components enter the detunings; the clock lives
// in p.v_c.
ThreeStateCircuitResult three_state_circuit_ground_state(const CircuitLayout& layout,
                                                         const FieldVector& field,
                                                         const ThreeStateParams& p);

}  // namespace qcasim
