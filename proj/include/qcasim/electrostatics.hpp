#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qcasim/core.hpp"
#include "qcasim/layout.hpp"

namespace qcasim {

struct PointCharge {
    Vec3 pos;  // nm
    double q;  // units of q_e
};

using ChargeConfig = std::vector<PointCharge>;

// Charge configuration of a molecule in an active state s: the mobile
// electron (-1) at dot s, the neutralizing hole (+1) at the null dot.
ChargeConfig molecule_charges(const MoleculeSpec& m, int state);

// Driver configuration, frozen by driver_bit.
ChargeConfig driver_charges(const MoleculeSpec& m);

// Sum over all cross pairs of coulomb_k q_i q_j / (epsilon_r r_ij), eV.
// Throws SingularGeometryError on coincident charge positions.
double coulomb_energy(const ChargeConfig& c1, const ChargeConfig& c2,
                      const PhysicalConstants& pc = {});

// E_k = coulomb_k (1 - 1/sqrt2) / (epsilon_r a), eV.
double kink_energy(double a, const PhysicalConstants& pc = {});

// State-dependent interaction energies for a layout: the four energies
// U_jk(s_j, s_k) for every unordered device pair (j, k), plus the driver
// potential d_j(s_j) for every device cell. A state-independent constant
// (null-null, driver-driver terms) is dropped uniformly.
struct InteractionTable {
    int m = 0;  // device cell count

    std::vector<std::pair<int, int>> cell_pairs;        // (j, k), j < k, device cell indices
    std::vector<std::array<double, 4>> pair_energy;     // aligned with cell_pairs
    std::vector<std::array<double, 2>> driver_potential;  // [cell][state]

    double u(std::size_t p, int sj, int sk) const { return pair_energy[p][2 * sj + sk]; }
    double d(int cell, int state) const { return driver_potential[cell][state]; }
};

InteractionTable pairwise_interaction_table(const CircuitLayout& layout);

}  // namespace qcasim
