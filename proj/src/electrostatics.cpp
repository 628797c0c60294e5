#include "qcasim/electrostatics.hpp"

namespace qcasim {

ChargeConfig molecule_charges(const MoleculeSpec& m, int state) {
    if (state != 0 && state != 1)
        throw std::invalid_argument("molecule_charges: state must be 0 or 1");
    return {{m.active_dot(state), -1.0}, {m.null_dot(), +1.0}};
}

ChargeConfig driver_charges(const MoleculeSpec& m) {
    if (m.role != Role::Driver)
        throw std::invalid_argument("driver_charges: molecule is not a driver");
    return molecule_charges(m, m.driver_bit);
}

double coulomb_energy(const ChargeConfig& c1, const ChargeConfig& c2,
                      const PhysicalConstants& pc) {
    const double k = pc.k_eff();
    double e = 0.0;
    for (const PointCharge& a : c1) {
        for (const PointCharge& b : c2) {
            const double r = (a.pos - b.pos).norm();
            if (r < 1e-12)
                throw SingularGeometryError("coulomb_energy: coincident charge positions");
            e += k * a.q * b.q / r;
        }
    }
    return e;
}

double kink_energy(double a, const PhysicalConstants& pc) {
    if (!(a > 0.0))
        throw InvalidGeometryError("kink_energy: dot separation a must be positive");
    return pc.k_eff() * (1.0 - 1.0 / std::sqrt(2.0)) / a;
}

InteractionTable pairwise_interaction_table(const CircuitLayout& layout) {
    const PhysicalConstants& pc = layout.params.constants;
    const std::vector<int> devices = layout.device_indices();
    const int m = static_cast<int>(devices.size());

    // Both state configurations of every device cell, up front.
    std::vector<std::array<ChargeConfig, 2>> configs(m);
    for (int j = 0; j < m; ++j)
        configs[j] = {molecule_charges(layout.molecules[devices[j]], 0),
                      molecule_charges(layout.molecules[devices[j]], 1)};

    std::vector<ChargeConfig> drivers;
    for (const MoleculeSpec& mol : layout.molecules)
        if (mol.role == Role::Driver) drivers.push_back(driver_charges(mol));

    InteractionTable table;
    table.m = m;
    for (int j = 0; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
            table.cell_pairs.emplace_back(j, k);
            std::array<double, 4> u{};
            for (int sj = 0; sj < 2; ++sj)
                for (int sk = 0; sk < 2; ++sk)
                    u[2 * sj + sk] = coulomb_energy(configs[j][sj], configs[k][sk], pc);
            table.pair_energy.push_back(u);
        }
    }
    table.driver_potential.resize(m, {0.0, 0.0});
    for (int j = 0; j < m; ++j)
        for (const ChargeConfig& d : drivers)
            for (int s = 0; s < 2; ++s)
                table.driver_potential[j][s] += coulomb_energy(configs[j][s], d, pc);
    return table;
}

}  // namespace qcasim
