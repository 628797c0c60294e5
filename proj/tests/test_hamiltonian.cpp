#include <doctest.h>

#include <cmath>

#include "qcasim/eigensolver.hpp"
#include "qcasim/hamiltonian.hpp"

using namespace qcasim;

namespace {

// Brute-force diagonal oracle: total electrostatic energy of basis word w
// plus field and chemical detunings, computed with plain charge sums.
double brute_diagonal(const CircuitLayout& layout, const FieldVector& field, std::size_t w) {
    const std::vector<int> devices = layout.device_indices();
    const double k = layout.params.constants.k_eff();

    auto charges = [&](const MoleculeSpec& m, int state) {
        return std::vector<std::pair<Vec3, double>>{{m.active_dot(state), -1.0},
                                                    {m.null_dot(), +1.0}};
    };
    auto cross = [&](const auto& c1, const auto& c2) {
        double e = 0.0;
        for (const auto& [p1, q1] : c1)
            for (const auto& [p2, q2] : c2) e += k * q1 * q2 / (p1 - p2).norm();
        return e;
    };

    double e = 0.0;
    for (std::size_t j = 0; j < devices.size(); ++j) {
        const auto cj = charges(layout.molecules[devices[j]], (w >> j) & 1);
        for (std::size_t kk = j + 1; kk < devices.size(); ++kk)
            e += cross(cj, charges(layout.molecules[devices[kk]], (w >> kk) & 1));
        for (const MoleculeSpec& mol : layout.molecules)
            if (mol.role == Role::Driver) e += cross(cj, charges(mol, mol.driver_bit));
        const double delta = detuning_from_field(layout.molecules[devices[j]], field) +
                             layout.params.cell.delta_o;
        e += ((w >> j) & 1 ? 0.5 : -0.5) * delta;
    }
    return e;
}

}  // namespace

TEST_CASE("assemble matches the brute-force diagonal oracle") {
    const CircuitLayout wire = build_wire(2, 1, false);
    const FieldVector field{0.1, -0.2, 0.0};
    const HamiltonianModel h = assemble(wire, field);

    REQUIRE(h.m == 4);
    REQUIRE(h.dim() == 16);
    CHECK(h.gamma_eff == doctest::Approx(0.010));

    // The stored diagonal is the oracle diagonal up to a uniform shift that
    // puts the minimum at exactly zero.
    double lo = 1e300;
    for (std::size_t w = 0; w < h.dim(); ++w) lo = std::min(lo, brute_diagonal(wire, field, w));
    for (std::size_t w = 0; w < h.dim(); ++w)
        CHECK(h.diagonal[w] == doctest::Approx(brute_diagonal(wire, field, w) - lo).epsilon(1e-12));
    CHECK(*std::min_element(h.diagonal.begin(), h.diagonal.end()) == doctest::Approx(0.0));
}

TEST_CASE("assemble honors delta_o") {
    CircuitLayout wire = build_wire(1, 0, false);
    wire.params.cell.delta_o = 0.03;
    const HamiltonianModel h = assemble(wire, {});
    double lo = 1e300;
    for (std::size_t w = 0; w < h.dim(); ++w)
        lo = std::min(lo, brute_diagonal(wire, {}, w));
    for (std::size_t w = 0; w < h.dim(); ++w)
        CHECK(h.diagonal[w] == doctest::Approx(brute_diagonal(wire, {}, w) - lo).epsilon(1e-12));
}

TEST_CASE("assemble rejects empty layouts") {
    CircuitLayout empty = build_wire(1, 0, false);
    for (MoleculeSpec& m : empty.molecules) m.role = Role::Driver;
    CHECK_THROWS_AS(assemble(empty, {}), LayoutError);
}

TEST_CASE("apply agrees with the dense matrix") {
    const CircuitLayout wire = build_wire(3, 0, false);
    const HamiltonianModel h = assemble(wire, {0.05, 0.1, 0.0});
    const Eigen::MatrixXd mat = dense_matrix(h);

    // The dense matrix is symmetric with -gamma_eff on single-bit flips.
    CHECK((mat - mat.transpose()).norm() == doctest::Approx(0.0));
    CHECK(mat(0, 1) == doctest::Approx(-h.gamma_eff));
    CHECK(mat(0, 3) == doctest::Approx(0.0));  // two-bit flip

    std::vector<double> v(h.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.3 * i + 0.1);
    const std::vector<double> hv = qcasim::apply(h, v);

    Eigen::VectorXd ev(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) ev[static_cast<Eigen::Index>(i)] = v[i];
    const Eigen::VectorXd ref = mat * ev;
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(hv[i] == doctest::Approx(ref[static_cast<Eigen::Index>(i)]).epsilon(1e-12));
}

TEST_CASE("apply checks dimensions") {
    const HamiltonianModel h = assemble(build_wire(1, 0, false), {});
    std::vector<double> wrong(3, 1.0);
    CHECK_THROWS_AS(qcasim::apply(h, wrong), std::invalid_argument);
}

TEST_CASE("dense_matrix memory guard") {
    HamiltonianModel h;
    h.m = 13;
    h.diagonal.assign(std::size_t{1} << 13, 0.0);
    CHECK_THROWS_AS(dense_matrix(h), CapacityError);
}

TEST_CASE("two-cell pair ground state follows the two-level closed form") {
    // One device pair driven by one driver pair reduces per cell to a
    // two-level system; with the driver aligned the exact M = 1 analogy is
    // E = -sqrt(d^2 + gamma^2) per decoupled mode. Instead of modeling that
    // analytically, check a robust closed-form limit: with gamma_eff -> 0 the
    // ground state is the classical minimum and the pair polarization is +-1.
    CircuitLayout wire = build_wire(1, 1, false);
    wire.params.cell.gamma_eff = 1e-9;
    const HamiltonianModel h = assemble(wire, {});
    const GroundStateResult gs = ground_state(h);
    // Driver bit 1: cells order as (state 1, state 0), basis word 01.
    CHECK(std::abs(gs.vector[1]) == doctest::Approx(1.0).epsilon(1e-8));
}
