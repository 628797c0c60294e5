#include <doctest.h>

#include <cmath>

#include "qcasim/electrostatics.hpp"

using namespace qcasim;

namespace {

// Independent brute-force oracle: plain double loop over k q_i q_j / r,
// written without any of the library's helpers.
double brute_cross_energy(const ChargeConfig& c1, const ChargeConfig& c2, double k) {
    double e = 0.0;
    for (const auto& a : c1)
        for (const auto& b : c2) {
            const double dx = a.pos.x - b.pos.x;
            const double dy = a.pos.y - b.pos.y;
            const double dz = a.pos.z - b.pos.z;
            e += k * a.q * b.q / std::sqrt(dx * dx + dy * dy + dz * dz);
        }
    return e;
}

MoleculeSpec standard_molecule(double cx, double cy) {
    MoleculeSpec m;
    m.center = {cx, cy, 0.0};
    m.a_vec = {0.0, 1.0, 0.0};
    m.h = 0.5;
    return m;
}

}  // namespace

TEST_CASE("coulomb_energy of two unit charges at 1 nm") {
    const ChargeConfig c1 = {{{0.0, 0.0, 0.0}, 1.0}};
    const ChargeConfig c2 = {{{1.0, 0.0, 0.0}, 1.0}};
    CHECK(coulomb_energy(c1, c2) == doctest::Approx(1.4400).epsilon(1e-14));

    PhysicalConstants screened;
    screened.epsilon_r = 4.0;
    CHECK(coulomb_energy(c1, c2, screened) == doctest::Approx(0.3600).epsilon(1e-14));
}

TEST_CASE("coulomb_energy rejects coincident charges") {
    const ChargeConfig c1 = {{{0.5, 0.5, 0.5}, 1.0}};
    const ChargeConfig c2 = {{{0.5, 0.5, 0.5}, -1.0}};
    CHECK_THROWS_AS(coulomb_energy(c1, c2), SingularGeometryError);
}

TEST_CASE("molecule_charges places the electron and the neutralizing hole") {
    const MoleculeSpec m = standard_molecule(2.0, 3.0);

    for (int s : {0, 1}) {
        const ChargeConfig c = molecule_charges(m, s);
        REQUIRE(c.size() == 2);
        CHECK(c[0].q == -1.0);
        CHECK(c[1].q == +1.0);
        // Hole at the null dot, electron at the chosen active dot.
        CHECK(c[1].pos.x == m.center.x);
        CHECK(c[1].pos.z == 0.0);
        CHECK(c[0].pos.z == doctest::Approx(0.5));
        CHECK(c[0].pos.y == doctest::Approx(3.0 + (s ? 0.5 : -0.5)));
    }
    CHECK_THROWS_AS(molecule_charges(m, 2), std::invalid_argument);
}

TEST_CASE("driver_charges freezes the stored bit") {
    MoleculeSpec m = standard_molecule(0.0, 0.0);
    m.role = Role::Driver;
    m.driver_bit = 1;
    const ChargeConfig c = driver_charges(m);
    CHECK(c[0].pos.y == doctest::Approx(0.5));

    m.role = Role::Device;
    CHECK_THROWS_AS(driver_charges(m), std::invalid_argument);
}

TEST_CASE("kink_energy value and scaling") {
    CHECK(kink_energy(1.0) == doctest::Approx(0.4217662350913716).epsilon(1e-14));
    CHECK(kink_energy(2.0) == doctest::Approx(0.5 * kink_energy(1.0)));
    CHECK_THROWS_AS(kink_energy(0.0), InvalidGeometryError);
    CHECK_THROWS_AS(kink_energy(-1.0), InvalidGeometryError);
}

TEST_CASE("side-by-side pair: aligned states cost one kink energy") {
    // Two molecules at -+a/2 along x, a_vec along y. Brute-force charge sums
    // give U(0,0) = U(1,1) and U(0,1) = U(1,0); the same-state configuration
    // sits exactly kink_energy(a) above the anti-aligned one.
    const MoleculeSpec m1 = standard_molecule(-0.5, 0.0);
    const MoleculeSpec m2 = standard_molecule(+0.5, 0.0);

    double u[2][2];
    for (int s1 : {0, 1})
        for (int s2 : {0, 1})
            u[s1][s2] =
                brute_cross_energy(molecule_charges(m1, s1), molecule_charges(m2, s2), 1.4400);

    CHECK(u[0][0] == doctest::Approx(u[1][1]).epsilon(1e-14));
    CHECK(u[0][1] == doctest::Approx(u[1][0]).epsilon(1e-14));
    CHECK(u[0][0] - u[0][1] == doctest::Approx(kink_energy(1.0)).epsilon(1e-12));

    // Frozen reference values for the standard geometry (a = 1, h = 0.5).
    CHECK(u[0][0] == doctest::Approx(0.5284898469281489).epsilon(1e-13));
    CHECK(u[0][1] == doctest::Approx(0.1067236118367774).epsilon(1e-13));
}

TEST_CASE("pairwise_interaction_table matches the brute-force oracle") {
    const CircuitLayout wire = build_wire(2, 1, false);
    const InteractionTable table = pairwise_interaction_table(wire);
    const double k = wire.params.constants.k_eff();

    REQUIRE(table.m == 4);
    REQUIRE(table.cell_pairs.size() == 6);  // all unordered device pairs

    const std::vector<int> devices = wire.device_indices();
    for (std::size_t p = 0; p < table.cell_pairs.size(); ++p) {
        const auto [j, kk] = table.cell_pairs[p];
        for (int sj : {0, 1})
            for (int sk : {0, 1}) {
                const double ref =
                    brute_cross_energy(molecule_charges(wire.molecules[devices[j]], sj),
                                       molecule_charges(wire.molecules[devices[kk]], sk), k);
                CHECK(table.u(p, sj, sk) == doctest::Approx(ref).epsilon(1e-13));
            }
    }

    // Driver potentials against the same oracle.
    for (int j = 0; j < table.m; ++j)
        for (int s : {0, 1}) {
            double ref = 0.0;
            for (const MoleculeSpec& mol : wire.molecules)
                if (mol.role == Role::Driver)
                    ref += brute_cross_energy(molecule_charges(wire.molecules[devices[j]], s),
                                              driver_charges(mol), k);
            CHECK(table.d(j, s) == doctest::Approx(ref).epsilon(1e-13));
        }
}
