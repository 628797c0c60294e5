#include <doctest.h>

#include <cmath>

#include "qcasim/eigensolver.hpp"
#include "qcasim/observables.hpp"

using namespace qcasim;

TEST_CASE("cell_polarization on hand-built states") {
    // M = 2, basis |x2 x1>: word 0 = 00, 1 = 01, 2 = 10, 3 = 11.
    std::vector<double> v(4, 0.0);

    v[3] = 1.0;  // both cells in state 1
    CHECK(cell_polarization(v, 2, 0) == doctest::Approx(1.0));
    CHECK(cell_polarization(v, 2, 1) == doctest::Approx(1.0));

    v = {0.0, 1.0, 0.0, 0.0};  // cell 0 in state 1, cell 1 in state 0
    CHECK(cell_polarization(v, 2, 0) == doctest::Approx(1.0));
    CHECK(cell_polarization(v, 2, 1) == doctest::Approx(-1.0));

    // Equal superposition: zero polarization everywhere.
    v = {0.5, 0.5, 0.5, 0.5};
    CHECK(cell_polarization(v, 2, 0) == doctest::Approx(0.0));
    CHECK(cell_polarization(v, 2, 1) == doctest::Approx(0.0));

    CHECK_THROWS_AS(cell_polarization(v, 2, 2), std::out_of_range);
    CHECK_THROWS_AS(cell_polarization(v, 3, 0), std::invalid_argument);
}

TEST_CASE("pair_polarization and the driver convention") {
    CHECK(pair_polarization(1.0, -1.0, 1.0) == doctest::Approx(1.0));
    CHECK(pair_polarization(-1.0, 1.0, 1.0) == doctest::Approx(-1.0));
    CHECK(pair_polarization(1.0, -1.0, -1.0) == doctest::Approx(-1.0));
    CHECK(pair_polarization(1.0, 1.0, 1.0) == doctest::Approx(0.0));  // kink
}

TEST_CASE("pair_correlation") {
    // Product state: connected correlator vanishes.
    std::vector<double> v = {0.0, 1.0, 0.0, 0.0};
    CHECK(pair_correlation(v, 2, 0, 1) == doctest::Approx(0.0));

    // Bell-like state (|00> + |11>)/sqrt2: maximal connected correlation.
    const double r = 1.0 / std::sqrt(2.0);
    v = {r, 0.0, 0.0, r};
    CHECK(pair_correlation(v, 2, 0, 1) == doctest::Approx(1.0));

    // Anti-correlated partner.
    v = {0.0, r, r, 0.0};
    CHECK(pair_correlation(v, 2, 0, 1) == doctest::Approx(-1.0));

    CHECK_THROWS_AS(pair_correlation(v, 2, 1, 1), std::invalid_argument);
}

TEST_CASE("compute_report ties cells to pairs") {
    const CircuitLayout wire = build_wire(2, 1, false);
    const GroundStateResult gs = ground_state(assemble(wire, {}));
    const PolarizationReport report = compute_report(wire, gs.vector, gs.degenerate);

    REQUIRE(report.per_cell.size() == 4);
    REQUIRE(report.per_pair.size() == 2);

    // Driver bit 1 copies down the wire: each pair near +1, members opposed.
    for (double p : report.per_pair) CHECK(p == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(report.per_cell[0] == doctest::Approx(-report.per_cell[1]).epsilon(1e-2));
    CHECK(report.output == doctest::Approx(report.per_pair[1]));
    CHECK_FALSE(report.degenerate);
}

TEST_CASE("output_polarization averages output pairs and requires one") {
    const CircuitLayout fan = build_fan_out(0, false);
    const GroundStateResult gs = ground_state(assemble(fan, {}));
    const PolarizationReport report = compute_report(fan, gs.vector, gs.degenerate);

    const auto device_pairs = fan.device_pairs();
    double mean = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < device_pairs.size(); ++i)
        if (device_pairs[i].is_output) {
            mean += report.per_pair[i];
            ++n;
        }
    REQUIRE(n == 2);
    CHECK(output_polarization(fan, report) == doctest::Approx(mean / n));

    // A layout without outputs refuses to report one.
    CircuitLayout no_out = fan;
    for (MoleculeSpec& m : no_out.molecules) m.is_output = false;
    const PolarizationReport r2 = compute_report(no_out, gs.vector, gs.degenerate);
    CHECK_THROWS_AS(output_polarization(no_out, r2), LayoutError);

    PolarizationReport mismatched;
    CHECK_THROWS_AS(output_polarization(fan, mismatched), std::invalid_argument);
}
