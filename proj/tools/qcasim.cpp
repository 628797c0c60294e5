#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcasim/sweep.hpp"
#include "qcasim/three_state.hpp"

namespace {

using namespace qcasim;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << data;
}

AxisRange parse_range(const std::string& text) {
    AxisRange r;
    char sep1 = 0, sep2 = 0;
    std::istringstream ss(text);
    if (!(ss >> r.min >> sep1 >> r.max >> sep2 >> r.steps) || sep1 != ':' || sep2 != ':' ||
        r.steps < 1 || r.min > r.max)
        throw CLI::ValidationError("range", "expected MIN:MAX:STEPS with MIN <= MAX, STEPS >= 1");
    return r;
}

struct BuildArgs {
    std::string circuit;
    bool rotated = false;
    std::string bits = "0";
    int wire_pairs = 3;
    LayoutParams params;
    std::string output;
};

CircuitLayout build_from_args(const BuildArgs& args) {
    std::vector<int> bits;
    for (char c : args.bits) {
        if (c != '0' && c != '1')
            throw CLI::ValidationError("--bits", "bits must be a string of 0s and 1s");
        bits.push_back(c - '0');
    }
    if (args.circuit == "majority") {
        if (bits.size() != 3)
            throw CLI::ValidationError("--bits", "majority needs exactly 3 bits (e.g. 101)");
        return build_majority(bits[0], bits[1], bits[2], args.rotated, args.params);
    }
    if (bits.size() != 1)
        throw CLI::ValidationError("--bits", args.circuit + " takes a single input bit");
    if (args.circuit == "wire") return build_wire(args.wire_pairs, bits[0], args.rotated, args.params);
    if (args.circuit == "fanin") return build_fan_in(bits[0], args.rotated, args.params);
    if (args.circuit == "fanout") return build_fan_out(bits[0], args.rotated, args.params);
    if (args.circuit == "inverter") return build_inverter(bits[0], args.rotated, args.params);
    throw CLI::ValidationError("circuit", "unknown circuit " + args.circuit);
}

int run_validate() {
    const LayoutParams defaults;
    const double eo = field_scale_Eo(defaults.a, defaults.constants);
    std::printf("E_o(a = %g nm)            = %.4f V/nm\n", defaults.a, eo);

    ThreeStateParams ts;
    ts.v_c = clock_interaction(-10.0 * eo, defaults.h);
    const double geff = gamma_eff(ts.v_c, ts.e_a, ts.gamma);
    std::printf("gamma_eff (E_z = -10 E_o) = %.2f meV\n", 1e3 * geff);
    const double pn = null_population(ts);
    std::printf("null population <P_N>     = %.4f (bound 0.02)\n", pn);

    // Two-state vs three-state cross-check on a two-pair wire (M = 4).
    const CircuitLayout wire = build_wire(2, 1, false);
    const HamiltonianModel h2 = assemble(wire, {});
    const GroundStateResult gs2 = ground_state(h2);
    const ThreeStateCircuitResult gs3 = three_state_circuit_ground_state(wire, {}, ts);
    double max_dev = 0.0;
    for (int k = 0; k < wire.device_count(); ++k)
        max_dev = std::max(max_dev,
                           std::abs(cell_polarization(gs2.vector, wire.device_count(), k) -
                                    gs3.cell_polarization[k]));
    double max_null = 0.0;
    for (double n : gs3.cell_null_population) max_null = std::max(max_null, n);
    std::printf("two/three-state |dP| (M=4) = %.4f (bound 0.03)\n", max_dev);
    std::printf("circuit null population    = %.4f\n", max_null);

    bool ok = true;
    ok &= eo > 0.407 && eo < 0.427;
    ok &= std::abs(1e3 * geff - 9.1) <= 0.7;
    ok &= pn <= 0.02;
    ok &= max_dev <= 0.03;
    std::printf("%s\n", ok ? "VALIDATION PASSED" : "VALIDATION FAILED");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground-state simulator for clocked molecular QCA circuits in applied fields"};
    app.require_subcommand(1);

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "Build a stock circuit layout file");
    build->set_help_flag("--help", "Print this help message and exit");  // frees --h
    build->add_option("circuit", build_args.circuit, "wire|fanin|fanout|inverter|majority")
        ->required()
        ->check(CLI::IsMember({"wire", "fanin", "fanout", "inverter", "majority"}));
    build->add_flag("--rotated", build_args.rotated, "Rotate all cell pairs by 90 degrees");
    build->add_option("--bits", build_args.bits, "Input bit(s), e.g. 1 or 101 for majority");
    build->add_option("--pairs", build_args.wire_pairs, "Device pairs in a wire (default 3)");
    build->add_option("--pitch", build_args.params.pitch, "Pair pitch, nm (default 2.4)");
    build->add_option("--a", build_args.params.a, "Active-dot separation, nm (default 1)");
    build->add_option("--h", build_args.params.h, "Active-dot elevation, nm (default 0.5)");
    build->add_option("--gamma-eff", build_args.params.cell.gamma_eff,
                      "Effective tunneling energy, eV (default 0.01)");
    build->add_option("-o,--output", build_args.output, "Layout file to write")->required();

    std::string sweep_layout, sweep_out, sweep_units = "eo";
    std::string ex_range = "0:0:1", ey_range = "0:0:1";
    int sweep_threads = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "Field sweep over a layout, CSV output");
    sweep->add_option("-l,--layout", sweep_layout, "Layout file")->required();
    sweep->add_option("--ex", ex_range, "E_x range MIN:MAX:STEPS");
    sweep->add_option("--ey", ey_range, "E_y range MIN:MAX:STEPS");
    sweep->add_option("--units", sweep_units, "eo (E_o-relative, default) or abs (V/nm)")
        ->check(CLI::IsMember({"eo", "abs"}));
    sweep->add_option("--threads", sweep_threads, "Worker threads (default 1)");
    sweep->add_option("-o,--output", sweep_out, "CSV file to write")->required();

    bool tt_rotated = false;
    double tt_ex = 0.0, tt_ey = 0.0;
    CLI::App* truth = app.add_subcommand("truth-table",
                                         "Majority response to all 8 input configurations");
    truth->add_flag("--rotated", tt_rotated, "Rotate all cell pairs by 90 degrees");
    truth->add_option("--ex", tt_ex, "E_x in E_o units");
    truth->add_option("--ey", tt_ey, "E_y in E_o units");

    app.add_subcommand("validate", "Three-state oracle cross-checks");

    std::string onset_in, onset_axis = "ey";
    double onset_threshold = 0.5;
    CLI::App* onset = app.add_subcommand("onset", "Failure onset from a 1-D sweep CSV");
    onset->add_option("-i,--input", onset_in, "Sweep CSV file")->required();
    onset->add_option("--axis", onset_axis, "ex or ey")->check(CLI::IsMember({"ex", "ey"}));
    onset->add_option("--threshold", onset_threshold, "Fraction of |p_out(0)| (default 0.5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }

    try {
        if (build->parsed()) {
            write_file(build_args.output, save_layout(build_from_args(build_args)));
            return 0;
        }
        if (sweep->parsed()) {
            SweepSpec spec;
            spec.ex = parse_range(ex_range);
            spec.ey = parse_range(ey_range);
            spec.units = sweep_units == "abs" ? FieldUnits::Absolute : FieldUnits::EoRelative;
            spec.threads = sweep_threads;
            const CircuitLayout layout = load_layout(read_file(sweep_layout));
            write_file(sweep_out, sweep_to_csv(run_sweep(layout, spec)));
            return 0;
        }
        if (truth->parsed()) {
            const auto rows = majority_truth_table(tt_rotated, tt_ex, tt_ey);
            int passed = 0;
            std::printf("A B C  M  p_out      result\n");
            for (const TruthRow& r : rows) {
                const int expected = r.a + r.b + r.c >= 2 ? 1 : 0;
                std::printf("%d %d %d  %d  % .6f  %s\n", r.a, r.b, r.c, expected, r.p_out,
                            r.solver_error ? "ERROR" : r.pass ? "PASS" : "FAIL");
                passed += r.pass;
            }
            std::printf("%d/8 PASS\n", passed);
            return passed == 8 ? 0 : 1;
        }
        if (app.get_subcommand("validate")->parsed()) return run_validate();
        if (onset->parsed()) {
            const SweepResult res = sweep_from_csv(read_file(onset_in));
            const OnsetResult r = failure_onset(res, onset_axis == "ex" ? 'x' : 'y',
                                                onset_threshold);
            if (r.excluded_degenerate > 0)
                std::fprintf(stderr, "warning: %d degenerate/errored rows excluded\n",
                             r.excluded_degenerate);
            std::printf("onset_positive_Eo %s\n",
                        r.positive ? std::to_string(*r.positive).c_str() : "none");
            std::printf("onset_negative_Eo %s\n",
                        r.negative ? std::to_string(*r.negative).c_str() : "none");
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
