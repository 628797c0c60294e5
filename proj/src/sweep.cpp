#include "qcasim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace qcasim {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

int majority3(int a, int b, int c) { return a + b + c >= 2 ? 1 : 0; }

}  // namespace

SweepResult run_sweep(const CircuitLayout& layout, const SweepSpec& spec) {
    if (spec.ex.steps < 1 || spec.ey.steps < 1)
        throw std::invalid_argument("run_sweep: steps must be >= 1");
    if (spec.ex.min > spec.ex.max || spec.ey.min > spec.ey.max)
        throw std::invalid_argument("run_sweep: range min must not exceed max");
    layout.validate();

    const double eo = field_scale_Eo(layout.params.a, layout.params.constants);
    const double to_field = spec.units == FieldUnits::EoRelative ? eo : 1.0;

    SweepResult result;
    result.ex_steps = spec.ex.steps;
    result.ey_steps = spec.ey.steps;
    result.n_pairs = static_cast<int>(layout.device_pairs().size());
    result.rows.resize(static_cast<std::size_t>(spec.ex.steps) * spec.ey.steps);

    auto solve_point = [&](std::size_t index) {
        const int ix = static_cast<int>(index) / spec.ey.steps;
        const int iy = static_cast<int>(index) % spec.ey.steps;
        FieldVector field;
        field.ex = spec.ex.value(ix) * to_field;
        field.ey = spec.ey.value(iy) * to_field;

        SweepRow row;
        row.ex_over_eo = field.ex / eo;
        row.ey_over_eo = field.ey / eo;
        try {
            const HamiltonianModel h = assemble(layout, field);
            const GroundStateResult gs = ground_state(h, spec.solver);
            const PolarizationReport report = compute_report(layout, gs.vector, gs.degenerate);
            row.ground_energy = gs.energy;
            row.gap = gs.gap;
            row.p_pair = report.per_pair;
            row.p_out = report.output;
            row.degenerate = gs.degenerate;
            row.iterations = gs.iterations;
        } catch (const std::exception& e) {
            const double nan = std::nan("");
            row.solver_error = true;
            row.error_message = e.what();
            row.ground_energy = nan;
            row.gap = nan;
            row.p_pair.assign(result.n_pairs, nan);
            row.p_out = nan;
            row.iterations = -1;
        }
        result.rows[index] = std::move(row);
    };

    const int threads = std::max(1, spec.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < result.rows.size(); ++i) solve_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < result.rows.size();
                     i = next.fetch_add(1))
                    solve_point(i);
            });
        for (auto& t : pool) t.join();
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = "ex_over_Eo,ey_over_Eo,e0_eV,gap_eV";
    for (int i = 1; i <= result.n_pairs; ++i) out += ",p_pair_" + std::to_string(i);
    out += ",p_out,degenerate,iters\n";
    for (const SweepRow& row : result.rows) {
        out += fmt(row.ex_over_eo) + "," + fmt(row.ey_over_eo) + "," + fmt(row.ground_energy) +
               "," + fmt(row.gap);
        for (double p : row.p_pair) out += "," + fmt(p);
        out += "," + fmt(row.p_out) + "," + (row.degenerate ? "1" : "0") + "," +
               std::to_string(row.iterations) + "\n";
    }
    return out;
}

SweepResult sweep_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("sweep_from_csv: empty input");

    int n_cols = 1;
    for (char c : line) n_cols += c == ',';
    const int n_pairs = n_cols - 7;
    if (n_pairs < 0 || line.rfind("ex_over_Eo,", 0) != 0)
        throw std::invalid_argument("sweep_from_csv: unrecognized header");

    SweepResult result;
    result.n_pairs = n_pairs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::string> fields;
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (static_cast<int>(fields.size()) != n_cols)
            throw std::invalid_argument("sweep_from_csv: row with wrong column count");
        SweepRow row;
        row.ex_over_eo = std::stod(fields[0]);
        row.ey_over_eo = std::stod(fields[1]);
        row.ground_energy = std::stod(fields[2]);
        row.gap = std::stod(fields[3]);
        for (int i = 0; i < n_pairs; ++i) row.p_pair.push_back(std::stod(fields[4 + i]));
        row.p_out = std::stod(fields[4 + n_pairs]);
        row.degenerate = fields[5 + n_pairs] == "1";
        row.iterations = std::stoi(fields[6 + n_pairs]);
        row.solver_error = row.iterations < 0 || std::isnan(row.p_out);
        result.rows.push_back(std::move(row));
    }

    // Infer the grid shape from the leading axis values.
    int ey_steps = 0;
    for (const SweepRow& row : result.rows) {
        if (ey_steps > 0 && row.ex_over_eo != result.rows[0].ex_over_eo) break;
        ++ey_steps;
    }
    result.ey_steps = std::max(1, ey_steps);
    result.ex_steps = static_cast<int>(result.rows.size()) / result.ey_steps;
    return result;
}

OnsetResult failure_onset(const SweepResult& result, char axis, double threshold) {
    if (axis != 'x' && axis != 'y')
        throw std::invalid_argument("failure_onset: axis must be 'x' or 'y'");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("failure_onset: threshold must lie in (0, 1)");
    const bool along_x = axis == 'x';
    if ((along_x && result.ey_steps != 1) || (!along_x && result.ex_steps != 1))
        throw std::invalid_argument("failure_onset: requires a 1-D sweep along the chosen axis");

    struct Point {
        double field;
        double p;
    };
    OnsetResult onset;
    std::vector<Point> points;
    for (const SweepRow& row : result.rows) {
        if (row.degenerate || row.solver_error) {
            ++onset.excluded_degenerate;
            continue;
        }
        points.push_back({along_x ? row.ex_over_eo : row.ey_over_eo, row.p_out});
    }
    if (points.empty()) throw std::invalid_argument("failure_onset: no usable rows");
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.field < b.field; });

    // Reference magnitude at the point closest to zero field.
    std::size_t center = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (std::abs(points[i].field) < std::abs(points[center].field)) center = i;
    const double cutoff = threshold * std::abs(points[center].p);

    // The signed p_out is interpolated linearly between grid points; the
    // onset is the first |field| at which |interp(p_out)| reaches the
    // cutoff. A sign flip between neighboring points therefore registers
    // even if |p_out| stays large at every sampled point.
    auto scan = [&](int dir) -> std::optional<double> {
        if (std::abs(points[center].p) < cutoff) return std::abs(points[center].field);
        for (std::size_t step = 1;; ++step) {
            const std::ptrdiff_t prev_i = static_cast<std::ptrdiff_t>(center) + dir * (step - 1);
            const std::ptrdiff_t cur_i = static_cast<std::ptrdiff_t>(center) + dir * step;
            if (cur_i < 0 || cur_i >= static_cast<std::ptrdiff_t>(points.size())) return {};
            const Point& prev = points[prev_i];
            const Point& cur = points[cur_i];
            const bool sign_flip = (prev.p > 0.0) != (cur.p > 0.0);
            if (std::abs(cur.p) < cutoff || sign_flip) {
                const double target = prev.p > 0.0 ? cutoff : -cutoff;
                const double t = (prev.p - target) / (prev.p - cur.p);
                return std::abs(prev.field + t * (cur.field - prev.field));
            }
        }
    };
    onset.positive = scan(+1);
    onset.negative = scan(-1);
    return onset;
}

std::vector<TruthRow> majority_truth_table(bool rotated, double ex_over_eo, double ey_over_eo,
                                           const LayoutParams& params) {
    const double eo = field_scale_Eo(params.a, params.constants);
    FieldVector field;
    field.ex = ex_over_eo * eo;
    field.ey = ey_over_eo * eo;

    std::vector<TruthRow> rows;
    for (int bits = 0; bits < 8; ++bits) {
        TruthRow row;
        row.a = (bits >> 2) & 1;
        row.b = (bits >> 1) & 1;
        row.c = bits & 1;
        try {
            const CircuitLayout layout = build_majority(row.a, row.b, row.c, rotated, params);
            const HamiltonianModel h = assemble(layout, field);
            const GroundStateResult gs = ground_state(h);
            const PolarizationReport report = compute_report(layout, gs.vector, gs.degenerate);
            row.p_out = report.output;
            const int expected = majority3(row.a, row.b, row.c);
            row.pass = std::abs(row.p_out) >= 0.5 && (row.p_out > 0.0 ? 1 : 0) == expected;
        } catch (const std::exception&) {
            row.solver_error = true;
            row.p_out = std::nan("");
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qcasim
