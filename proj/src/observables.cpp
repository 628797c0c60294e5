#include "qcasim/observables.hpp"

namespace qcasim {

namespace {

void check_cell(const std::vector<double>& v, int m, int k) {
    if (m < 1 || v.size() != (std::size_t{1} << m))
        throw std::invalid_argument("state vector length does not match cell count");
    if (k < 0 || k >= m) throw std::out_of_range("cell index out of range");
}

}  // namespace

double cell_polarization(const std::vector<double>& v, int m, int k) {
    check_cell(v, m, k);
    double p = 0.0;
    for (std::size_t w = 0; w < v.size(); ++w)
        p += ((w >> k) & 1 ? 1.0 : -1.0) * v[w] * v[w];
    return p;
}

double pair_polarization(double p_first, double p_second, double sign) {
    return sign * 0.5 * (p_first - p_second);
}

double pair_correlation(const std::vector<double>& v, int m, int j, int k) {
    check_cell(v, m, j);
    check_cell(v, m, k);
    if (j == k) throw std::invalid_argument("pair_correlation: cell indices must differ");
    double zz = 0.0;
    for (std::size_t w = 0; w < v.size(); ++w) {
        const double zj = (w >> j) & 1 ? 1.0 : -1.0;
        const double zk = (w >> k) & 1 ? 1.0 : -1.0;
        zz += zj * zk * v[w] * v[w];
    }
    return zz - cell_polarization(v, m, j) * cell_polarization(v, m, k);
}

PolarizationReport compute_report(const CircuitLayout& layout, const std::vector<double>& v,
                                  bool degenerate) {
    const int m = layout.device_count();
    PolarizationReport report;
    report.degenerate = degenerate;
    report.per_cell.resize(m);
    for (int k = 0; k < m; ++k) report.per_cell[k] = cell_polarization(v, m, k);
    for (const PairRef& p : layout.device_pairs())
        report.per_pair.push_back(pair_polarization(report.per_cell[p.device_cell_first],
                                                    report.per_cell[p.device_cell_second],
                                                    p.sign));
    if (!layout.output_pairs().empty()) report.output = output_polarization(layout, report);
    return report;
}

double output_polarization(const CircuitLayout& layout, const PolarizationReport& report) {
    const std::vector<PairRef> device_pairs = layout.device_pairs();
    if (report.per_pair.size() != device_pairs.size())
        throw std::invalid_argument("output_polarization: report does not match layout");
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < device_pairs.size(); ++i) {
        if (device_pairs[i].is_output) {
            sum += report.per_pair[i];
            ++n;
        }
    }
    if (n == 0) throw LayoutError("output_polarization: no output pair designated");
    return sum / n;
}

}  // namespace qcasim
