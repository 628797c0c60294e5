#include "qcasim/hamiltonian.hpp"

#include <algorithm>
#include <iostream>
#include <limits>

namespace qcasim {

HamiltonianModel assemble(const CircuitLayout& layout, const FieldVector& field,
                          const TwoStateParams& p) {
    const std::vector<int> devices = layout.device_indices();
    const int m = static_cast<int>(devices.size());
    if (m == 0) throw LayoutError("assemble: layout has no device molecules");
    if (m > 14)
        std::cerr << "qcasim: warning: M = " << m << " exceeds the soft cap of 14 ("
                  << (std::size_t{1} << m) << "-dimensional state space)\n";
    if (m > 26) throw CapacityError("assemble: M > 26 is not supported");

    const InteractionTable table = pairwise_interaction_table(layout);

    std::vector<double> half_delta(m);
    for (int j = 0; j < m; ++j)
        half_delta[j] =
            0.5 * (detuning_from_field(layout.molecules[devices[j]], field) + p.delta_o);

    HamiltonianModel h;
    h.m = m;
    h.gamma_eff = p.gamma_eff;
    const std::size_t dim = std::size_t{1} << m;
    h.diagonal.assign(dim, 0.0);

    for (std::size_t w = 0; w < dim; ++w) {
        double e = 0.0;
        for (std::size_t idx = 0; idx < table.cell_pairs.size(); ++idx) {
            const auto [j, k] = table.cell_pairs[idx];
            e += table.u(idx, (w >> j) & 1, (w >> k) & 1);
        }
        for (int j = 0; j < m; ++j) {
            const int bit = (w >> j) & 1;
            e += table.d(j, bit);
            e += bit ? half_delta[j] : -half_delta[j];
        }
        h.diagonal[w] = e;
    }

    const double lo = *std::min_element(h.diagonal.begin(), h.diagonal.end());
    for (double& d : h.diagonal) d -= lo;
    return h;
}

HamiltonianModel assemble(const CircuitLayout& layout, const FieldVector& field) {
    return assemble(layout, field, layout.params.cell);
}

void apply(const HamiltonianModel& h, const std::vector<double>& v, std::vector<double>& out) {
    const std::size_t dim = h.dim();
    if (v.size() != dim) throw std::invalid_argument("apply: dimension mismatch");
    out.resize(dim);
    for (std::size_t w = 0; w < dim; ++w) {
        double acc = h.diagonal[w] * v[w];
        for (int k = 0; k < h.m; ++k) acc -= h.gamma_eff * v[w ^ (std::size_t{1} << k)];
        out[w] = acc;
    }
}

std::vector<double> apply(const HamiltonianModel& h, const std::vector<double>& v) {
    std::vector<double> out;
    apply(h, v, out);
    return out;
}

Eigen::MatrixXd dense_matrix(const HamiltonianModel& h) {
    if (h.m > 12) throw CapacityError("dense_matrix: M > 12 exceeds the dense memory guard");
    const auto dim = static_cast<Eigen::Index>(h.dim());
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index w = 0; w < dim; ++w) {
        mat(w, w) = h.diagonal[w];
        for (int k = 0; k < h.m; ++k)
            mat(w ^ (Eigen::Index{1} << k), w) = -h.gamma_eff;
    }
    return mat;
}

}  // namespace qcasim
