#include "qcasim/three_state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qcasim/electrostatics.hpp"

namespace qcasim {

Eigen::Matrix3d build_three_state_hamiltonian(const ThreeStateParams& p) {
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 0) = -0.5 * p.delta;
    h(1, 1) = +0.5 * p.delta;
    h(2, 2) = p.v_c + p.v_n - p.e_a;
    h(0, 2) = h(2, 0) = -p.gamma;
    h(1, 2) = h(2, 1) = -p.gamma;
    return h;
}

double gamma_eff(double v_c, double e_a, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma_eff: gamma must be positive");
    const double d = v_c - e_a;
    return (std::sqrt(d * d + 8.0 * gamma * gamma) - d) / 4.0;
}

double null_population(const ThreeStateParams& p, bool* degenerate) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(build_three_state_hamiltonian(p));
    if (degenerate) *degenerate = es.eigenvalues()[1] - es.eigenvalues()[0] < 1e-12;
    const double c_n = es.eigenvectors()(2, 0);
    return c_n * c_n;
}

ThreeStateCircuitResult three_state_circuit_ground_state(const CircuitLayout& layout,
                                                         const FieldVector& field,
                                                         const ThreeStateParams& p) {
    const std::vector<int> devices = layout.device_indices();
    const int m = static_cast<int>(devices.size());
    if (m == 0) throw LayoutError("three-state circuit: layout has no device molecules");
    if (m > 8) throw CapacityError("three-state circuit: M > 8 is not feasible (3^M state space)");

    const InteractionTable table = pairwise_interaction_table(layout);

    std::vector<double> half_delta(m);
    for (int j = 0; j < m; ++j)
        half_delta[j] =
            0.5 * (detuning_from_field(layout.molecules[devices[j]], field) + p.delta);

    std::size_t dim = 1;
    std::vector<std::size_t> stride(m);
    for (int j = 0; j < m; ++j) {
        stride[j] = dim;
        dim *= 3;
    }

    const double null_bias = p.v_c + p.v_n - p.e_a;

    // Digit k of a base-3 index is the state of cell k: 0, 1, or 2 (= N).
    // N-state cells are electrostatically neutral, so they drop out of the
    // interaction diagonal entirely.
    std::vector<double> diagonal(dim, 0.0);
    std::vector<int> digits(m);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t rest = i;
        for (int j = 0; j < m; ++j) {
            digits[j] = static_cast<int>(rest % 3);
            rest /= 3;
        }
        double e = 0.0;
        for (std::size_t idx = 0; idx < table.cell_pairs.size(); ++idx) {
            const auto [j, k] = table.cell_pairs[idx];
            if (digits[j] < 2 && digits[k] < 2) e += table.u(idx, digits[j], digits[k]);
        }
        for (int j = 0; j < m; ++j) {
            if (digits[j] < 2) {
                e += table.d(j, digits[j]);
                e += digits[j] == 1 ? half_delta[j] : -half_delta[j];
            } else {
                e += null_bias;
            }
        }
        diagonal[i] = e;
    }
    const double lo = *std::min_element(diagonal.begin(), diagonal.end());
    for (double& d : diagonal) d -= lo;

    auto matvec = [&](const std::vector<double>& v, std::vector<double>& out) {
        out.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            double acc = diagonal[i] * v[i];
            for (int j = 0; j < m; ++j) {
                const int d = static_cast<int>((i / stride[j]) % 3);
                if (d == 2) {
                    acc -= p.gamma * v[i - 2 * stride[j]];  // N -> 0
                    acc -= p.gamma * v[i - stride[j]];      // N -> 1
                } else {
                    acc -= p.gamma * v[i + (2 - d) * stride[j]];  // active -> N
                }
            }
            out[i] = acc;
        }
    };

    const GroundStateResult gs = lanczos_ground(dim, matvec);

    ThreeStateCircuitResult result;
    result.energy = gs.energy;
    result.gap = gs.gap;
    result.vector = gs.vector;
    result.degenerate = gs.degenerate;
    result.cell_polarization.assign(m, 0.0);
    result.cell_null_population.assign(m, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        const double w = gs.vector[i] * gs.vector[i];
        for (int j = 0; j < m; ++j) {
            const int d = static_cast<int>((i / stride[j]) % 3);
            if (d == 2)
                result.cell_null_population[j] += w;
            else
                result.cell_polarization[j] += d == 1 ? w : -w;
        }
    }
    return result;
}

}  // namespace qcasim
