#include "qcasim/eigensolver.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qcasim {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// Deterministic start (and restart) vectors: uniform plus a small per-index
// perturbation that breaks layout symmetries. `seed` distinguishes restarts.
std::vector<double> deterministic_vector(std::size_t dim, int seed) {
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i)
        v[i] = 1.0 + 1e-6 * std::sin(0.7 * static_cast<double>(i) + 0.3 + 1.1 * seed);
    return v;
}

void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
    // Two passes of classical Gram-Schmidt (full reorthogonalization).
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& v : basis) axpy(-dot(v, w), v, w);
}

double true_residual(const MatVec& matvec, const std::vector<double>& v, double energy) {
    std::vector<double> hv(v.size());
    matvec(v, hv);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = hv[i] - energy * v[i];
        s += r * r;
    }
    return std::sqrt(s);
}

}  // namespace

GroundStateResult lanczos_ground(std::size_t dim, const MatVec& matvec,
                                 const SolverOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("lanczos_ground: tol must be positive");
    if (dim == 0) throw std::invalid_argument("lanczos_ground: empty operator");

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;  // beta[j] links basis[j] and basis[j+1]

    std::vector<double> v = deterministic_vector(dim, 0);
    {
        const double n = norm(v);
        for (double& x : v) x /= n;
    }

    const std::size_t max_steps = std::min<std::size_t>(dim, static_cast<std::size_t>(opts.max_iter));
    int restarts = 0;

    Eigen::VectorXd theta;
    Eigen::MatrixXd ritz_y;

    auto solve_tridiag = [&](bool with_vectors) {
        const auto k = static_cast<Eigen::Index>(alpha.size());
        Eigen::VectorXd d(k), e(k > 1 ? k - 1 : 0);
        for (Eigen::Index i = 0; i < k; ++i) d[i] = alpha[i];
        for (Eigen::Index i = 0; i + 1 < k; ++i) e[i] = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(d, e, with_vectors ? Eigen::ComputeEigenvectors
                                                     : Eigen::EigenvaluesOnly);
        theta = es.eigenvalues();
        if (with_vectors) ritz_y = es.eigenvectors();
    };

    std::vector<double> w(dim);
    bool converged = false;
    while (basis.size() < max_steps) {
        basis.push_back(v);
        matvec(v, w);
        const double a = dot(v, w);
        alpha.push_back(a);

        axpy(-a, basis.back(), w);
        if (basis.size() > 1) axpy(-beta.back(), basis[basis.size() - 2], w);
        orthogonalize(w, basis);

        double b = norm(w);
        if (b < 1e-13) {
            // Invariant subspace. Either done, or continue from a fresh
            // deterministic direction (block-diagonal T with beta = 0).
            if (basis.size() >= dim) {
                beta.push_back(0.0);
                break;
            }
            std::vector<double> fresh;
            double fn = 0.0;
            while (fn < 1e-8 && restarts < 32) {
                fresh = deterministic_vector(dim, ++restarts);
                orthogonalize(fresh, basis);
                fn = norm(fresh);
            }
            if (fn < 1e-8) {
                beta.push_back(0.0);
                break;
            }
            for (double& x : fresh) x /= fn;
            beta.push_back(0.0);
            v = std::move(fresh);
        } else {
            beta.push_back(b);
            for (double& x : w) x /= b;
            v = w;
        }

        const std::size_t k = basis.size();
        const std::size_t interval = k < 500 ? 10 : k < 1500 ? 50 : 100;
        if (k >= 2 && (k % interval == 0 || k == max_steps || k == dim)) {
            solve_tridiag(true);
            const double bk = beta.back();
            const auto last = static_cast<Eigen::Index>(k) - 1;
            const double res0 = std::abs(bk * ritz_y(last, 0));
            const double res1 = theta.size() > 1 ? std::abs(bk * ritz_y(last, 1)) : 0.0;
            if ((res0 < opts.tol && res1 < opts.tol) || k == dim) {
                converged = true;
                break;
            }
        }
    }

    solve_tridiag(true);
    if (!converged && basis.size() >= dim) converged = true;

    GroundStateResult result;
    result.energy = theta[0];
    result.gap = theta.size() > 1 ? theta[1] - theta[0] : 0.0;
    result.iterations = static_cast<int>(basis.size());

    result.vector.assign(dim, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j)
        axpy(ritz_y(static_cast<Eigen::Index>(j), 0), basis[j], result.vector);
    const double vn = norm(result.vector);
    for (double& x : result.vector) x /= vn;

    result.residual = true_residual(matvec, result.vector, result.energy);
    result.degenerate = result.gap < opts.degeneracy_threshold;

    if (!converged && result.residual > opts.tol)
        throw ConvergenceError("lanczos_ground: no convergence after " +
                                   std::to_string(basis.size()) + " iterations (residual " +
                                   std::to_string(result.residual) + " eV)",
                               result.residual);
    return result;
}

GroundStateResult ground_state(const HamiltonianModel& h, const SolverOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("ground_state: tol must be positive");
    if (h.m <= opts.dense_threshold) {
        const Eigen::MatrixXd mat = dense_matrix(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
        GroundStateResult result;
        result.energy = es.eigenvalues()[0];
        result.gap = mat.rows() > 1 ? es.eigenvalues()[1] - result.energy : 0.0;
        const Eigen::VectorXd v = es.eigenvectors().col(0);
        result.vector.assign(v.data(), v.data() + v.size());
        result.iterations = 0;
        result.residual = true_residual(
            [&h](const std::vector<double>& x, std::vector<double>& y) { apply(h, x, y); },
            result.vector, result.energy);
        result.degenerate = result.gap < opts.degeneracy_threshold;
        return result;
    }
    return lanczos_ground(
        h.dim(),
        [&h](const std::vector<double>& x, std::vector<double>& y) { apply(h, x, y); }, opts);
}

std::vector<double> spectrum_small(const HamiltonianModel& h) {
    if (h.m > 10) throw CapacityError("spectrum_small: M > 10");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_matrix(h), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace qcasim
