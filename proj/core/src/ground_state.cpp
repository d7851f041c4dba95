// Copyright 2026 The nffdgate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

#include "engines.hpp"
#include "nffd/errors.hpp"
#include "nffd/propagator.hpp"

namespace nffd {

using detail::cplx;

namespace {

std::vector<double> initial_guess(std::span<const double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double scale = std::max((*hi - *lo) / 20.0, 1e-12);
    std::vector<double> g(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) g[i] = std::exp(-(v[i] - *lo) / scale);
    return g;
}

Wavefunction finish(const Grid& grid, Scaling scaling, std::vector<cplx> values) {
    Wavefunction wf(grid, scaling, std::move(values));
    wf.normalize();
    wf.fix_phase();
    return wf;
}

GroundState cylindrical_ground_state(const PotentialField& potential, Scaling scaling,
                                     const PropagatorConfig& cfg,
                                     const GroundStateSettings& settings,
                                     const Wavefunction* guess) {
    const Grid& grid = potential.grid();
    const std::size_t nr = grid.axis(0).size, nz = grid.axis(1).size, n = grid.size();
    const double hr = grid.axis(0).step, hz = grid.axis(1).step;
    const double c = cfg.kinetic;
    const auto v = potential.evaluate(0.0);
    const double vmin = *std::min_element(v.begin(), v.end());

    // H - vmin on psi = phi / r; positive definite, so the shifted inverse converges
    // to the lowest state.
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * n);
    std::vector<double> r(nr);
    for (std::size_t i = 0; i < nr; ++i) r[i] = grid.axis(0).node(i);
    for (std::size_t i = 0; i < nr; ++i) {
        const double up = (r[i] + 0.5 * hr) / r[i] / (hr * hr);
        const double down = i == 0 ? 0.0 : (r[i] - 0.5 * hr) / r[i] / (hr * hr);
        for (std::size_t j = 0; j < nz; ++j) {
            const int row = static_cast<int>(i * nz + j);
            const double diag = c * (up + down + 2.0 / (hz * hz)) + v[row] - vmin;
            trip.emplace_back(row, row, diag);
            if (i > 0) trip.emplace_back(row, row - static_cast<int>(nz), -c * down);
            if (i + 1 < nr) trip.emplace_back(row, row + static_cast<int>(nz), -c * up);
            if (j > 0) trip.emplace_back(row, row - 1, -c / (hz * hz));
            if (j + 1 < nz) trip.emplace_back(row, row + 1, -c / (hz * hz));
        }
    }
    Eigen::SparseMatrix<double> A(static_cast<int>(n), static_cast<int>(n));
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.compute(A);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("ground_state: factorization failed", 0.0);

    std::vector<double> w(n);
    const double cell = 2.0 * std::numbers::pi * hr * hz;
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nz; ++j) w[i * nz + j] = cell * r[i];

    Eigen::VectorXd psi(static_cast<int>(n));
    if (guess) {
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nz; ++j)
                psi[static_cast<int>(i * nz + j)] = (*guess)[i * nz + j].real() / r[i];
    } else {
        const auto g = initial_guess(v);
        for (std::size_t k = 0; k < n; ++k) psi[static_cast<int>(k)] = g[k];
    }

    auto rayleigh = [&](const Eigen::VectorXd& x) {
        const Eigen::VectorXd hx = A * x;
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            num += w[k] * x[static_cast<int>(k)] * hx[static_cast<int>(k)];
            den += w[k] * x[static_cast<int>(k)] * x[static_cast<int>(k)];
        }
        return num / den + vmin;
    };
    auto normalize = [&](Eigen::VectorXd& x) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += w[k] * x[static_cast<int>(k)] * x[static_cast<int>(k)];
        x /= std::sqrt(s);
    };

    // Weighted residual |(H - E) x| for normalized x.
    auto residual = [&](const Eigen::VectorXd& x, double e) {
        const Eigen::VectorXd r = A * x - (e - vmin) * x;
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += w[k] * r[static_cast<int>(k)] * r[static_cast<int>(k)];
        return std::sqrt(s);
    };

    normalize(psi);
    double e = rayleigh(psi);
    std::size_t step = 0;
    double change = 0.0, res = 0.0;
    for (; step < settings.max_steps; ++step) {
        Eigen::VectorXd next = solver.solve(psi);
        normalize(next);
        const double e_next = rayleigh(next);
        change = std::abs(e_next - e);
        psi = std::move(next);
        e = e_next;
        if (change < settings.tolerance) {
            res = residual(psi, e);
            if (res < settings.residual_tolerance) break;
        }
    }
    if (step == settings.max_steps) {
        std::ostringstream msg;
        msg << "ground_state: energy change " << change << ", residual " << res << " after "
            << step << " steps";
        throw ConvergenceError(msg.str(), std::max(change, res));
    }

    std::vector<cplx> phi(n);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nz; ++j)
            phi[i * nz + j] = psi[static_cast<int>(i * nz + j)] * r[i];
    return {finish(grid, scaling, std::move(phi)), e, step + 1};
}

// Locally optimal block preconditioned conjugate gradient (single vector) on the
// discrete Hamiltonian, preconditioned with (c k^2 + s)^{-1}.
double lobpcg(detail::SpectralEngine& engine, std::span<const double> v, double kinetic,
              std::vector<cplx>& x, const GroundStateSettings& settings, std::size_t& total) {
    using Vec = Eigen::VectorXcd;
    const auto n = static_cast<Eigen::Index>(x.size());
    const auto& k2 = engine.k2();
    const double vmin = *std::min_element(v.begin(), v.end());
    std::vector<double> ck2(k2.size()), prec(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i) ck2[i] = kinetic * k2[i];

    auto apply_h = [&](const Vec& in) {
        auto s = engine.state();
        for (Eigen::Index i = 0; i < n; ++i) s[i] = in[i];
        engine.fourier_multiply(ck2);
        Vec out(n);
        for (Eigen::Index i = 0; i < n; ++i) out[i] = s[i] + v[i] * in[i];
        return out;
    };
    auto precondition = [&](const Vec& in) {
        auto s = engine.state();
        for (Eigen::Index i = 0; i < n; ++i) s[i] = in[i];
        engine.fourier_multiply(prec);
        Vec out(n);
        for (Eigen::Index i = 0; i < n; ++i) out[i] = s[i];
        return out;
    };

    Vec X = Eigen::Map<Vec>(x.data(), n);
    X.normalize();
    Vec P, HP;
    double lambda = 0.0, prev = std::numeric_limits<double>::infinity();
    double change = 0.0, res = 0.0;
    for (std::size_t it = 0; total < settings.max_steps; ++it, ++total) {
        const Vec HX = apply_h(X);
        lambda = X.dot(HX).real();
        const Vec R = HX - lambda * X;
        res = R.norm();
        change = std::abs(lambda - prev);
        prev = lambda;
        if (change < settings.tolerance && res < settings.residual_tolerance) {
            x.assign(X.data(), X.data() + n);
            return lambda;
        }
        const double shift = std::max(lambda - vmin, 1e-3);
        for (std::size_t i = 0; i < k2.size(); ++i) prec[i] = 1.0 / (ck2[i] + shift);
        Vec W = precondition(R);

        // Orthonormal basis {X, W, P} carrying H applied to each vector.
        std::vector<Vec> b{X}, hb{HX};
        auto add = [&](Vec u, Vec hu) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < b.size(); ++j) {
                    const cplx c = b[j].dot(u);
                    u -= c * b[j];
                    hu -= c * hb[j];
                }
            }
            const double nu = u.norm();
            if (nu < 1e-12) return;
            b.push_back(u / nu);
            hb.push_back(hu / nu);
        };
        add(W, apply_h(W));
        if (P.size() == n) add(P, HP);

        const auto m = static_cast<Eigen::Index>(b.size());
        Eigen::MatrixXcd H(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) H(i, j) = b[i].dot(hb[j]);
        H = 0.5 * (H + H.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
        const Eigen::VectorXcd c = eig.eigenvectors().col(0);
        Vec Xn = c[0] * b[0];
        P = Vec::Zero(n);
        HP = Vec::Zero(n);
        for (Eigen::Index i = 1; i < m; ++i) {
            P += c[i] * b[i];
            HP += c[i] * hb[i];
        }
        X = (Xn + P).normalized();
    }
    std::ostringstream msg;
    msg << "ground_state: energy change " << change << ", residual " << res << " after "
        << total << " steps";
    throw ConvergenceError(msg.str(), std::max(change, res));
}

GroundState spectral_ground_state(const PotentialField& potential, Scaling scaling,
                                  const PropagatorConfig& cfg,
                                  const GroundStateSettings& settings,
                                  const Wavefunction* guess) {
    const Grid& grid = potential.grid();
    const std::size_t n = grid.size();
    const auto v = potential.evaluate(0.0);
    const double vmin = *std::min_element(v.begin(), v.end());
    const auto& w = grid.weights();

    std::vector<cplx> psi(n);
    if (guess) {
        for (std::size_t k = 0; k < n; ++k) psi[k] = (*guess)[k];
    } else {
        const auto g = initial_guess(v);
        for (std::size_t k = 0; k < n; ++k) psi[k] = g[k];
    }

    // Imaginary-time relaxation with the step shrinking by 4 per stage, then a
    // LOBPCG polish to the residual tolerance.
    const double floor = 16.0 * cfg.dt;
    double dtau = settings.initial_dtau > 0.0 ? settings.initial_dtau : 256.0 * cfg.dt;
    std::size_t total = 0;
    while (true) {
        detail::SpectralEngine engine(grid, cfg.kinetic, cplx(-dtau, 0.0));
        Wavefunction tmp(grid, scaling, psi);
        engine.load(tmp);
        // Shifted by the minimum so large steps cannot overflow.
        std::vector<double> half(n);
        for (std::size_t k = 0; k < n; ++k) half[k] = std::exp(-0.5 * dtau * (v[k] - vmin));
        auto s = engine.state();
        auto normalize = [&] {
            double nn = 0.0;
            for (std::size_t k = 0; k < n; ++k) nn += w[k] * std::norm(s[k]);
            const double inv = 1.0 / std::sqrt(nn);
            for (auto& x : s) x *= inv;
        };
        auto measure = [&] {
            double pot = 0.0;
            for (std::size_t k = 0; k < n; ++k) pot += w[k] * v[k] * std::norm(s[k]);
            return engine.kinetic_energy() + pot;
        };
        normalize();
        double e = measure();
        const double tol = settings.tolerance * 100.0;
        double change = 0.0;
        bool converged = false;
        for (; total < settings.max_steps; ++total) {
            for (std::size_t k = 0; k < n; ++k) s[k] *= half[k];
            engine.kinetic_step();
            for (std::size_t k = 0; k < n; ++k) s[k] *= half[k];
            normalize();
            const double e_next = measure();
            change = std::abs(e_next - e);
            e = e_next;
            if (change < tol) {
                converged = true;
                ++total;
                break;
            }
        }
        if (!converged) {
            std::ostringstream msg;
            msg << "ground_state: energy change " << change << " after " << total << " steps";
            throw ConvergenceError(msg.str(), change);
        }
        psi.assign(s.begin(), s.end());
        if (dtau / 4.0 < floor * (1.0 - 1e-12)) break;
        dtau /= 4.0;
    }

    detail::SpectralEngine engine(grid, cfg.kinetic, cplx{});
    const double e = lobpcg(engine, v, cfg.kinetic, psi, settings, total);
    return {finish(grid, scaling, std::move(psi)), e, total};
}

}  // namespace

GroundState ground_state(const PotentialField& potential, Scaling scaling,
                         const PropagatorConfig& cfg, const GroundStateSettings& settings,
                         const Wavefunction* guess) {
    const Grid& grid = potential.grid();
    cfg.validate(grid);
    if (guess && !(guess->grid() == grid))
        throw ContractError("ground_state: guess lives on a different grid");
    if (grid.coords() == Coordinates::reduced_cylindrical)
        return cylindrical_ground_state(potential, scaling, cfg, settings, guess);
    return spectral_ground_state(potential, scaling, cfg, settings, guess);
}

double energy(const Wavefunction& psi, std::span<const double> potential, double kinetic) {
    const Grid& grid = psi.grid();
    if (potential.size() != grid.size()) throw ContractError("energy: potential size mismatch");
    const std::size_t n = grid.size();
    double pot = 0.0, kin = 0.0, nn = 0.0;
    if (grid.coords() == Coordinates::reduced_cylindrical) {
        detail::CylindricalEngine eng(grid, kinetic, cplx{});
        const auto x = eng.internal(psi);
        std::vector<cplx> hx(n);
        detail::CylindricalEngine::apply_kinetic(grid, kinetic, x, hx);
        const auto& w = eng.weights();
        for (std::size_t k = 0; k < n; ++k) {
            nn += w[k] * std::norm(x[k]);
            pot += w[k] * potential[k] * std::norm(x[k]);
            kin += w[k] * (std::conj(x[k]) * hx[k]).real();
        }
        return (kin + pot) / nn;
    }
    detail::SpectralEngine eng(grid, kinetic, cplx{});
    eng.load(psi);
    kin = eng.kinetic_energy();
    const auto& w = grid.weights();
    for (std::size_t k = 0; k < n; ++k) {
        nn += w[k] * std::norm(psi[k]);
        pot += w[k] * potential[k] * std::norm(psi[k]);
    }
    return (kin + pot) / nn;
}

}  // namespace nffd
