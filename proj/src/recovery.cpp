// SPDX-License-Identifier: Apache-2.0
//
// subnyq - sub-Nyquist collocated MIMO radar simulation and recovery
// Copyright (C) 2026 The subnyq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "subnyq/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

#include "fft.hpp"
#include "subnyq/error.hpp"

namespace subnyq {

int RangeGrid::nearest(double delay) const
{
    const long n = static_cast<long>(delays.size());
    const long idx = std::lround(delay / resolution);
    return static_cast<int>(((idx % n) + n) % n);
}

RangeGrid make_range_grid(double pri, double resolution)
{
    if (!(pri > 0.0) || !(resolution > 0.0) || resolution > pri)
        throw Error(ErrorCategory::config, "range resolution must lie in (0, pri]");
    const double cells = pri / resolution;
    const long n = std::lround(cells);
    if (std::abs(cells - static_cast<double>(n)) > 1e-6)
        throw Error(ErrorCategory::config, "pri must be an integer number of range cells");
    RangeGrid grid;
    grid.resolution = pri / static_cast<double>(n);
    grid.delays.resize(n);
    for (long i = 0; i < n; ++i)
        grid.delays[i] = static_cast<double>(i) * grid.resolution;
    return grid;
}

RangeGrid range_grid_for_cell(double pri, double cell_m)
{
    return make_range_grid(pri, range_to_delay(cell_m));
}

CMatrix DictionarySet::range_matrix(int i) const
{
    return range_base * range_phase.at(i).asDiagonal();
}

DictionarySet build_dictionaries(const ArrayConfig& array, const CognitivePlan& plan, const KappaSet& kappa,
                                 const RangeGrid& rgrid, const AzimuthGrid& agrid)
{
    std::vector<int> tx(array.num_tx), rx(array.num_rx);
    for (int m = 0; m < array.num_tx; ++m) tx[m] = m;
    for (int q = 0; q < array.num_rx; ++q) rx[q] = q;
    return build_dictionaries(array, plan, kappa, rgrid, agrid, tx, rx);
}

DictionarySet build_dictionaries(const ArrayConfig& array, const CognitivePlan& plan, const KappaSet& kappa,
                                 const RangeGrid& rgrid, const AzimuthGrid& agrid,
                                 const std::vector<int>& tx_indices, const std::vector<int>& rx_indices)
{
    const double pri = plan.base.pri;
    const auto num_range = static_cast<Eigen::Index>(rgrid.size());
    const auto num_az = static_cast<Eigen::Index>(agrid.size());

    DictionarySet dict;
    dict.kappa = kappa;
    dict.tx_indices = tx_indices;
    dict.rx_indices = rx_indices;
    dict.range_base.resize(kappa.size(), num_range);
    for (Eigen::Index n = 0; n < num_range; ++n) {
        // Reduce k * tau_n / tau modulo 1 in integer-friendly form to keep phases accurate.
        const double cycles_per_bin = rgrid.delays[n] / pri;
        for (int i = 0; i < kappa.size(); ++i) {
            const double c = std::fmod(kappa.indices[i] * cycles_per_bin, 1.0);
            dict.range_base(i, n) = std::polar(1.0, -2.0 * kPi * c);
        }
    }

    for (int m : tx_indices) {
        if (m < 0 || m >= array.num_tx || m >= plan.base.num_tx)
            throw Error(ErrorCategory::index, "invalid transmitter index " + std::to_string(m));
        CVector phase(num_range);
        const double origin = plan.base.channel_origin(m);
        for (Eigen::Index n = 0; n < num_range; ++n)
            phase[n] = std::polar(1.0, -2.0 * kPi * std::fmod(origin * rgrid.delays[n], 1.0));
        dict.range_phase.push_back(std::move(phase));

        CMatrix b(static_cast<Eigen::Index>(rx_indices.size()), num_az);
        for (std::size_t r = 0; r < rx_indices.size(); ++r) {
            const double bt = beta(array, m, rx_indices[r]);
            for (Eigen::Index p = 0; p < num_az; ++p)
                b(static_cast<Eigen::Index>(r), p) = std::polar(1.0, 2.0 * kPi * std::fmod(bt * agrid.values[p], 1.0));
        }
        dict.azimuth.push_back(std::move(b));
    }
    return dict;
}

Eigen::MatrixXd score_map(const std::vector<CMatrix>& residuals, const DictionarySet& dict)
{
    Eigen::MatrixXd score = Eigen::MatrixXd::Zero(dict.range_cells(), dict.azimuth_cells());
    const CMatrix base_adjoint = dict.range_base.adjoint();
    for (int i = 0; i < dict.num_tx(); ++i) {
        // a_n^H R conj(b_p) with a_n = base_n * phase_n.
        CMatrix t = base_adjoint * residuals[i];
        t = dict.range_phase[i].conjugate().asDiagonal() * t;
        score += (t * dict.azimuth[i].conjugate()).cwiseAbs2();
    }
    return score;
}

SparseEstimate matrix_omp(const CoefficientSet& y, const DictionarySet& dict, int max_targets, double residual_tol)
{
    if (max_targets < 1)
        throw Error(ErrorCategory::config, "max_targets must be at least 1");
    const int num_tx = dict.num_tx();
    if (y.num_tx() != num_tx)
        throw Error(ErrorCategory::config, "coefficient set and dictionaries cover different transmitter counts");
    const Eigen::Index k = dict.range_base.rows();
    for (int i = 0; i < num_tx; ++i)
        if (y.matrices[i].rows() != k || y.matrices[i].cols() != dict.azimuth[i].rows())
            throw Error(ErrorCategory::config, "Y^m shape does not match the dictionaries");

    SparseEstimate est;
    double y_norm = 0.0;
    for (const CMatrix& m : y.matrices)
        y_norm += m.norm();
    if (y_norm == 0.0)
        return est;

    const Eigen::Index q = y.matrices.front().cols();
    const Eigen::Index block = k * q;
    Eigen::VectorXcd stacked(block * num_tx);
    for (int i = 0; i < num_tx; ++i)
        stacked.segment(i * block, block) = Eigen::Map<const Eigen::VectorXcd>(y.matrices[i].data(), block);

    std::vector<CMatrix> residuals = y.matrices;
    Eigen::MatrixXcd atoms(block * num_tx, 0);

    for (int iter = 0; iter < max_targets; ++iter) {
        Eigen::MatrixXd score = score_map(residuals, dict);
        // The joint refit only zeroes the stacked correlation of a selected
        // atom, so its per-transmitter score can stay positive.
        for (const auto& [n, p] : est.support)
            score(n, p) = -1.0;
        const double best = score.maxCoeff();
        if (best < 0.0)
            break;  // every grid pair already selected
        // Aliased atoms score equal up to rounding; take the first in row-major order.
        const double floor = best * (1.0 - kTieTolerance);
        Eigen::Index best_n = 0, best_p = 0;
        bool found = false;
        for (Eigen::Index n = 0; n < score.rows() && !found; ++n)
            for (Eigen::Index p = 0; p < score.cols(); ++p)
                if (score(n, p) >= floor) {
                    best_n = n;
                    best_p = p;
                    found = true;
                    break;
                }
        const std::pair<int, int> pick{static_cast<int>(best_n), static_cast<int>(best_p)};
        est.support.push_back(pick);

        // Stacked Kronecker atom vec(a_n^m (b_p^m)^T) over all transmitters.
        atoms.conservativeResize(Eigen::NoChange, atoms.cols() + 1);
        for (int i = 0; i < num_tx; ++i) {
            const CVector a = dict.range_base.col(best_n) * dict.range_phase[i][best_n];
            const CMatrix outer = a * dict.azimuth[i].col(best_p).transpose();
            atoms.col(atoms.cols() - 1).segment(i * block, block) =
                Eigen::Map<const Eigen::VectorXcd>(outer.data(), block);
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(atoms);
        qr.setThreshold(1e-10);
        if (qr.rank() < atoms.cols())
            throw Error(ErrorCategory::numeric, "rank-deficient refit after adding support pair (n=" +
                                                    std::to_string(pick.first) + ", p=" +
                                                    std::to_string(pick.second) + ")");
        const Eigen::VectorXcd amp = qr.solve(stacked);
        const Eigen::VectorXcd fitted = atoms * amp;

        double r_norm = 0.0, r_energy = 0.0;
        for (int i = 0; i < num_tx; ++i) {
            const Eigen::VectorXcd r = stacked.segment(i * block, block) - fitted.segment(i * block, block);
            residuals[i] = Eigen::Map<const CMatrix>(r.data(), k, q);
            r_norm += residuals[i].norm();
            r_energy += residuals[i].squaredNorm();
        }
        est.amplitudes.assign(amp.data(), amp.data() + amp.size());
        est.residual_norm = r_norm;
        est.relative_residual = r_norm / y_norm;
        est.residual_energy.push_back(r_energy);
        if (est.relative_residual <= residual_tol)
            break;
    }
    return est;
}

double coherence(const KappaSet& kappa)
{
    const int n = kappa.per_channel_n;
    if (n < 2)
        throw Error(ErrorCategory::config, "coherence needs at least two range columns");
    if (kappa.indices.empty())
        return 0.0;
    Samples indicator(n, cplx{0.0, 0.0});
    for (int k : kappa.indices)
        indicator[((k % n) + n) % n] += 1.0;
    // |sum_k exp(-j 2 pi k d / N)| for all d at once.
    const Samples spectrum = detail::fft(indicator);
    double worst = 0.0;
    for (int d = 1; d < n; ++d)
        worst = std::max(worst, std::abs(spectrum[d]));
    return worst / static_cast<double>(kappa.size());
}

double coherence(const DictionarySet& dict) { return coherence(dict.kappa); }

}  // namespace subnyq
