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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <subnyq/subnyq.hpp>

namespace subnyq::test {

// Direct double loop over every (n, p) pair using the materialised A^m.
inline Eigen::MatrixXd brute_force_scores(const std::vector<CMatrix>& residuals, const DictionarySet& dict)
{
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dict.range_cells(), dict.azimuth_cells());
    for (int i = 0; i < dict.num_tx(); ++i) {
        const CMatrix a = dict.range_matrix(i);
        const CMatrix& b = dict.azimuth[i];
        for (Eigen::Index n = 0; n < s.rows(); ++n)
            for (Eigen::Index p = 0; p < s.cols(); ++p) {
                cplx acc{0.0, 0.0};
                for (Eigen::Index k = 0; k < a.rows(); ++k)
                    for (Eigen::Index q = 0; q < b.rows(); ++q)
                        acc += std::conj(a(k, n)) * residuals[i](k, q) * std::conj(b(q, p));
                s(n, p) += std::norm(acc);
            }
    }
    return s;
}

// First index pair in row-major order whose score ties the maximum.
inline std::pair<int, int> first_argmax(const Eigen::MatrixXd& s)
{
    double top = s(0, 0);
    for (Eigen::Index n = 0; n < s.rows(); ++n)
        for (Eigen::Index p = 0; p < s.cols(); ++p)
            top = std::max(top, s(n, p));
    for (Eigen::Index n = 0; n < s.rows(); ++n)
        for (Eigen::Index p = 0; p < s.cols(); ++p)
            if (s(n, p) >= top * (1.0 - kTieTolerance))
                return {static_cast<int>(n), static_cast<int>(p)};
    return {0, 0};
}

// Per-m Kronecker atom a_n^m (b_p^m)^T.
inline CMatrix atom(const DictionarySet& dict, int i, int n, int p)
{
    return dict.range_matrix(i).col(n) * dict.azimuth[i].col(p).transpose();
}

inline std::vector<CMatrix> residuals_of(const CoefficientSet& y, const DictionarySet& dict,
                                         const SparseEstimate& est)
{
    std::vector<CMatrix> r = y.matrices;
    for (std::size_t s = 0; s < est.support.size(); ++s)
        for (int i = 0; i < dict.num_tx(); ++i)
            r[i] -= est.amplitudes[s] * atom(dict, i, est.support[s].first, est.support[s].second);
    return r;
}

// Least squares on a fixed support through the normal equations.
inline std::vector<cplx> least_squares_on(const CoefficientSet& y, const DictionarySet& dict,
                                          const std::vector<std::pair<int, int>>& support)
{
    const auto l = static_cast<Eigen::Index>(support.size());
    CMatrix gram = CMatrix::Zero(l, l);
    CVector rhs = CVector::Zero(l);
    for (int i = 0; i < dict.num_tx(); ++i)
        for (Eigen::Index u = 0; u < l; ++u) {
            const CMatrix au = atom(dict, i, support[u].first, support[u].second);
            rhs[u] += (au.conjugate().cwiseProduct(y.matrices[i])).sum();
            for (Eigen::Index v = 0; v < l; ++v)
                gram(u, v) += (au.conjugate().cwiseProduct(atom(dict, i, support[v].first, support[v].second))).sum();
        }
    const CVector x = gram.fullPivLu().solve(rhs);
    return {x.data(), x.data() + x.size()};
}

struct SmallInstance {
    ArrayConfig array;
    CognitivePlan plan;
    KappaSet kappa;
    RangeGrid rgrid;
    AzimuthGrid agrid;
    DictionarySet dict;
};

// Random array, slices and grids with N_R * N_theta <= 10^4.
inline SmallInstance random_instance(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> tx_count(1, 4), rx_count(2, 5);
    SmallInstance s;
    const int t = tx_count(rng), r = rx_count(rng);
    s.array.mode = ArrayMode::Mode2Random8x10;
    s.array.num_tx = t;
    s.array.num_rx = r;
    s.array.virtual_tx = t + 1;
    s.array.virtual_rx = r + 1;
    s.array.aperture_slots = s.array.virtual_tx * s.array.virtual_rx;
    const auto draw = [&](int count) {
        std::vector<int> slots(s.array.aperture_slots);
        for (int i = 0; i < s.array.aperture_slots; ++i) slots[i] = i;
        std::shuffle(slots.begin(), slots.end(), rng);
        slots.resize(count);
        std::sort(slots.begin(), slots.end());
        return slots;
    };
    // Position sums must contain two consecutive integers, otherwise distinct
    // azimuth columns can coincide.
    const auto resolvable = [&] {
        std::vector<int> sums;
        for (int x : s.array.tx_positions)
            for (int z : s.array.rx_positions)
                sums.push_back(x + z);
        std::sort(sums.begin(), sums.end());
        for (std::size_t i = 1; i < sums.size(); ++i)
            if (sums[i] == sums[i - 1] + 1)
                return true;
        return false;
    };
    do {
        s.array.tx_positions = draw(t);
        s.array.rx_positions = draw(r);
    } while (!resolvable());

    // 40 bins per channel; two or three random slices of whole bins.
    const double pri = 100e-6, spacing = 0.4e6;
    const FdmPlan base = build_fdm_plan(t, spacing, 0.32e6, 0.08e6, pri, 4.2e-6);
    std::uniform_int_distribution<int> width(2, 6);
    std::vector<Subband> bands;
    int bin = std::uniform_int_distribution<int>(0, 3)(rng);
    while (bin < 30 && bands.size() < 3) {
        const int w = width(rng);
        bands.push_back({bin / pri, (bin + w) / pri});
        bin += w + std::uniform_int_distribution<int>(1, 4)(rng);
    }
    s.plan = build_cognitive_plan(base, bands, 1.0, rng());
    s.kappa = subband_to_kappa(s.plan);

    std::uniform_int_distribution<int> range_cells(8, 80), az_cells(4, 60);
    int nr = 0, na = 0;
    do {
        nr = range_cells(rng);
        na = az_cells(rng);
    } while (nr * na > 10000);
    s.rgrid = make_range_grid(pri, pri / nr);
    s.agrid = azimuth_grid(na);
    s.dict = build_dictionaries(s.array, s.plan, s.kappa, s.rgrid, s.agrid);
    return s;
}

// Sparse combination of atoms plus complex Gaussian perturbation.
inline CoefficientSet random_measurement(const SmallInstance& s, int sparsity, double noise, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick_n(0, static_cast<int>(s.rgrid.size()) - 1);
    std::uniform_int_distribution<int> pick_p(0, static_cast<int>(s.agrid.size()) - 1);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi), mag(0.5, 1.5);
    std::normal_distribution<double> gauss(0.0, noise);
    CoefficientSet y;
    y.kappa = s.kappa;
    y.tx_indices = s.dict.tx_indices;
    y.rx_indices = s.dict.rx_indices;
    for (int i = 0; i < s.dict.num_tx(); ++i)
        y.matrices.push_back(CMatrix::Zero(s.kappa.size(), s.array.num_rx));
    for (int l = 0; l < sparsity; ++l) {
        const int n = pick_n(rng), p = pick_p(rng);
        const cplx a = std::polar(mag(rng), phase(rng));
        for (int i = 0; i < s.dict.num_tx(); ++i)
            y.matrices[i] += a * atom(s.dict, i, n, p);
    }
    for (CMatrix& m : y.matrices)
        for (Eigen::Index k = 0; k < m.size(); ++k)
            m(k) += cplx{gauss(rng), gauss(rng)};
    return y;
}

inline double relative_frobenius(const CMatrix& a, const CMatrix& b)
{
    const double ref = b.norm();
    return ref > 0.0 ? (a - b).norm() / ref : a.norm();
}

}  // namespace subnyq::test
