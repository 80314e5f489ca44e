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

#include <utility>
#include <vector>

#include "subnyq/geometry.hpp"
#include "subnyq/types.hpp"
#include "subnyq/waveform.hpp"
#include "subnyq/xampler.hpp"

namespace subnyq {

/// Uniform delay grid tau_n = n * resolution over [0, pri).
struct RangeGrid {
    std::vector<double> delays;
    double resolution = 0.0;  // s

    std::size_t size() const { return delays.size(); }
    double range_cell() const { return delay_to_range(resolution); }
    int nearest(double delay) const;
};

RangeGrid make_range_grid(double pri, double resolution);
// Grid whose cells are `cell_m` metres of range (delay resolution 2 cell / c).
RangeGrid range_grid_for_cell(double pri, double cell_m);

/// Range and azimuth dictionaries per processed transmitter.
///   A^m[i, n] = exp(-j 2 pi kappa_i tau_n / tau) exp(-j 2 pi f_m tau_n)
///   B^m[q, p] = exp(j 2 pi beta_mq theta_p)
/// A^m is kept factored as a shared K x N_R matrix times a per-column phase,
/// since the f_m term is a unit scalar per column.
struct DictionarySet {
    CMatrix range_base;                  // K x N_R, kappa/delay part
    std::vector<CVector> range_phase;    // per transmitter, length N_R
    std::vector<CMatrix> azimuth;        // per transmitter, Q x N_theta
    KappaSet kappa;
    std::vector<int> tx_indices;
    std::vector<int> rx_indices;

    int num_tx() const { return static_cast<int>(azimuth.size()); }
    Eigen::Index range_cells() const { return range_base.cols(); }
    Eigen::Index azimuth_cells() const { return azimuth.empty() ? 0 : azimuth.front().cols(); }
    // Materialised A^m for the i-th processed transmitter.
    CMatrix range_matrix(int i) const;
};

DictionarySet build_dictionaries(const ArrayConfig& array, const CognitivePlan& plan, const KappaSet& kappa,
                                 const RangeGrid& rgrid, const AzimuthGrid& agrid);
DictionarySet build_dictionaries(const ArrayConfig& array, const CognitivePlan& plan, const KappaSet& kappa,
                                 const RangeGrid& rgrid, const AzimuthGrid& agrid,
                                 const std::vector<int>& tx_indices, const std::vector<int>& rx_indices);

struct SparseEstimate {
    std::vector<std::pair<int, int>> support;  // (range index n, azimuth index p)
    std::vector<cplx> amplitudes;
    double residual_norm = 0.0;                // sum_m ||R^m||_F after the last refit
    double relative_residual = 0.0;            // residual_norm / sum_m ||Y^m||_F
    std::vector<double> residual_energy;       // sum_m ||R^m||_F^2 after each iteration
};

inline constexpr double kDefaultResidualTol = 1e-3;
// Scores within this relative distance of the maximum count as tied.
inline constexpr double kTieTolerance = 1e-10;

/// Simultaneous matrix OMP over all transmitters. Each iteration scores
/// S(n, p) = sum_m |a_n^H R^m conj(b_p)|^2, adds the argmax (scores within a
/// relative kTieTolerance of it tie, and ties go to the smallest n, then p),
/// refits all support amplitudes jointly by least squares over the stacked
/// per-m systems and updates the residuals. Pairs already in the support are
/// not selected again. Stops after max_targets selections or once the
/// relative residual drops to residual_tol (a negative tolerance never stops
/// early).
SparseEstimate matrix_omp(const CoefficientSet& y, const DictionarySet& dict, int max_targets,
                          double residual_tol = kDefaultResidualTol);

/// Score map S(n, p) for the given residuals (exposed for inspection/tests).
Eigen::MatrixXd score_map(const std::vector<CMatrix>& residuals, const DictionarySet& dict);

/// Worst normalised correlation between distinct columns of the partial
/// Fourier range dictionary on the per-channel Nyquist delay grid.
double coherence(const KappaSet& kappa);
double coherence(const DictionarySet& dict);

}  // namespace subnyq
