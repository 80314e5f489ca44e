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

// Covered tests:
// - Range grids of both profiles and grid errors
// - Dictionary entries and shapes
// - Coherence: closed-form cases, brute-force oracle, prototype slices
// - Score map against a brute-force oracle
// - Matrix OMP: empty input, single target, exact L=3 recovery,
//   tie-breaking (exact and up to rounding), rank deficiency, argument errors
// - Residual monotonicity, refit orthogonality, determinism

#include <doctest.h>

#include <cmath>
#include <random>

#include <subnyq/subnyq.hpp>

#include "support.hpp"

using namespace subnyq;

namespace {

double brute_force_coherence(const KappaSet& kappa)
{
    double worst = 0.0;
    for (int d = 1; d < kappa.per_channel_n; ++d) {
        cplx acc{0.0, 0.0};
        for (int k : kappa.indices)
            acc += std::polar(1.0, -2.0 * kPi * k * d / kappa.per_channel_n);
        worst = std::max(worst, std::abs(acc) / kappa.size());
    }
    return worst;
}

CoefficientSet noiseless(const RadarSetup& s, const Scene& scene)
{
    return acquire(synth_received(scene, s.array, s.plan, s.pulses), s.plan, s.adc, s.kappa, &s.pulses);
}

// Hand-made dictionary: one transmitter, one receiver, one azimuth column.
DictionarySet column_dictionary(const CMatrix& columns)
{
    DictionarySet d;
    d.range_base = columns;
    d.range_phase.push_back(CVector::Ones(columns.cols()));
    d.azimuth.push_back(CMatrix::Ones(1, 1));
    d.tx_indices = {0};
    d.rx_indices = {0};
    d.kappa.per_channel_n = static_cast<int>(columns.rows());
    for (int i = 0; i < columns.rows(); ++i)
        d.kappa.indices.push_back(i);
    return d;
}

CoefficientSet single_measurement(const CVector& v, const DictionarySet& d)
{
    CoefficientSet y;
    y.kappa = d.kappa;
    y.tx_indices = {0};
    y.rx_indices = {0};
    y.matrices.push_back(v);
    return y;
}

}  // namespace

TEST_SUITE("recovery")
{
    TEST_CASE("range grids")
    {
        const RangeGrid desk = range_grid_for_cell(100e-6, 50.0);
        CHECK(desk.size() == 300);
        CHECK(desk.range_cell() == doctest::Approx(50.0));
        const RangeGrid full = range_grid_for_cell(100e-6, 1.25);
        CHECK(full.size() == 12000);
        CHECK(full.nearest(full.delays[777] + 0.4 * full.resolution) == 777);
        CHECK(full.nearest(100e-6 - 0.2 * full.resolution) == 0);
        CHECK_THROWS_AS(make_range_grid(100e-6, 0.0), Error);
        CHECK_THROWS_AS(make_range_grid(100e-6, 200e-6), Error);
        CHECK_THROWS_AS(range_grid_for_cell(100e-6, 7.0), Error);
    }

    TEST_CASE("dictionary entries")
    {
        const RadarSetup s = make_setup(ArrayMode::Mode2Random8x10, Profile::Desk, 3);
        const DictionarySet& d = s.dictionaries;
        CHECK(d.num_tx() == 8);
        CHECK(d.range_cells() == 300);
        CHECK(d.azimuth_cells() == 80);
        for (int i : {0, 5}) {
            const CMatrix a = d.range_matrix(i);
            CHECK(a.rows() == 296);
            CHECK((a.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
            CHECK(d.azimuth[i].rows() == 10);
            CHECK((d.azimuth[i].col(40).array() - cplx{1.0, 0.0}).abs().maxCoeff() < 1e-12);
        }
        const double tau = s.range_grid.delays[11];
        const cplx expected = std::polar(1.0, -2.0 * kPi * (s.kappa.indices[4] * tau / 100e-6 + 3 * 15e6 * tau));
        CHECK(std::abs(d.range_matrix(3)(4, 11) - expected) < 1e-9);
        const double th = s.azimuth_grid.values[17];
        CHECK(std::abs(d.azimuth[2](6, 17) - std::polar(1.0, 2.0 * kPi * beta(s.array, 2, 6) * th)) < 1e-9);
    }

    TEST_CASE("coherence closed forms")
    {
        KappaSet all;
        all.per_channel_n = 64;
        for (int k = 0; k < 64; ++k)
            all.indices.push_back(k);
        CHECK(coherence(all) < 1e-12);

        KappaSet one;
        one.per_channel_n = 64;
        one.indices = {17};
        CHECK(coherence(one) == doctest::Approx(1.0));

        KappaSet tiny;
        tiny.per_channel_n = 1;
        CHECK_THROWS_AS(coherence(tiny), Error);
    }

    TEST_CASE("coherence matches a direct evaluation")
    {
        const KappaSet slices = subband_to_kappa(
            build_cognitive_plan(build_fdm_plan(8, 15e6, 12e6, 3e6, 100e-6, 4.2e-6), prototype_subbands(), 1.0));
        const double mu = coherence(slices);
        CHECK(mu == doctest::Approx(brute_force_coherence(slices)).epsilon(1e-10));
        CHECK(std::abs(mu - 0.42) <= 0.03);

        std::mt19937_64 rng(1);
        for (int trial = 0; trial < 20; ++trial) {
            KappaSet k;
            k.per_channel_n = 50 + static_cast<int>(rng() % 100);
            for (int i = 0; i < k.per_channel_n; ++i)
                if (rng() % 4 == 0)
                    k.indices.push_back(i);
            if (k.indices.empty())
                k.indices.push_back(0);
            CHECK(coherence(k) == doctest::Approx(brute_force_coherence(k)).epsilon(1e-10));
        }
    }

    TEST_CASE("score map agrees with the brute-force oracle")
    {
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 10; ++trial) {
            const test::SmallInstance s = test::random_instance(rng);
            const CoefficientSet y = test::random_measurement(s, 2, 0.1, rng);
            const Eigen::MatrixXd fast = score_map(y.matrices, s.dict);
            const Eigen::MatrixXd slow = test::brute_force_scores(y.matrices, s.dict);
            CHECK((fast - slow).cwiseAbs().maxCoeff() <= 1e-9 * slow.maxCoeff());
        }
    }

    TEST_CASE("zero measurements give an empty estimate")
    {
        const RadarSetup s = make_setup(ArrayMode::Mode1Ula, Profile::Desk, 0);
        CoefficientSet y;
        y.kappa = s.kappa;
        for (int m = 0; m < 8; ++m)
            y.matrices.push_back(CMatrix::Zero(296, 10));
        const SparseEstimate est = matrix_omp(y, s.dictionaries, 5);
        CHECK(est.support.empty());
        CHECK(est.residual_norm == 0.0);
    }

    TEST_CASE("single on-grid target in every mode")
    {
        for (ArrayMode mode : kAllModes) {
            const RadarSetup s = make_setup(mode, Profile::Desk, 2);
            const int n = 123, p = static_cast<int>(s.azimuth_grid.size()) / 3;
            const cplx alpha = std::polar(0.8, -0.6);
            Scene scene;
            scene.targets.push_back({s.range_grid.delays[n], s.azimuth_grid.values[p], alpha});
            const CoefficientSet y = noiseless(s, scene);
            const Eigen::MatrixXd scores = test::brute_force_scores(y.matrices, s.dictionaries);
            CHECK(test::first_argmax(scores) == std::pair{n, p});

            const SparseEstimate est = matrix_omp(y, s.dictionaries, 1);
            REQUIRE(est.support.size() == 1);
            CHECK(est.support[0] == std::pair{n, p});
            CHECK(std::abs(est.amplitudes[0] - alpha) < 1e-9);
            CHECK(est.relative_residual <= 1e-9);
        }
    }

    TEST_CASE("three separated targets are recovered exactly in mode 2")
    {
        const RadarSetup s = make_setup(ArrayMode::Mode2Random8x10, Profile::Desk, 5);
        Scene scene;
        scene.targets = {{s.range_grid.delays[20], s.azimuth_grid.values[10], std::polar(1.0, 0.1)},
                         {s.range_grid.delays[150], s.azimuth_grid.values[44], std::polar(1.0, 2.0)},
                         {s.range_grid.delays[151], s.azimuth_grid.values[70], std::polar(1.0, -1.2)}};
        const CoefficientSet y = noiseless(s, scene);
        const SparseEstimate est = matrix_omp(y, s.dictionaries, 3);
        REQUIRE(est.support.size() == 3);

        std::vector<std::pair<int, int>> truth = {{20, 10}, {150, 44}, {151, 70}};
        const std::vector<cplx> ls = test::least_squares_on(y, s.dictionaries, truth);
        for (std::size_t t = 0; t < truth.size(); ++t) {
            const auto it = std::find(est.support.begin(), est.support.end(), truth[t]);
            REQUIRE(it != est.support.end());
            const auto idx = static_cast<std::size_t>(it - est.support.begin());
            CHECK(std::abs(est.amplitudes[idx] - scene.targets[t].reflectivity) < 1e-9);
            CHECK(std::abs(est.amplitudes[idx] - ls[t]) < 1e-9);
        }
    }

    TEST_CASE("ties go to the smallest range index")
    {
        CMatrix cols(4, 3);
        cols << 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1;
        const DictionarySet d = column_dictionary(cols);
        CVector v(4);
        v << 1, 0, 1, 0;
        const SparseEstimate est = matrix_omp(single_measurement(v, d), d, 1);
        REQUIRE(est.support.size() == 1);
        CHECK(est.support[0] == std::pair{0, 0});
    }

    TEST_CASE("scores equal up to rounding count as tied")
    {
        CMatrix cols(2, 2);
        cols << 1, 1.0 + 1e-14, 0, 0;
        const DictionarySet d = column_dictionary(cols);
        CVector v(2);
        v << 1, 0;
        const SparseEstimate est = matrix_omp(single_measurement(v, d), d, 1);
        REQUIRE(est.support.size() == 1);
        CHECK(est.support[0] == std::pair{0, 0});
        CHECK(test::first_argmax(test::brute_force_scores(single_measurement(v, d).matrices, d)) == std::pair{0, 0});
    }

    TEST_CASE("a linearly dependent atom makes the refit rank deficient")
    {
        CMatrix cols(4, 3);
        cols << 1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0;
        const DictionarySet d = column_dictionary(cols);
        CVector v(4);
        v << 1, 2, 0, 0;
        try {
            matrix_omp(single_measurement(v, d), d, 3, -1.0);
            FAIL("expected a numeric error");
        } catch (const Error& e) {
            CHECK(e.category() == ErrorCategory::numeric);
            CHECK(std::string(e.what()).find("n=") != std::string::npos);
        }
    }

    TEST_CASE("argument errors")
    {
        const RadarSetup s = make_setup(ArrayMode::Mode3Thinned4x5, Profile::Desk, 1);
        CoefficientSet y;
        for (int m = 0; m < 4; ++m)
            y.matrices.push_back(CMatrix::Ones(296, 5));
        CHECK_THROWS_AS(matrix_omp(y, s.dictionaries, 0), Error);
        y.matrices.pop_back();
        CHECK_THROWS_AS(matrix_omp(y, s.dictionaries, 2), Error);
        y.matrices.push_back(CMatrix::Ones(296, 4));
        CHECK_THROWS_AS(matrix_omp(y, s.dictionaries, 2), Error);
    }

    TEST_CASE("residual monotonicity and refit orthogonality on random instances")
    {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 100; ++trial) {
            const test::SmallInstance s = test::random_instance(rng);
            const CoefficientSet y = test::random_measurement(s, 1 + trial % 4, 0.05, rng);
            const int cap = 1 + static_cast<int>(rng() % 6);
            const SparseEstimate est = matrix_omp(y, s.dict, cap, -1.0);
            for (std::size_t i = 1; i < est.residual_energy.size(); ++i)
                CHECK(est.residual_energy[i] <= est.residual_energy[i - 1] * (1.0 + 1e-12));

            const auto r = test::residuals_of(y, s.dict, est);
            double y_norm = 0.0;
            for (const CMatrix& m : y.matrices)
                y_norm += m.norm();
            for (const auto& [n, p] : est.support) {
                cplx inner{0.0, 0.0};
                double atom_norm = 0.0;
                for (int i = 0; i < s.dict.num_tx(); ++i) {
                    const CMatrix a = test::atom(s.dict, i, n, p);
                    inner += (a.conjugate().cwiseProduct(r[i])).sum();
                    atom_norm += a.squaredNorm();
                }
                CHECK(std::abs(inner) <= 1e-8 * std::sqrt(atom_norm) * y_norm);
            }
        }
    }

    TEST_CASE("recovery is deterministic and prefix consistent")
    {
        std::mt19937_64 rng(7);
        const test::SmallInstance s = test::random_instance(rng);
        const CoefficientSet y = test::random_measurement(s, 3, 0.1, rng);
        const SparseEstimate a = matrix_omp(y, s.dict, 4, -1.0);
        const SparseEstimate b = matrix_omp(y, s.dict, 4, -1.0);
        CHECK(a.support == b.support);
        CHECK(a.amplitudes == b.amplitudes);
        const SparseEstimate c = matrix_omp(y, s.dict, 2, -1.0);
        REQUIRE(c.support.size() == 2);
        CHECK(std::equal(c.support.begin(), c.support.end(), a.support.begin()));
    }
}
