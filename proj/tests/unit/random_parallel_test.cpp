// Copyright 2026 The hybridqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hybridqc/ensembles.hpp"
#include "hybridqc/parallel.hpp"
#include "hybridqc/random.hpp"
#include "hybridqc/statistical_operators.hpp"

namespace hqc {
namespace {

class ThreadEnv {
public:
    explicit ThreadEnv(const char* value) {
        if (const char* old = std::getenv("HYBRIDQC_THREADS")) saved_ = old;
        setenv("HYBRIDQC_THREADS", value, 1);
    }
    ~ThreadEnv() {
        if (saved_.empty()) {
            unsetenv("HYBRIDQC_THREADS");
        } else {
            setenv("HYBRIDQC_THREADS", saved_.c_str(), 1);
        }
    }

private:
    std::string saved_;
};

TEST(Random, DerivedSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(s, i));
    EXPECT_EQ(seen.size(), 4000u);
}

TEST(Random, StreamsAreReproducible) {
    ParticleRng a(7, 3), b(7, 3), c(7, 4);
    for (int i = 0; i < 10; ++i) {
        const double u = a.uniform();
        EXPECT_EQ(u, b.uniform());
        EXPECT_NE(u, c.uniform());
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Random, NormalMoments) {
    ParticleRng rng(1, 0);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        s += x;
        s2 += x * x;
    }
    EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(Random, HaarStateIsUnit) {
    ParticleRng rng(3, 9);
    for (Eigen::Index d = 2; d <= 5; ++d) EXPECT_NEAR(haar_state(d, rng).norm(), 1.0, 1e-14);
}

TEST(Parallel, CoversRangeOnce) {
    ThreadEnv env("3");
    EXPECT_EQ(worker_count(), 3u);
    std::vector<int> hits(1001, 0);
    parallel_for(hits.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Parallel, PropagatesExceptions) {
    ThreadEnv env("4");
    EXPECT_THROW(parallel_for(100, [](std::size_t b, std::size_t) {
                     if (b > 0) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(Parallel, ReductionIndependentOfWorkers) {
    const std::size_t n = 5 * kReductionBlock + 17;
    auto reduce = [&] {
        return blocked_reduce<double>(
            n, [] { return 0.0; },
            [](double& acc, std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i) acc += 1.0 / (1.0 + static_cast<double>(i));
            },
            [](double& a, const double& b) { a += b; });
    };
    double one, many;
    {
        ThreadEnv env("1");
        one = reduce();
    }
    {
        ThreadEnv env("7");
        many = reduce();
    }
    EXPECT_EQ(one, many);
}

TEST(Parallel, SampleAndEstimateIndependentOfWorkers) {
    const DensitySpec spec(GaussianFactor{RVector::Constant(1, 1.0), RVector::Zero(1),
                                          RVector::Constant(1, 0.2), RVector::Constant(1, 0.2)},
                           HaarUniform{2});
    auto run = [&] {
        const ParticleCloud cloud = sample(spec, 9000, 42);
        return estimate_quantum_state(cloud).matrix();
    };
    CMatrix one, many;
    {
        ThreadEnv env("1");
        one = run();
    }
    {
        ThreadEnv env("5");
        many = run();
    }
    EXPECT_EQ(one, many);
}

}  // namespace
}  // namespace hqc
