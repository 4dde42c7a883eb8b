// Copyright 2026 The qinstr Authors
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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "oracle.hpp"
#include "qinstr/optimize.hpp"
#include "qinstr/parallel.hpp"
#include "qinstr/rng.hpp"

namespace qinstr {
namespace {

double rosenbrock(const std::vector<double>& x) {
  return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
}

TEST(NelderMead, Quadratic) {
  const auto f = [](const std::vector<double>& x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1) * std::pow(x[i] - 0.5 * i, 2);
    return s;
  };
  const MinimizeResult r = nelder_mead(f, std::vector<double>(5, 3.0));
  ASSERT_EQ(r.x.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.x[i], 0.5 * i, 1e-5);
  EXPECT_LT(r.f, 1e-10);
}

TEST(NelderMead, RosenbrockWithRestarts) {
  const MinimizeResult r = nelder_mead_restarts(rosenbrock, {-1.2, 1.0}, 4);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], 1.0, 1e-5);
}

TEST(NelderMead, HistoryNonIncreasing) {
  const MinimizeResult r = nelder_mead(rosenbrock, {-1.2, 1.0});
  ASSERT_FALSE(r.history.empty());
  for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1]);
  EXPECT_DOUBLE_EQ(r.history.back(), r.f);
}

TEST(NelderMead, RespectsEvaluationBudget) {
  NelderMeadOptions opt;
  opt.max_evals = 50;
  int calls = 0;
  const MinimizeResult r = nelder_mead(
      [&](const std::vector<double>& x) {
        ++calls;
        return rosenbrock(x);
      },
      {-1.2, 1.0}, opt);
  EXPECT_LE(r.evals, 50 + 3);
  EXPECT_EQ(r.evals, calls);
  EXPECT_FALSE(r.converged);
}

TEST(GoldenSection, Unimodal) {
  EXPECT_NEAR(golden_section([](double x) { return std::pow(x - 0.3, 2); }, -1, 2), 0.3, 1e-7);
  EXPECT_NEAR(golden_section([](double x) { return -std::sin(x); }, 0, M_PI), M_PI / 2, 1e-7);
}

TEST(SolveSpd, MatchesEigenSolve) {
  test::Gen g(150);
  for (int t = 0; t < 20; ++t) {
    const int n = g.integer(1, 6);
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(n, n);
    Eigen::MatrixXd a = m * m.transpose() + Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Random(n);
    std::vector<std::vector<double>> av(n, std::vector<double>(n));
    std::vector<double> bv(n), x;
    for (int i = 0; i < n; ++i) {
      bv[i] = b(i);
      for (int j = 0; j < n; ++j) av[i][j] = a(i, j);
    }
    ASSERT_TRUE(solve_spd(av, bv, x));
    const Eigen::VectorXd ref = a.ldlt().solve(b);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref(i), 1e-10);
  }
}

TEST(SolveSpd, SingularReported) {
  std::vector<double> x;
  EXPECT_FALSE(solve_spd({{1, 1}, {1, 1}}, {1, 2}, x));
}

TEST(Parallel, EveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(Parallel, ExceptionPropagates) {
  EXPECT_THROW(parallel_for(50,
                            [](std::size_t i) {
                              if (i == 17) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Parallel, ThreadCountFromEnvironment) {
  ::setenv("QINSTR_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  ::setenv("QINSTR_THREADS", "0", 1);
  EXPECT_GE(worker_count(), 1u);
  ::unsetenv("QINSTR_THREADS");
  EXPECT_GE(worker_count(), 1u);
}

TEST(Rng, DerivedStreamsAreDistinctAndStable) {
  EXPECT_EQ(derive_seed(5, 1), derive_seed(5, 1));
  EXPECT_NE(derive_seed(5, 1), derive_seed(5, 2));
  EXPECT_NE(derive_seed(5, 1), derive_seed(6, 1));
  auto a = make_rng(9, 4), b = make_rng(9, 4);
  EXPECT_EQ(a(), b());
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(a);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(uniform_index(a, 7), 7u);
  }
}

}  // namespace
}  // namespace qinstr
