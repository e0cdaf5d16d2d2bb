#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "spinchain/errors.hpp"
#include "spinchain/hamiltonian.hpp"
#include "spinchain/pair_measures.hpp"
#include "spinchain/scans.hpp"

using namespace spinchain;
using cd = std::complex<double>;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PairDensityMatrix pure(const Eigen::Vector4cd& v) { return PairDensityMatrix(v * v.adjoint()); }

Eigen::Vector4cd singlet() { return {0.0, kInvSqrt2, -kInvSqrt2, 0.0}; }
Eigen::Vector4cd psi_plus() { return {0.0, kInvSqrt2, kInvSqrt2, 0.0}; }
Eigen::Vector4cd all_down() { return {1.0, 0.0, 0.0, 0.0}; }

Eigen::Matrix2cd random_unitary(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd a;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) a(r, c) = cd(g(rng), g(rng));
  return Eigen::HouseholderQR<Eigen::Matrix2cd>(a).householderQ();
}

Eigen::Matrix4cd random_state(std::mt19937& rng, int rank) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(4, rank);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < rank; ++c) a(r, c) = cd(g(rng), g(rng));
  Eigen::Matrix4cd rho = a * a.adjoint();
  return rho / rho.trace();
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

// Werner state concurrence by hand from the product-matrix definition:
// rho~ = rho for p|psi-><psi-| + (1-p) I/4, so the lambdas are the
// eigenvalues of rho itself: (1+3p)/4 and three times (1-p)/4.
double werner_concurrence(double p) { return std::max(0.0, (3.0 * p - 1.0) / 2.0); }

}  // namespace

TEST(Concurrence, Examples) {
  EXPECT_NEAR(concurrence(pure(singlet())).concurrence, 1.0, 1e-12);
  EXPECT_EQ(concurrence(pure(all_down())).concurrence, 0.0);

  const double p = 0.8;
  const Eigen::Matrix4cd werner =
      p * pure(singlet()).matrix() + (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0;
  EXPECT_NEAR(werner_concurrence(p), 0.7, 1e-15);
  const auto r = concurrence(PairDensityMatrix(werner));
  EXPECT_NEAR(r.concurrence, 0.7, 1e-12);
  EXPECT_NEAR(r.lambda[0], (1.0 + 3.0 * p) / 4.0, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(r.lambda[static_cast<std::size_t>(k)], (1.0 - p) / 4.0, 1e-12);

  // Complex amplitude exercises the conjugation in rho~.
  const Eigen::Vector4cd ghz_i(kInvSqrt2, 0.0, 0.0, cd(0.0, kInvSqrt2));
  EXPECT_NEAR(concurrence(pure(ghz_i)).concurrence, 1.0, 1e-12);
}

TEST(Concurrence, LambdasAreOrderedAndNonNegative) {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto r = concurrence(PairDensityMatrix(random_state(rng, 1 + t % 4)));
    for (int k = 0; k < 4; ++k) EXPECT_GE(r.lambda[static_cast<std::size_t>(k)], 0.0);
    for (int k = 1; k < 4; ++k)
      EXPECT_GE(r.lambda[static_cast<std::size_t>(k - 1)], r.lambda[static_cast<std::size_t>(k)]);
    EXPECT_GE(r.concurrence, 0.0);
    EXPECT_LE(r.concurrence, 1.0);
  }
}

TEST(Concurrence, RejectsInvalidStates) {
  Eigen::Matrix4cd bad = Eigen::Matrix4cd::Identity() / 2.0;
  EXPECT_THROW(concurrence(PairDensityMatrix(bad)), StateValidityError);
  Eigen::Matrix4cd negative = Eigen::Matrix4cd::Zero();
  negative(0, 0) = 1.2;
  negative(3, 3) = -0.2;
  EXPECT_THROW(concurrence(PairDensityMatrix(negative)), StateValidityError);
}

TEST(Concurrence, FlushesRoundoffToZero) {
  // Separable Werner state right at the boundary p = 1/3.
  const double p = 1.0 / 3.0;
  const Eigen::Matrix4cd werner =
      p * pure(singlet()).matrix() + (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0;
  EXPECT_EQ(concurrence(PairDensityMatrix(werner)).concurrence, 0.0);
}

TEST(LocalUnitaryInvariance, ConcurrenceAndChsh) {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Matrix4cd rho = random_state(rng, 1 + t % 3);
    const Eigen::Matrix4cd u = kron(random_unitary(rng), random_unitary(rng));
    const PairDensityMatrix a(rho);
    const PairDensityMatrix b(u * rho * u.adjoint());
    EXPECT_NEAR(concurrence(a).concurrence, concurrence(b).concurrence, 1e-9);
    EXPECT_NEAR(chsh_quantity(a).m, chsh_quantity(b).m, 1e-9);
  }
}

TEST(EntanglementOfFormation, Examples) {
  EXPECT_EQ(eof_from_concurrence(0.0), 0.0);
  EXPECT_NEAR(eof_from_concurrence(1.0), 1.0, 1e-15);
  const double x = (1.0 + std::sqrt(0.75)) / 2.0;
  const double by_hand = -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
  EXPECT_NEAR(eof_from_concurrence(0.5), by_hand, 1e-14);
  EXPECT_NEAR(eof_from_concurrence(0.5), 0.354579, 1e-6);
  EXPECT_THROW(eof_from_concurrence(-0.1), DomainError);
  EXPECT_THROW(eof_from_concurrence(1.0001), DomainError);
}

TEST(EntanglementOfFormation, StrictlyIncreasing) {
  double previous = eof_from_concurrence(0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double e = eof_from_concurrence(k / 1000.0);
    EXPECT_GT(e, previous) << k;
    previous = e;
  }
}

TEST(AnalyticConcurrence, Examples) {
  const double e8 = std::exp(8.0);
  EXPECT_NEAR(analytic_two_qubit_concurrence(1.0, 0.0, 1.0), (e8 - 3.0) / (e8 + 3.0), 1e-15);
  EXPECT_NEAR(analytic_two_qubit_concurrence(1.0, 0.0, 1.0), 0.997989, 1e-6);
  const double tc = 8.0 / std::log(3.0);
  for (double b : {0.0, 1.0, 4.0, 6.0}) {
    EXPECT_NEAR(analytic_two_qubit_concurrence(1.0, b, tc), 0.0, 1e-15);
    EXPECT_EQ(analytic_two_qubit_concurrence(-1.0, b, 1.0), 0.0);
  }
  EXPECT_THROW(analytic_two_qubit_concurrence(1.0, 0.0, 0.0), DomainError);
  // Extreme ratios stay finite.
  EXPECT_NEAR(analytic_two_qubit_concurrence(2.0, 0.0, 0.01), 1.0, 1e-15);
  EXPECT_NEAR(analytic_two_qubit_concurrence(1.0, 6.0, 0.01), 0.0, 1e-15);
}

TEST(AnalyticConcurrence, MatchesNumericTwoSpinPipeline) {
  for (double j : {0.5, 1.0, 2.0}) {
    const auto spectrum = diagonalize_chain(2, j);
    for (int bi = 0; bi <= 12; ++bi) {
      const double b = 0.5 * bi;
      for (int ti = 1; ti <= 200; ++ti) {
        const double kT = 0.05 * ti;
        const double numeric = concurrence(pair_rdm(gibbs_weights(spectrum, b, kT), 0, 1)).concurrence;
        EXPECT_NEAR(numeric, analytic_two_qubit_concurrence(j, b, kT), 1e-10)
            << "J=" << j << " B=" << b << " kT=" << kT;
      }
    }
  }
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(pure(singlet())), 2.0, 1e-12);
  EXPECT_NEAR(mutual_information(pure(all_down())), 0.0, 1e-12);
  // (2/3)|psi+><psi+| + (1/3)|00><00|: joint spectrum {2/3, 1/3}, each
  // marginal diag(2/3, 1/3), so I = 2 h(1/3) - h(1/3) = h(1/3).
  const Eigen::Matrix4cd w = 2.0 / 3.0 * pure(psi_plus()).matrix() + 1.0 / 3.0 * pure(all_down()).matrix();
  const double h13 = -(1.0 / 3.0) * std::log2(1.0 / 3.0) - (2.0 / 3.0) * std::log2(2.0 / 3.0);
  EXPECT_NEAR(mutual_information(PairDensityMatrix(w)), h13, 1e-12);
  EXPECT_NEAR(mutual_information(PairDensityMatrix(w)), 0.918296, 1e-6);
}

TEST(MutualInformation, Marginals) {
  const Eigen::Matrix4cd rho = pure(Eigen::Vector4cd(0, 0, 1, 0)).matrix();  // site i up, j down
  EXPECT_NEAR(first_site_state(rho)(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(second_site_state(rho)(0, 0).real(), 1.0, 1e-15);
}

TEST(Chsh, Examples) {
  const auto s = chsh_quantity(pure(singlet()));
  EXPECT_LT((s.correlations + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(s.m, 2.0, 1e-12);
  EXPECT_NEAR(s.max_bell_value(), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(s.violated);

  const auto p = chsh_quantity(pure(all_down()));
  Eigen::Matrix3d zz = Eigen::Matrix3d::Zero();
  zz(2, 2) = 1.0;
  EXPECT_LT((p.correlations - zz).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(p.m, 1.0, 1e-12);
  EXPECT_FALSE(p.violated);

  const auto mixed = chsh_quantity(PairDensityMatrix(Eigen::Matrix4cd::Identity() / 4.0));
  EXPECT_NEAR(mixed.m, 0.0, 1e-15);
  EXPECT_FALSE(mixed.violated);
}

TEST(WState, Amplitudes) {
  const auto w2 = w_state(2);
  EXPECT_NEAR(w2.amplitudes(1).real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(w2.amplitudes(2).real(), kInvSqrt2, 1e-15);
  const auto w3 = w_state(3);
  for (int k : {1, 2, 4}) EXPECT_NEAR(w3.amplitudes(k).real(), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(w3.amplitudes.norm(), 1.0, 1e-15);
  EXPECT_THROW(w_state(1), ParameterError);
}

TEST(WState, PairConcurrenceIsTwoOverN) {
  EXPECT_NEAR(concurrence(pure_state_pair_rdm(w_state(4), 0, 1)).concurrence, 0.5, 1e-12);
  for (int n = 2; n <= 13; ++n) {
    const auto w = w_state(n);
    for (int d = 1; d <= n / 2; ++d) {
      EXPECT_NEAR(concurrence(pure_state_pair_rdm(w, 0, d)).concurrence, 2.0 / n, 1e-12) << n << "," << d;
    }
  }
}

TEST(WState, OneMagnonGroundStateHasFlatAmplitudes) {
  // Even rings: the one-up ground state is the momentum-pi magnon, which has
  // alternating signs but the same |amplitude| and pair concurrence as W.
  for (int n : {4, 6, 8, 10}) {
    const auto spectrum = diagonalize_chain(n, 1.0);
    const Eigen::VectorXd ground = spectrum.sector(1).vectors.col(0);
    for (Eigen::Index k = 0; k < ground.size(); ++k)
      EXPECT_NEAR(std::abs(ground(k)), 1.0 / std::sqrt(n), 1e-12);
    const auto rho = pure_state_pair_rdm(spectrum.basis(1), ground.cast<cd>(), 0, n / 2);
    EXPECT_NEAR(concurrence(rho).concurrence, 2.0 / n, 1e-12);
  }
}

TEST(ProjectRemainingDown, WStateProjectsOntoPsiPlus) {
  const auto out = project_remaining_down(w_state(4), 0, 1);
  EXPECT_NEAR(out.probability, 0.5, 1e-14);
  EXPECT_LT((out.pair_state - psi_plus()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(concurrence(out.density()).concurrence, 1.0, 1e-12);
}

TEST(ProjectRemainingDown, ProductStates) {
  StateVector down{5, Eigen::VectorXcd::Zero(32)};
  down.amplitudes(0) = 1.0;
  const auto out = project_remaining_down(down, 1, 3);
  EXPECT_NEAR(out.probability, 1.0, 1e-15);
  EXPECT_LT((out.pair_state - all_down()).cwiseAbs().maxCoeff(), 1e-15);

  StateVector up{4, Eigen::VectorXcd::Zero(16)};
  up.amplitudes(15) = 1.0;
  EXPECT_THROW(project_remaining_down(up, 0, 1), MeasurementOutcomeError);
  EXPECT_THROW(project_remaining_down(up, 2, 2), ParameterError);
}

TEST(PairMeasures, EntanglementImpliesCorrelationOnThermalStates) {
  for (int n : {2, 4, 6, 7}) {
    const auto spectrum = diagonalize_chain(n, 1.0);
    for (double b : {0.0, 1.5, 3.0, 3.8, 4.4}) {
      for (double kT : {0.05, 0.3, 1.0, 3.0}) {
        const auto g = gibbs_weights(spectrum, b, kT);
        for (int d = 1; d <= n / 2; ++d) {
          const auto m = compute_pair_measures(pair_rdm(g, 0, d));
          EXPECT_EQ(m.eof > 0.0, m.concurrence > 0.0);
          if (m.concurrence > 1e-9) EXPECT_GT(m.mutual_information, 0.0);
          EXPECT_GE(m.mutual_information, 0.0);
          EXPECT_LE(m.mutual_information, 2.0);
        }
      }
    }
  }
}
