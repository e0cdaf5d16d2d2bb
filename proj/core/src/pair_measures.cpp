#include "spinchain/pair_measures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>
#include <string>

#include "spinchain/errors.hpp"
#include "spinchain/numerics.hpp"

namespace spinchain {

namespace {

using cd = std::complex<double>;

constexpr double kProductNegativeTol = 1e-12;
constexpr double kMutualInfoSlack = 1e-9;
constexpr double kProbabilityFloor = 1e-14;

// sigma_y x sigma_y over {|00>, |01>, |10>, |11>}.
Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

// Principal square root of a PSD 4x4 matrix, taken separately on each block
// of the sparsity pattern. Isolated populations then get an exact sqrt
// instead of the sqrt of an eigensolver residual, which matters because
// lambda values like sqrt(rho_00 rho_11) enter the concurrence linearly.
Eigen::Matrix4cd psd_sqrt(const Eigen::Matrix4cd& rho) {
  std::array<int, 4> component{0, 1, 2, 3};
  auto find = [&](int a) {
    while (component[static_cast<std::size_t>(a)] != a) a = component[static_cast<std::size_t>(a)];
    return a;
  };
  for (int r = 0; r < 4; ++r) {
    for (int c = r + 1; c < 4; ++c) {
      if (rho(r, c) != 0.0 || rho(c, r) != 0.0) component[static_cast<std::size_t>(find(c))] = find(r);
    }
  }

  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int root = 0; root < 4; ++root) {
    if (find(root) != root) continue;
    std::vector<int> members;
    for (int a = 0; a < 4; ++a) {
      if (find(a) == root) members.push_back(a);
    }
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXcd block(m, m);
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c)
        block(r, c) = rho(members[static_cast<std::size_t>(r)], members[static_cast<std::size_t>(c)]);
    Eigen::MatrixXcd root_block;
    if (m == 1) {
      root_block = Eigen::MatrixXcd::Constant(1, 1, std::sqrt(std::max(block(0, 0).real(), 0.0)));
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block);
      const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
      root_block = eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().adjoint();
    }
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c)
        out(members[static_cast<std::size_t>(r)], members[static_cast<std::size_t>(c)]) = root_block(r, c);
  }
  return out;
}

std::array<Eigen::Matrix2cd, 3> paulis() {
  Eigen::Matrix2cd x, y, z;
  x << 0, 1, 1, 0;
  y << 0, cd(0, -1), cd(0, 1), 0;
  // Bit 1 (spin up) carries sigma_z = +1, and |0> is the first basis vector.
  z << -1, 0, 0, 1;
  return {x, y, z};
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  }
  return out;
}

}  // namespace

ConcurrenceResult concurrence(const PairDensityMatrix& rho) {
  rho.validate();
  const Eigen::Matrix4cd& r = rho.matrix();
  const Eigen::Matrix4cd yy = spin_flip();
  const Eigen::Matrix4cd flipped = yy * r.conjugate() * yy;

  // Product eigenvalues only screen for invalid input; the lambdas come from
  // singular values of sqrt(rho) YY sqrt(rho)*, whose squares are the same
  // spectrum without the sqrt(roundoff) blow-up of tiny eigenvalues.
  const Eigen::Vector4cd product = (r * flipped).eigenvalues();
  for (const cd& mu : product) {
    if (mu.real() < -kProductNegativeTol) {
      throw NumericError("concurrence: rho * rho~ has eigenvalue " + std::to_string(mu.real()));
    }
  }

  const Eigen::Matrix4cd root = psd_sqrt(r);
  const Eigen::Matrix4cd m = root * yy * root.conjugate();
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(m).singularValues();

  ConcurrenceResult out;
  for (int k = 0; k < 4; ++k) out.lambda[static_cast<std::size_t>(k)] = sv(k);
  std::sort(out.lambda.begin(), out.lambda.end(), std::greater<>());
  const double c = out.lambda[0] - out.lambda[1] - out.lambda[2] - out.lambda[3];
  out.concurrence = c < kConcurrenceFlush ? 0.0 : std::min(c, 1.0);
  return out;
}

double eof_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DomainError("eof_from_concurrence: C = " + std::to_string(c) + " outside [0, 1]");
  }
  if (c == 0.0) return 0.0;
  // Smaller root (1 - sqrt(1 - C^2)) / 2 without cancellation, so that tiny
  // C still gives a positive E.
  const double lo = c * c / (2.0 * (1.0 + std::sqrt((1.0 - c) * (1.0 + c))));
  if (lo >= 0.5) return 1.0;
  return -lo * std::log2(lo) - (1.0 - lo) * std::log1p(-lo) / std::numbers::ln2;
}

double analytic_two_qubit_concurrence(double coupling, double field, double kT) {
  if (!(kT > 0.0)) {
    throw DomainError("analytic concurrence needs kT > 0; use the numeric kT = 0 path");
  }
  // Divide through by e^{8J/kT} when it dominates to keep everything finite.
  const double x = 8.0 * coupling / kT;
  const double b = 2.0 * std::abs(field) / kT;
  if (x <= std::log(3.0)) return 0.0;
  if (x >= b) {
    const double numerator = 1.0 - 3.0 * std::exp(-x);
    const double denominator = 1.0 + std::exp(-x) * (1.0 + std::exp(-b)) + std::exp(b - x);
    return std::max(0.0, numerator / denominator);
  }
  const double numerator = std::exp(x - b) - 3.0 * std::exp(-b);
  const double denominator = std::exp(-b) + std::exp(-2.0 * b) + 1.0 + std::exp(x - b);
  return std::max(0.0, numerator / denominator);
}

Eigen::Matrix2cd first_site_state(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd out;
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) out(a, c) = rho(2 * a, 2 * c) + rho(2 * a + 1, 2 * c + 1);
  }
  return out;
}

Eigen::Matrix2cd second_site_state(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd out;
  for (int b = 0; b < 2; ++b) {
    for (int d = 0; d < 2; ++d) out(b, d) = rho(b, d) + rho(2 + b, 2 + d);
  }
  return out;
}

double mutual_information(const PairDensityMatrix& rho) {
  rho.validate();
  const Eigen::Matrix4cd& r = rho.matrix();
  const double i = von_neumann_entropy(first_site_state(r)) +
                   von_neumann_entropy(second_site_state(r)) - von_neumann_entropy(r);
  if (i < -kMutualInfoSlack) {
    throw NumericError("mutual information came out negative: " + std::to_string(i));
  }
  return std::clamp(i, 0.0, 2.0);
}

double ChshResult::max_bell_value() const { return 2.0 * std::sqrt(m); }

ChshResult chsh_quantity(const PairDensityMatrix& rho) {
  rho.validate();
  const auto sigma = paulis();
  ChshResult out;
  for (int n = 0; n < 3; ++n) {
    for (int k = 0; k < 3; ++k) {
      out.correlations(n, k) =
          (rho.matrix() * kron(sigma[static_cast<std::size_t>(n)], sigma[static_cast<std::size_t>(k)]))
              .trace()
              .real();
    }
  }
  const Eigen::Matrix3d tt = out.correlations.transpose() * out.correlations;
  const Eigen::Vector3d u = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(tt).eigenvalues();
  out.m = std::max(0.0, u(1) + u(2));
  out.violated = out.m > 1.0 + kChshViolationTol;
  return out;
}

PairMeasures compute_pair_measures(const PairDensityMatrix& rho) {
  PairMeasures out;
  out.concurrence = concurrence(rho).concurrence;
  out.eof = eof_from_concurrence(out.concurrence);
  out.mutual_information = mutual_information(rho);
  out.chsh_m = chsh_quantity(rho).m;
  return out;
}

StateVector w_state(int n_spins) {
  if (n_spins < kMinSpins || n_spins > kMaxSpins) {
    throw ParameterError("w_state needs 2 <= N <= 14");
  }
  StateVector out{n_spins, Eigen::VectorXcd::Zero(Eigen::Index{1} << n_spins)};
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_spins));
  for (int site = 0; site < n_spins; ++site) out.amplitudes(Eigen::Index{1} << site) = amp;
  return out;
}

PairDensityMatrix ProjectionOutcome::density() const {
  return PairDensityMatrix(pair_state * pair_state.adjoint());
}

ProjectionOutcome project_remaining_down(const StateVector& state, int i, int j) {
  const int n = state.n_spins;
  if (n < kMinSpins || n > kMaxSpins || state.amplitudes.size() != (Eigen::Index{1} << n)) {
    throw ContractError("state vector size does not match 2^N");
  }
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw ParameterError("project_remaining_down: invalid pair (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
  }
  if (std::abs(state.amplitudes.norm() - 1.0) > 1e-10) {
    throw StateValidityError("project_remaining_down: state is not normalized");
  }
  // All other sites down means all other bits clear.
  ProjectionOutcome out;
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned b = 0; b < 2; ++b) {
      out.pair_state(static_cast<Eigen::Index>(2 * a + b)) =
          state.amplitudes(static_cast<Eigen::Index>((a << i) | (b << j)));
    }
  }
  out.probability = out.pair_state.squaredNorm();
  if (out.probability < kProbabilityFloor) {
    throw MeasurementOutcomeError("outcome 'all other spins down' has zero probability");
  }
  out.pair_state /= std::sqrt(out.probability);
  return out;
}

}  // namespace spinchain
