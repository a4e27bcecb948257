// Copyright 2026 The LBCS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lbcs/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "lbcs/error.hpp"
#include "lbcs/rng.hpp"

namespace lbcs {

namespace {

constexpr std::size_t kKrylovMemoryBytes = std::size_t{1} << 30;

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{0, 0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> a) { return std::sqrt(std::abs(dot(a, a))); }

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double s, std::span<Complex> x) {
  for (Complex& c : x) c *= s;
}

}  // namespace

GroundState lanczos_ground(const ObservableSum& h, const LanczosOptions& options) {
  if (!(options.tolerance > 0.0)) throw InputError("Lanczos tolerance must be positive");
  const PauliSumOperator op(h, options.threads);
  const std::size_t dim = op.dimension();
  const std::size_t memory_cap = std::max<std::size_t>(2, kKrylovMemoryBytes / (dim * sizeof(Complex)));
  const std::size_t m = std::max<std::size_t>(
      1, std::min({options.krylov_dimension, dim, memory_cap}));

  Amplitudes start(dim);
  {
    CounterRng rng(options.seed, RngStream::kLanczosStart, 0);
    for (Complex& c : start) c = Complex(rng.normal(), rng.normal());
    scale(1.0 / norm(start), start);
  }

  GroundState result;
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<Amplitudes> basis;
  Amplitudes w(dim);
  Amplitudes hx(dim);

  for (std::size_t restart = 0; restart <= options.max_iterations; ++restart) {
    basis.clear();
    basis.push_back(start);
    std::vector<double> alpha;
    std::vector<double> beta;
    for (std::size_t j = 0; j < m; ++j) {
      op.apply(basis[j], w);
      ++result.matvecs;
      const double a = dot(basis[j], w).real();
      alpha.push_back(a);
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        for (const Amplitudes& v : basis) axpy(-dot(v, w), v, w);
      }
      const double b = norm(w);
      if (j + 1 == m || b <= 1e-13 * std::max(1.0, std::abs(a))) break;
      beta.push_back(b);
      basis.emplace_back(w);
      scale(1.0 / b, basis.back());
    }

    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub(std::max<Eigen::Index>(k - 1, 0));
    for (Eigen::Index i = 0; i + 1 < k; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd y = tri.eigenvectors().col(0);

    Amplitudes x(dim, Complex{0, 0});
    for (Eigen::Index i = 0; i < k; ++i) axpy(y[i], basis[static_cast<std::size_t>(i)], x);
    scale(1.0 / norm(x), x);

    op.apply(x, hx);
    ++result.matvecs;
    const double energy = dot(x, hx).real();
    axpy(-energy, x, hx);
    const double residual = norm(hx);
    result.restarts = restart;
    if (residual < best_residual) best_residual = residual;
    if (residual <= options.tolerance) {
      result.energy = energy;
      result.residual = residual;
      result.state = StateVector::normalized(h.num_qubits(), std::move(x));
      return result;
    }
    start = std::move(x);
  }
  throw ConvergenceError("Lanczos did not reach tolerance; best residual " +
                             std::to_string(best_residual),
                         best_residual);
}

}  // namespace lbcs
