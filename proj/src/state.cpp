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

#include "lbcs/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include "lbcs/error.hpp"
#include "lbcs/parallel.hpp"

namespace lbcs {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kImagTolerance = 1e-10;
constexpr std::size_t kChunk = 4096;

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

double parity_sign(std::uint64_t v) noexcept { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

void check_state_qubits(std::size_t n) {
  if (n == 0 || n > kMaxStateQubits) {
    throw InputError("statevector qubit count must be in [1, " +
                     std::to_string(kMaxStateQubits) + "]");
  }
}

/// Index-space form of a Pauli string: P|b> = phase * sign(b & z) |b ^ x>.
struct IndexPauli {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  Complex phase{1, 0};
};

IndexPauli to_index_pauli(const PauliString& p) {
  const std::size_t n = p.num_qubits();
  return IndexPauli{qubit_mask_to_index_mask(p.x_mask(), n),
                    qubit_mask_to_index_mask(p.z_mask(), n),
                    kIPow[std::popcount(p.y_mask()) & 3]};
}

/// <v|P|v> as a complex number.
Complex raw_expectation(const StateVector& v, const PauliString& p) {
  if (p.num_qubits() != v.num_qubits()) throw DimensionMismatch(v.num_qubits(), p.num_qubits());
  const IndexPauli ip = to_index_pauli(p);
  const auto& a = v.amplitudes();
  Complex sum{0, 0};
  for (std::size_t b = 0; b < a.size(); ++b) {
    sum += std::conj(a[b ^ ip.x]) * (parity_sign(b & ip.z) * a[b]);
  }
  return ip.phase * sum;
}

double real_or_throw(Complex value) {
  if (std::abs(value.imag()) > kImagTolerance) {
    throw NumericalError("expectation value has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace

StateVector::StateVector(std::size_t n, Amplitudes amplitudes)
    : n_(n), amplitudes_(std::move(amplitudes)) {
  check_state_qubits(n);
  if (amplitudes_.size() != (std::size_t{1} << n)) {
    throw InputError("statevector length " + std::to_string(amplitudes_.size()) +
                     " does not match 2^" + std::to_string(n));
  }
  double norm2 = 0.0;
  for (const Complex& c : amplitudes_) norm2 += std::norm(c);
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    throw InputError("statevector is not normalized (norm^2 = " + std::to_string(norm2) + ")");
  }
}

StateVector StateVector::normalized(std::size_t n, Amplitudes amplitudes) {
  double norm2 = 0.0;
  for (const Complex& c : amplitudes) norm2 += std::norm(c);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw InputError("cannot normalize zero vector");
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& c : amplitudes) c *= scale;
  return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::from_bits(std::string_view bits) {
  const std::size_t n = bits.size();
  check_state_qubits(n);
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError("bit string may only contain 0 and 1");
    index = (index << 1) | static_cast<std::size_t>(c == '1');
  }
  Amplitudes a(std::size_t{1} << n);
  a[index] = 1.0;
  return StateVector(n, std::move(a));
}

std::uint64_t qubit_mask_to_index_mask(std::uint64_t mask, std::size_t n) noexcept {
  std::uint64_t out = 0;
  for (; mask != 0; mask &= mask - 1) {
    const auto q = static_cast<std::size_t>(std::countr_zero(mask));
    out |= std::uint64_t{1} << (n - 1 - q);
  }
  return out;
}

StateVector apply_pauli(const PauliString& p, const StateVector& v) {
  if (p.num_qubits() != v.num_qubits()) throw DimensionMismatch(v.num_qubits(), p.num_qubits());
  const IndexPauli ip = to_index_pauli(p);
  const auto& a = v.amplitudes();
  Amplitudes out(a.size());
  for (std::size_t b = 0; b < a.size(); ++b) {
    out[b ^ ip.x] = ip.phase * parity_sign(b & ip.z) * a[b];
  }
  return StateVector(v.num_qubits(), std::move(out));
}

Amplitudes apply_observable(const ObservableSum& h, std::span<const Complex> v) {
  const std::size_t n = h.num_qubits();
  check_state_qubits(n);
  if (v.size() != (std::size_t{1} << n)) {
    throw DimensionMismatch(n, static_cast<std::size_t>(std::bit_width(v.size()) - 1));
  }
  Amplitudes out(v.size());
  for (std::size_t b = 0; b < v.size(); ++b) out[b] = h.identity_coefficient() * v[b];
  for (const Term& t : h.terms()) {
    const IndexPauli ip = to_index_pauli(t.string);
    const Complex scale = t.coefficient * ip.phase;
    for (std::size_t b = 0; b < v.size(); ++b) {
      out[b ^ ip.x] += scale * parity_sign(b & ip.z) * v[b];
    }
  }
  return out;
}

Amplitudes apply_observable(const ObservableSum& h, const StateVector& v) {
  if (h.num_qubits() != v.num_qubits()) throw DimensionMismatch(h.num_qubits(), v.num_qubits());
  return apply_observable(h, std::span<const Complex>(v.amplitudes()));
}

PauliSumOperator::PauliSumOperator(const ObservableSum& h, std::size_t threads,
                                   std::size_t memory_budget_bytes)
    : n_(h.num_qubits()),
      identity_(h.identity_coefficient()),
      threads_(threads == 0 ? default_thread_count() : threads) {
  check_state_qubits(n_);
  std::map<std::uint64_t, std::size_t> by_flip;
  for (const Term& t : h.terms()) {
    const IndexPauli ip = to_index_pauli(t.string);
    auto [it, inserted] = by_flip.try_emplace(ip.x, groups_.size());
    if (inserted) groups_.push_back(FlipGroup{ip.x, {}, {}});
    groups_[it->second].terms.emplace_back(ip.z, t.coefficient * ip.phase);
  }
  const std::size_t dim = dimension();
  if (groups_.size() * dim * sizeof(Complex) > memory_budget_bytes) return;
  for (FlipGroup& g : groups_) {
    g.diagonal.assign(dim, Complex{0, 0});
    for (const auto& [z, c] : g.terms) {
      for (std::size_t b = 0; b < dim; ++b) g.diagonal[b] += parity_sign(b & z) * c;
    }
  }
}

void PauliSumOperator::apply(std::span<const Complex> in, std::span<Complex> out) const {
  const std::size_t dim = dimension();
  if (in.size() != dim || out.size() != dim) throw DimensionMismatch(dim, in.size());
  const std::size_t chunks = (dim + kChunk - 1) / kChunk;
  parallel_chunks(chunks, threads_, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(dim, begin + kChunk);
    for (std::size_t c = begin; c < end; ++c) out[c] = identity_ * in[c];
    for (const FlipGroup& g : groups_) {
      if (!g.diagonal.empty()) {
        for (std::size_t c = begin; c < end; ++c) {
          const std::size_t b = c ^ g.flip;
          out[c] += g.diagonal[b] * in[b];
        }
      } else {
        for (std::size_t c = begin; c < end; ++c) {
          const std::size_t b = c ^ g.flip;
          Complex d{0, 0};
          for (const auto& [z, coeff] : g.terms) d += parity_sign(b & z) * coeff;
          out[c] += d * in[b];
        }
      }
    }
  });
}

double expectation(const StateVector& v, const PauliString& q) {
  return real_or_throw(raw_expectation(v, q));
}

double pair_expectation(const StateVector& v, const PauliString& q, const PauliString& r) {
  const PhasedPauli qr = product(q, r);
  const double value = real_or_throw(raw_expectation(v, qr.string));
  return (kIPow[qr.phase] * value).real();
}

void write_state_file(const std::string& path, const StateVector& v) {
  static_assert(std::endian::native == std::endian::little, "state files are little endian");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out.write("LBCSSV01", 8);
  const auto n = static_cast<std::uint32_t>(v.num_qubits());
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(v.amplitudes().data()),
            static_cast<std::streamsize>(v.dimension() * sizeof(Complex)));
  if (!out) throw InputError("failed writing " + path);
}

StateVector read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  char magic[8];
  std::uint32_t n = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in || std::memcmp(magic, "LBCSSV01", 8) != 0) {
    throw InputError(path + " is not a statevector dump");
  }
  check_state_qubits(n);
  Amplitudes a(std::size_t{1} << n);
  in.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(a.size() * sizeof(Complex)));
  if (!in) throw InputError(path + " is truncated");
  return StateVector(n, std::move(a));
}

}  // namespace lbcs
