/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmlkit/circuit.hpp"
#include "qmlkit/random.hpp"

namespace qmlkit {

using Amplitude = std::complex<double>;

/// Dense simulation refuses wider registers.
inline constexpr std::size_t kMaxQubits = 24;

/**
 * Dense n-qubit pure state.
 *
 * Index convention: qubit q is bit q of the basis index (qubit 0 is the least
 * significant bit), so X on qubit 0 of |00> gives index 1.
 */
class Statevector {
public:
  /// |0...0> on `num_qubits` qubits.
  explicit Statevector(std::size_t num_qubits);

  static Statevector basis_state(std::size_t num_qubits, std::uint64_t index);

  /// Takes ownership of `amplitudes`; the length must be a power of two. Not renormalized.
  static Statevector from_amplitudes(std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  Amplitude operator[](std::size_t i) const { return amplitudes_[i]; }

  /// Applies one gate; its angle (if any) must already be constant.
  void apply(const Gate &gate);

  /// Applies `[[m00, m01], [m10, m11]]` to `target` on the subspace where all controls hold.
  void apply_matrix(std::size_t target, const std::array<Amplitude, 4> &m,
                    std::span<const Control> controls = {});

  std::vector<double> probabilities() const;
  double norm_squared() const;

  /// <this|other>
  Amplitude inner(const Statevector &other) const;

private:
  Statevector() = default;

  std::size_t num_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// Applies every gate of a fully bound circuit to |0...0>.
Statevector run(const Circuit &circuit);

/// Applies every gate of a fully bound circuit to `initial`.
Statevector run(const Circuit &circuit, Statevector initial);

struct PauliTerm {
  double coefficient = 1.0;
  /// Character q acts on qubit q; letters from {I, X, Y, Z}.
  std::string paulis;
};

/**
 * Real-weighted sum of Pauli strings.
 *
 * Strings are written qubit 0 first, matching the bitstring convention of
 * QuasiDistribution: "ZI" is Z on qubit 0 and identity on qubit 1.
 */
class PauliObservable {
public:
  explicit PauliObservable(std::vector<PauliTerm> terms);

  /// Single Pauli letter on `qubit`, identity elsewhere.
  static PauliObservable single(std::size_t num_qubits, char pauli, std::size_t qubit,
                                double coefficient = 1.0);

  /**
   * Parses text such as `"ZI"`, `"0.5*ZZ + -0.25*XI"` or `"ZI - 2*IX"`.
   * Terms are separated by `+` or `-`; a coefficient is optional and joined by `*`.
   */
  static PauliObservable parse(std::string_view text);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<PauliTerm> &terms() const noexcept { return terms_; }

  /// Sum of |coefficient|; every expectation lies in [-bound, bound].
  double bound() const;

  std::string to_string() const;

private:
  std::size_t num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Exact expectation value sum_t c_t <state|P_t|state>.
double expectation(const Statevector &state, const PauliObservable &obs);

/// Shot budget of a primitive call. `shots` absent means exact evaluation.
struct Execution {
  std::optional<std::size_t> shots;
  std::uint64_t seed = 0;

  bool exact() const noexcept { return !shots.has_value(); }

  static Execution exact_mode() { return {}; }
  static Execution sampled(std::size_t shots, std::uint64_t seed) { return {shots, seed}; }
};

/// Outcome probabilities keyed by basis index. Bitstrings render qubit 0 first.
class QuasiDistribution {
public:
  QuasiDistribution(std::size_t num_qubits, std::optional<std::size_t> shots,
                    std::map<std::uint64_t, double> probabilities);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::optional<std::size_t> shots() const noexcept { return shots_; }
  const std::map<std::uint64_t, double> &probabilities() const noexcept { return probs_; }

  /// 0 for outcomes never observed.
  double probability(std::uint64_t outcome) const;

  std::string bitstring(std::uint64_t outcome) const;

private:
  std::size_t num_qubits_;
  std::optional<std::size_t> shots_;
  std::map<std::uint64_t, double> probs_;
};

/// Renders `index` as `num_qubits` characters, character q holding bit q.
std::string to_bitstring(std::uint64_t index, std::size_t num_qubits);

/// Inverse of `to_bitstring`.
std::uint64_t from_bitstring(std::string_view bits);

/// Per-outcome counts of `shots` independent draws from `probabilities`.
std::vector<std::size_t> sample_counts(std::span<const double> probabilities, std::size_t shots,
                                       Rng &rng);

/**
 * Estimator primitive: <obs> for `circuit` bound to `values`.
 *
 * In shot mode each Pauli term is measured in its own rotated basis with the
 * full shot budget, using the stream derived from (seed, term index). Terms
 * made only of identities contribute their coefficient exactly.
 */
double estimator(const Circuit &circuit, const PauliObservable &obs, std::span<const double> values,
                 const Execution &exec = {});

/// Estimator over an already prepared state.
double estimate(const Statevector &state, const PauliObservable &obs, const Execution &exec = {});

/// Sampler primitive: exact probabilities or seeded empirical frequencies.
QuasiDistribution sampler(const Circuit &circuit, std::span<const double> values,
                          const Execution &exec = {});

/// Sampler over an already prepared state.
QuasiDistribution sample(const Statevector &state, const Execution &exec = {});

} // namespace qmlkit
