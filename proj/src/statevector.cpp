/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qmlkit/error.hpp"

namespace qmlkit {

namespace {

using Mat2 = std::array<Amplitude, 4>;

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr Amplitude kI{0.0, 1.0};

Mat2 hadamard() { return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}; }
Mat2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }
Mat2 s_dagger() { return {1.0, 0.0, 0.0, -kI}; }

// R(theta) = exp(-i theta P / 2)
Mat2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, -kI * s, -kI * s, c};
}
Mat2 ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, -s, s, c};
}
Mat2 rz(double theta) {
  return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

void check_width(std::size_t num_qubits) {
  if (num_qubits == 0) {
    throw ValidationError("statevector needs at least one qubit");
  }
  if (num_qubits > kMaxQubits) {
    throw ValidationError("dense simulation is limited to " + std::to_string(kMaxQubits) +
                          " qubits, got " + std::to_string(num_qubits));
  }
}

struct PauliMasks {
  std::uint64_t flip = 0;  // X or Y
  std::uint64_t phase = 0; // Z or Y
  unsigned y_count = 0;
};

PauliMasks masks_of(const std::string &paulis) {
  PauliMasks m;
  for (std::size_t q = 0; q < paulis.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (paulis[q]) {
    case 'X':
      m.flip |= bit;
      break;
    case 'Y':
      m.flip |= bit;
      m.phase |= bit;
      ++m.y_count;
      break;
    case 'Z':
      m.phase |= bit;
      break;
    default:
      break;
    }
  }
  return m;
}

double term_expectation(std::span<const Amplitude> psi, const PauliMasks &m) {
  // P|i> = i^y (-1)^{popcount(i & phase)} |i ^ flip>
  Amplitude acc = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double sign = (std::popcount(i & m.phase) & 1U) ? -1.0 : 1.0;
    acc += std::conj(psi[i ^ m.flip]) * sign * psi[i];
  }
  static constexpr std::array<Amplitude, 4> kPowersOfI{Amplitude{1, 0}, Amplitude{0, 1},
                                                       Amplitude{-1, 0}, Amplitude{0, -1}};
  return (kPowersOfI[m.y_count % 4] * acc).real();
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto *begin = text.data();
  const auto *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

} // namespace

Statevector::Statevector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  check_width(num_qubits);
  amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

Statevector Statevector::basis_state(std::size_t num_qubits, std::uint64_t index) {
  Statevector s(num_qubits);
  if (index >= s.dimension()) {
    throw ValidationError("basis index " + std::to_string(index) + " out of range");
  }
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

Statevector Statevector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
    throw ValidationError("amplitude count must be a power of two");
  }
  Statevector s;
  s.num_qubits_ = static_cast<std::size_t>(std::countr_zero(amplitudes.size()));
  check_width(s.num_qubits_);
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

void Statevector::apply_matrix(std::size_t target, const std::array<Amplitude, 4> &m,
                               std::span<const Control> controls) {
  std::uint64_t ctrl_mask = 0;
  std::uint64_t ctrl_value = 0;
  for (const auto &c : controls) {
    ctrl_mask |= std::uint64_t{1} << c.qubit;
    if (c.value != 0) {
      ctrl_value |= std::uint64_t{1} << c.qubit;
    }
  }
  const std::uint64_t bit = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & bit) != 0 || (i & ctrl_mask) != ctrl_value) {
      continue;
    }
    const std::uint64_t j = i | bit;
    const Amplitude a0 = amplitudes_[i];
    const Amplitude a1 = amplitudes_[j];
    amplitudes_[i] = m[0] * a0 + m[1] * a1;
    amplitudes_[j] = m[2] * a0 + m[3] * a1;
  }
}

void Statevector::apply(const Gate &gate) {
  const std::size_t target = gate.targets.at(0);
  const auto check = [&](std::size_t q) {
    if (q >= num_qubits_) {
      throw ValidationError("gate qubit " + std::to_string(q) + " outside a " +
                            std::to_string(num_qubits_) + "-qubit state");
    }
  };
  check(target);
  for (const auto &c : gate.controls) {
    check(c.qubit);
  }
  const double theta = gate.angle ? gate.angle->constant_value() : 0.0;
  switch (gate.kind) {
  case GateKind::H:
    apply_matrix(target, hadamard());
    break;
  case GateKind::X:
  case GateKind::CX:
    apply_matrix(target, pauli_x(), gate.controls);
    break;
  case GateKind::CZ:
    apply_matrix(target, pauli_z(), gate.controls);
    break;
  case GateKind::RX:
    apply_matrix(target, rx(theta));
    break;
  case GateKind::RY:
  case GateKind::CRY:
    apply_matrix(target, ry(theta), gate.controls);
    break;
  case GateKind::RZ:
    apply_matrix(target, rz(theta));
    break;
  }
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                 [](const Amplitude &a) { return std::norm(a); });
  return p;
}

double Statevector::norm_squared() const {
  double acc = 0.0;
  for (const auto &a : amplitudes_) {
    acc += std::norm(a);
  }
  return acc;
}

Amplitude Statevector::inner(const Statevector &other) const {
  if (other.num_qubits_ != num_qubits_) {
    throw ValidationError("inner product of states with different widths");
  }
  Amplitude acc = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  }
  return acc;
}

Statevector run(const Circuit &circuit) { return run(circuit, Statevector(circuit.num_qubits())); }

Statevector run(const Circuit &circuit, Statevector initial) {
  if (circuit.num_parameters() != 0) {
    throw ValidationError("cannot run a circuit with " + std::to_string(circuit.num_parameters()) +
                          " unbound parameters (first: '" + circuit.parameters().front().name() +
                          "')");
  }
  if (initial.num_qubits() != circuit.num_qubits()) {
    throw ValidationError("initial state width does not match the circuit");
  }
  for (const auto &g : circuit.gates()) {
    initial.apply(g);
  }
  return initial;
}

PauliObservable::PauliObservable(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw ValidationError("observable needs at least one term");
  }
  num_qubits_ = terms_.front().paulis.size();
  if (num_qubits_ == 0) {
    throw ValidationError("Pauli string must not be empty");
  }
  for (const auto &t : terms_) {
    if (t.paulis.size() != num_qubits_) {
      throw ValidationError("Pauli strings differ in length: '" + terms_.front().paulis + "' vs '" +
                            t.paulis + "'");
    }
    if (t.paulis.find_first_not_of("IXYZ") != std::string::npos) {
      throw ValidationError("Pauli string '" + t.paulis + "' has letters outside {I, X, Y, Z}");
    }
    if (!std::isfinite(t.coefficient)) {
      throw ValidationError("observable coefficient is not finite");
    }
  }
}

PauliObservable PauliObservable::single(std::size_t num_qubits, char pauli, std::size_t qubit,
                                        double coefficient) {
  if (qubit >= num_qubits) {
    throw ValidationError("observable qubit out of range");
  }
  std::string s(num_qubits, 'I');
  s[qubit] = pauli;
  return PauliObservable({{coefficient, s}});
}

PauliObservable PauliObservable::parse(std::string_view text) {
  std::vector<PauliTerm> terms;
  std::string_view rest = trim(text);
  if (rest.empty()) {
    throw ValidationError("empty observable");
  }
  while (!rest.empty()) {
    double sign = 1.0;
    if (rest.front() == '+' || rest.front() == '-') {
      if (rest.front() == '-') {
        sign = -1.0;
      }
      rest = trim(rest.substr(1));
    }
    // A term ends at the next '+' or '-' that is not part of a number exponent/sign.
    std::size_t end = 0;
    while (end < rest.size()) {
      const char ch = rest[end];
      if ((ch == '+' || ch == '-') && end > 0 && rest[end - 1] != 'e' && rest[end - 1] != 'E' &&
          rest[end - 1] != '*') {
        break;
      }
      ++end;
    }
    auto term = trim(rest.substr(0, end));
    rest = trim(rest.substr(end));
    double coefficient = 1.0;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      coefficient = parse_double(trim(term.substr(0, star)), "coefficient");
      term = trim(term.substr(star + 1));
    }
    terms.push_back({sign * coefficient, std::string(term)});
  }
  return PauliObservable(std::move(terms));
}

double PauliObservable::bound() const {
  double acc = 0.0;
  for (const auto &t : terms_) {
    acc += std::abs(t.coefficient);
  }
  return acc;
}

std::string PauliObservable::to_string() const {
  std::string out;
  for (const auto &t : terms_) {
    if (!out.empty()) {
      out += " + ";
    }
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t.coefficient);
    out.append(buf, ptr);
    out += '*';
    out += t.paulis;
  }
  return out;
}

double expectation(const Statevector &state, const PauliObservable &obs) {
  if (state.num_qubits() != obs.num_qubits()) {
    throw ValidationError("observable acts on " + std::to_string(obs.num_qubits()) +
                          " qubits but the state has " + std::to_string(state.num_qubits()));
  }
  double acc = 0.0;
  for (const auto &t : obs.terms()) {
    acc += t.coefficient * term_expectation(state.amplitudes(), masks_of(t.paulis));
  }
  return acc;
}

QuasiDistribution::QuasiDistribution(std::size_t num_qubits, std::optional<std::size_t> shots,
                                     std::map<std::uint64_t, double> probabilities)
    : num_qubits_(num_qubits), shots_(shots), probs_(std::move(probabilities)) {}

double QuasiDistribution::probability(std::uint64_t outcome) const {
  auto it = probs_.find(outcome);
  return it == probs_.end() ? 0.0 : it->second;
}

std::string QuasiDistribution::bitstring(std::uint64_t outcome) const {
  return to_bitstring(outcome, num_qubits_);
}

std::string to_bitstring(std::uint64_t index, std::size_t num_qubits) {
  std::string s(num_qubits, '0');
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if ((index >> q) & 1U) {
      s[q] = '1';
    }
  }
  return s;
}

std::uint64_t from_bitstring(std::string_view bits) {
  if (bits.size() > 64) {
    throw ValidationError("bitstring longer than 64 characters");
  }
  std::uint64_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      index |= std::uint64_t{1} << q;
    } else if (bits[q] != '0') {
      throw ValidationError("bitstring '" + std::string(bits) + "' has characters other than 0/1");
    }
  }
  return index;
}

std::vector<std::size_t> sample_counts(std::span<const double> probabilities, std::size_t shots,
                                       Rng &rng) {
  std::vector<double> cdf(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
  const double total = cdf.empty() ? 0.0 : cdf.back();
  if (!(total > 0.0)) {
    throw ValidationError("cannot sample from an all-zero distribution");
  }
  std::vector<std::size_t> counts(probabilities.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    // Skip zero-probability outcomes sitting at the top of a flat CDF tail.
    idx = std::min(idx, cdf.size() - 1);
    while (probabilities[idx] <= 0.0 && idx > 0) {
      --idx;
    }
    ++counts[idx];
  }
  return counts;
}

double estimate(const Statevector &state, const PauliObservable &obs, const Execution &exec) {
  if (exec.exact()) {
    return expectation(state, obs);
  }
  if (state.num_qubits() != obs.num_qubits()) {
    throw ValidationError("observable width does not match the state");
  }
  const std::size_t shots = *exec.shots;
  if (shots == 0) {
    throw ValidationError("shots must be positive");
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < obs.terms().size(); ++t) {
    const auto &term = obs.terms()[t];
    if (term.paulis.find_first_not_of('I') == std::string::npos) {
      acc += term.coefficient;
      continue;
    }
    Statevector rotated = state;
    std::uint64_t measured = 0;
    for (std::size_t q = 0; q < term.paulis.size(); ++q) {
      switch (term.paulis[q]) {
      case 'X':
        rotated.apply_matrix(q, hadamard());
        break;
      case 'Y':
        rotated.apply_matrix(q, s_dagger());
        rotated.apply_matrix(q, hadamard());
        break;
      default:
        break;
      }
      if (term.paulis[q] != 'I') {
        measured |= std::uint64_t{1} << q;
      }
    }
    Rng rng = Rng::derive(exec.seed, t);
    const auto counts = sample_counts(rotated.probabilities(), shots, rng);
    long long signed_total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const long long c = static_cast<long long>(counts[i]);
      signed_total += (std::popcount(i & measured) & 1U) ? -c : c;
    }
    acc += term.coefficient * static_cast<double>(signed_total) / static_cast<double>(shots);
  }
  return acc;
}

double estimator(const Circuit &circuit, const PauliObservable &obs, std::span<const double> values,
                 const Execution &exec) {
  return estimate(run(bind(circuit, values)), obs, exec);
}

QuasiDistribution sample(const Statevector &state, const Execution &exec) {
  const auto probs = state.probabilities();
  std::map<std::uint64_t, double> out;
  if (exec.exact()) {
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] > 0.0) {
        out.emplace(i, probs[i]);
      }
    }
    return {state.num_qubits(), std::nullopt, std::move(out)};
  }
  const std::size_t shots = *exec.shots;
  if (shots == 0) {
    throw ValidationError("shots must be positive");
  }
  Rng rng(exec.seed);
  const auto counts = sample_counts(probs, shots, rng);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      out.emplace(i, static_cast<double>(counts[i]) / static_cast<double>(shots));
    }
  }
  return {state.num_qubits(), shots, std::move(out)};
}

QuasiDistribution sampler(const Circuit &circuit, std::span<const double> values,
                          const Execution &exec) {
  return sample(run(bind(circuit, values)), exec);
}

} // namespace qmlkit
