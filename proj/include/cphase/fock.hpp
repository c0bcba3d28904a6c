// Copyright 2026 The cphase-workbench Authors
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

// Multi-photon Fock states over labelled optical modes.
//
// A mode is a (spatial port, polarization) pair. Qubits are dual-rail in
// polarization: H carries logical |0>, V carries logical |1>. States are
// sparse maps from occupation vectors to amplitudes, iterated in
// lexicographic order of the occupation vector so that output is
// reproducible.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cphase {

using Amplitude = std::complex<double>;

/// Terms whose amplitude magnitude falls below this are dropped.
inline constexpr double kPruneThreshold = 1e-14;

enum class Polarization : std::uint8_t { H = 0, V = 1 };

inline constexpr std::array<Polarization, 2> kPolarizations{Polarization::H, Polarization::V};

char to_char(Polarization pol);
Polarization polarization_from_string(std::string_view text);

struct Mode {
  std::string port;
  Polarization pol = Polarization::H;

  auto operator<=>(const Mode&) const = default;
  bool operator==(const Mode&) const = default;
};

/// "port:H" / "port:V".
std::string to_string(const Mode& mode);
Mode mode_from_string(std::string_view text);

/// Ordered, duplicate-free list of modes. The order is fixed on
/// construction and defines the layout of every FockVector over it.
class ModeSpace {
 public:
  ModeSpace() = default;
  explicit ModeSpace(std::vector<Mode> modes);

  /// Two modes per port, port order first then H before V.
  static ModeSpace from_ports(const std::vector<std::string>& ports);

  std::size_t size() const { return modes_.size(); }
  const Mode& at(std::size_t index) const { return modes_.at(index); }
  const std::vector<Mode>& modes() const { return modes_; }

  std::optional<std::size_t> find(const Mode& mode) const;
  /// Throws ModelError naming the mode when absent.
  std::size_t index_of(const Mode& mode) const;
  bool contains(const Mode& mode) const { return find(mode).has_value(); }

  /// Ports in first-appearance order.
  std::vector<std::string> ports() const;

  bool operator==(const ModeSpace& other) const { return modes_ == other.modes_; }

 private:
  std::vector<Mode> modes_;
  std::map<Mode, std::size_t> index_;
};

using ModeSpacePtr = std::shared_ptr<const ModeSpace>;

/// Photon occupation per mode of some ModeSpace.
struct FockVector {
  std::vector<std::uint8_t> occupations;

  FockVector() = default;
  explicit FockVector(std::size_t mode_count) : occupations(mode_count, 0) {}
  explicit FockVector(std::vector<std::uint8_t> occ) : occupations(std::move(occ)) {}

  std::size_t size() const { return occupations.size(); }
  unsigned total() const;
  std::uint8_t operator[](std::size_t i) const { return occupations[i]; }
  std::uint8_t& operator[](std::size_t i) { return occupations[i]; }

  auto operator<=>(const FockVector&) const = default;
  bool operator==(const FockVector&) const = default;
};

/// Sparse superposition of Fock basis vectors.
///
/// A state produced by heralding is sub-normalized and flagged as an open
/// system; nothing here ever renormalizes implicitly.
class PureState {
 public:
  using TermMap = std::map<FockVector, Amplitude>;

  explicit PureState(ModeSpacePtr space, bool open_system = false);

  /// Accumulates duplicate vectors and prunes near-zero amplitudes.
  static PureState from_terms(ModeSpacePtr space,
                              const std::vector<std::pair<FockVector, Amplitude>>& terms,
                              bool open_system = false);
  static PureState basis(ModeSpacePtr space, FockVector vector, Amplitude amplitude = 1.0);

  const ModeSpacePtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool is_open_system() const { return open_system_; }

  Amplitude amplitude(const FockVector& vector) const;

  PureState scaled(Amplitude factor) const;
  PureState as_open_system() const;

  /// Re-expresses the state over a space containing every mode of ours.
  PureState embedded(ModeSpacePtr target) const;

  /// Total photon number when every term agrees on it.
  std::optional<unsigned> photon_number() const;

 private:
  friend PureState tensor(const PureState&, const PureState&);
  friend class StateBuilder;

  ModeSpacePtr space_;
  TermMap terms_;
  bool open_system_ = false;
};

/// Accumulating builder used by element application and projection.
class StateBuilder {
 public:
  explicit StateBuilder(ModeSpacePtr space) : space_(std::move(space)) {}
  void add(const FockVector& vector, Amplitude amplitude) { acc_[vector] += amplitude; }
  void add(FockVector&& vector, Amplitude amplitude) { acc_[std::move(vector)] += amplitude; }
  PureState build(bool open_system) &&;

 private:
  ModeSpacePtr space_;
  std::map<FockVector, Amplitude> acc_;
};

double norm_squared(const PureState& state);

/// Joint state over the concatenation of both mode lists.
PureState tensor(const PureState& a, const PureState& b);

/// One conjunct of a herald: the summed occupation of `modes` equals `count`.
struct CountConstraint {
  std::vector<Mode> modes;
  unsigned count = 0;
};

/// Conjunction of exact-count constraints. Empty means "always true".
struct HeraldPattern {
  std::vector<CountConstraint> constraints;
};

struct HeraldOutcome {
  PureState state;
  double probability = 0.0;
};

/// Keeps the terms satisfying `pattern`; the result is not renormalized.
HeraldOutcome project_herald(const PureState& state, const HeraldPattern& pattern);

/// Every occupation vector over `mode_count` modes with exactly `total`
/// photons, in ascending lexicographic order.
std::vector<FockVector> enumerate_fock_vectors(std::size_t mode_count, unsigned total);

std::string to_string(const FockVector& vector, const ModeSpace& space);
std::string to_string(const PureState& state);

}  // namespace cphase
