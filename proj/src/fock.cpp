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

#include "cphase/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cphase/errors.hpp"

namespace cphase {

char to_char(Polarization pol) { return pol == Polarization::H ? 'H' : 'V'; }

Polarization polarization_from_string(std::string_view text) {
  if (text == "H" || text == "h") return Polarization::H;
  if (text == "V" || text == "v") return Polarization::V;
  throw ModelError("unknown polarization '" + std::string(text) + "' (expected H or V)");
}

std::string to_string(const Mode& mode) { return mode.port + ":" + to_char(mode.pol); }

Mode mode_from_string(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw ModelError("mode '" + std::string(text) + "' must look like <port>:H or <port>:V");
  }
  return Mode{std::string(text.substr(0, colon)), polarization_from_string(text.substr(colon + 1))};
}

ModeSpace::ModeSpace(std::vector<Mode> modes) : modes_(std::move(modes)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (!index_.emplace(modes_[i], i).second) {
      throw ModelError("duplicate mode " + to_string(modes_[i]));
    }
  }
}

ModeSpace ModeSpace::from_ports(const std::vector<std::string>& ports) {
  std::vector<Mode> modes;
  modes.reserve(2 * ports.size());
  for (const auto& port : ports) {
    for (auto pol : kPolarizations) modes.push_back(Mode{port, pol});
  }
  return ModeSpace(std::move(modes));
}

std::optional<std::size_t> ModeSpace::find(const Mode& mode) const {
  const auto it = index_.find(mode);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ModeSpace::index_of(const Mode& mode) const {
  if (auto idx = find(mode)) return *idx;
  throw ModelError("unknown mode " + to_string(mode));
}

std::vector<std::string> ModeSpace::ports() const {
  std::vector<std::string> out;
  for (const auto& m : modes_) {
    if (std::find(out.begin(), out.end(), m.port) == out.end()) out.push_back(m.port);
  }
  return out;
}

unsigned FockVector::total() const {
  return std::accumulate(occupations.begin(), occupations.end(), 0u);
}

PureState::PureState(ModeSpacePtr space, bool open_system)
    : space_(std::move(space)), open_system_(open_system) {
  if (!space_) throw ModelError("state requires a mode space");
}

PureState PureState::from_terms(ModeSpacePtr space,
                                const std::vector<std::pair<FockVector, Amplitude>>& terms,
                                bool open_system) {
  StateBuilder builder(space);
  for (const auto& [vec, amp] : terms) {
    if (vec.size() != space->size()) {
      throw ModelError("Fock vector length " + std::to_string(vec.size()) +
                       " does not match mode count " + std::to_string(space->size()));
    }
    builder.add(vec, amp);
  }
  return std::move(builder).build(open_system);
}

PureState PureState::basis(ModeSpacePtr space, FockVector vector, Amplitude amplitude) {
  return from_terms(std::move(space), {{std::move(vector), amplitude}});
}

Amplitude PureState::amplitude(const FockVector& vector) const {
  const auto it = terms_.find(vector);
  return it == terms_.end() ? Amplitude{} : it->second;
}

PureState PureState::scaled(Amplitude factor) const {
  StateBuilder builder(space_);
  for (const auto& [vec, amp] : terms_) builder.add(vec, amp * factor);
  return std::move(builder).build(open_system_);
}

PureState PureState::as_open_system() const {
  PureState out = *this;
  out.open_system_ = true;
  return out;
}

PureState PureState::embedded(ModeSpacePtr target) const {
  if (*target == *space_) {
    PureState out = *this;
    out.space_ = std::move(target);
    return out;
  }
  std::vector<std::size_t> map(space_->size());
  for (std::size_t i = 0; i < space_->size(); ++i) {
    const auto idx = target->find(space_->at(i));
    if (!idx) throw ModelError("target space lacks mode " + to_string(space_->at(i)));
    map[i] = *idx;
  }
  StateBuilder builder(target);
  for (const auto& [vec, amp] : terms_) {
    FockVector out(target->size());
    for (std::size_t i = 0; i < vec.size(); ++i) out[map[i]] = vec[i];
    builder.add(std::move(out), amp);
  }
  return std::move(builder).build(open_system_);
}

std::optional<unsigned> PureState::photon_number() const {
  std::optional<unsigned> n;
  for (const auto& [vec, amp] : terms_) {
    const unsigned t = vec.total();
    if (n && *n != t) return std::nullopt;
    n = t;
  }
  return n;
}

PureState StateBuilder::build(bool open_system) && {
  PureState out(space_, open_system);
  for (auto& [vec, amp] : acc_) {
    if (std::abs(amp) >= kPruneThreshold) out.terms_.emplace_hint(out.terms_.end(), vec, amp);
  }
  return out;
}

double norm_squared(const PureState& state) {
  double sum = 0.0;
  for (const auto& [vec, amp] : state.terms()) sum += std::norm(amp);
  return sum;
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Mode> modes = a.space()->modes();
  for (const auto& m : b.space()->modes()) {
    if (a.space()->contains(m)) {
      throw ModelError("tensor: mode " + to_string(m) + " appears in both operands");
    }
    modes.push_back(m);
  }
  auto space = std::make_shared<const ModeSpace>(std::move(modes));
  StateBuilder builder(space);
  for (const auto& [va, aa] : a.terms()) {
    for (const auto& [vb, ab] : b.terms()) {
      FockVector joint(va.occupations);
      joint.occupations.insert(joint.occupations.end(), vb.occupations.begin(),
                               vb.occupations.end());
      builder.add(std::move(joint), aa * ab);
    }
  }
  return std::move(builder).build(a.is_open_system() || b.is_open_system());
}

HeraldOutcome project_herald(const PureState& state, const HeraldPattern& pattern) {
  const auto& space = *state.space();
  std::vector<std::pair<std::vector<std::size_t>, unsigned>> resolved;
  resolved.reserve(pattern.constraints.size());
  for (const auto& c : pattern.constraints) {
    std::vector<std::size_t> idx;
    for (const auto& m : c.modes) {
      const auto i = space.find(m);
      if (!i) throw ModelError("herald references unknown mode " + to_string(m));
      idx.push_back(*i);
    }
    resolved.emplace_back(std::move(idx), c.count);
  }

  StateBuilder builder(state.space());
  for (const auto& [vec, amp] : state.terms()) {
    const bool ok = std::all_of(resolved.begin(), resolved.end(), [&](const auto& c) {
      unsigned n = 0;
      for (auto i : c.first) n += vec[i];
      return n == c.second;
    });
    if (ok) builder.add(vec, amp);
  }
  const bool open = !pattern.constraints.empty() || state.is_open_system();
  HeraldOutcome out{std::move(builder).build(open), 0.0};
  out.probability = norm_squared(out.state);
  return out;
}

std::string to_string(const FockVector& vector, const ModeSpace& space) {
  std::ostringstream os;
  os << '|';
  bool first = true;
  for (std::size_t i = 0; i < vector.size(); ++i) {
    if (vector[i] == 0) continue;
    if (!first) os << ',';
    first = false;
    os << to_string(space.at(i));
    if (vector[i] > 1) os << '^' << static_cast<unsigned>(vector[i]);
  }
  if (first) os << "vac";
  os << '>';
  return os.str();
}

std::string to_string(const PureState& state) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& [vec, amp] : state.terms()) {
    os << '(' << amp.real() << (amp.imag() < 0 ? "-" : "+") << std::abs(amp.imag()) << "i) "
       << to_string(vec, *state.space()) << '\n';
  }
  return os.str();
}

std::vector<FockVector> enumerate_fock_vectors(std::size_t mode_count, unsigned total) {
  std::vector<FockVector> out;
  if (mode_count == 0) {
    if (total == 0) out.emplace_back(0);
    return out;
  }
  FockVector v(mode_count);
  // Fill left to right; the last mode takes whatever remains.
  auto fill = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == mode_count) {
      v[i] = static_cast<std::uint8_t>(left);
      out.push_back(v);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      v[i] = static_cast<std::uint8_t>(k);
      self(self, i + 1, left - k);
    }
  };
  fill(fill, 0, total);
  return out;
}

}  // namespace cphase
