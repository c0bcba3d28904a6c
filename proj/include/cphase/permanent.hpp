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

// Permanent-based transition amplitudes. Used as an independent check on
// sequential element application: it never touches PureState or
// apply_element.

#pragma once

#include <Eigen/Dense>

#include "cphase/fock.hpp"

namespace cphase {

inline constexpr unsigned kMaxOraclePhotons = 4;

/// Sum over all permutations of prod_i m(i, sigma(i)). Square input only.
Amplitude permanent(const Eigen::MatrixXcd& m);

/// <out| U |in> for a linear-optical network with single-photon matrix U
/// (column j = image of mode j). The submatrix repeats row k out[k] times and
/// column j in[j] times; the amplitude is perm / sqrt(prod in! prod out!).
/// Throws ModelError when photon totals differ or exceed kMaxOraclePhotons.
Amplitude amplitude_via_permanent(const Eigen::MatrixXcd& unitary, const FockVector& input,
                                  const FockVector& output);

}  // namespace cphase
