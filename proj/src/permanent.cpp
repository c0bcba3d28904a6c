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

#include "cphase/permanent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cphase/errors.hpp"

namespace cphase {

Amplitude permanent(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw ModelError("permanent of a non-square matrix");
  const auto n = static_cast<std::size_t>(m.rows());
  if (n == 0) return 1.0;
  std::vector<Eigen::Index> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Eigen::Index{0});
  Amplitude sum = 0.0;
  do {
    Amplitude term = 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m(static_cast<Eigen::Index>(i), sigma[i]);
    sum += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum;
}

Amplitude amplitude_via_permanent(const Eigen::MatrixXcd& unitary, const FockVector& input,
                                  const FockVector& output) {
  const auto modes = static_cast<std::size_t>(unitary.rows());
  if (input.size() != modes || output.size() != modes) {
    throw ModelError("permanent oracle: Fock vector length does not match the matrix");
  }
  const unsigned n = input.total();
  if (n != output.total()) {
    throw ModelError("permanent oracle: input carries " + std::to_string(n) +
                     " photons but output carries " + std::to_string(output.total()));
  }
  if (n > kMaxOraclePhotons) {
    throw ModelError("permanent oracle limited to " + std::to_string(kMaxOraclePhotons) +
                     " photons");
  }
  std::vector<Eigen::Index> rows, cols;
  double norm = 1.0;
  for (std::size_t k = 0; k < modes; ++k) {
    for (unsigned c = 0; c < output[k]; ++c) rows.push_back(static_cast<Eigen::Index>(k));
    for (unsigned c = 0; c < input[k]; ++c) cols.push_back(static_cast<Eigen::Index>(k));
    norm *= std::tgamma(output[k] + 1.0) * std::tgamma(input[k] + 1.0);
  }
  Eigen::MatrixXcd sub(n, n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) sub(i, j) = unitary(rows[i], cols[j]);
  }
  return permanent(sub) / std::sqrt(norm);
}

}  // namespace cphase
