// Copyright 2026 The entdyn Authors
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

// Seeded samplers for states, unitaries and channels.

#pragma once

#include "entdyn/channel.hpp"

#include <cstdint>
#include <random>

namespace entdyn {

using Rng = std::mt19937_64;

Complex complex_normal(Rng& rng);

/// Haar-distributed d x d unitary (QR of a Ginibre matrix with phase fix).
Matrix haar_unitary(Index d, Rng& rng);

Vector haar_pure_state(Index d, Rng& rng);

/// Hilbert-Schmidt random state G G^dag / Tr, full rank almost surely.
DensityMatrix random_density_matrix(Index d, Rng& rng);

/// Random state with spectrum bounded below by `min_eigenvalue`.
DensityMatrix random_full_rank_state(Index d, Rng& rng, double min_eigenvalue = 1e-3);

Matrix random_hermitian(Index d, Rng& rng);
Matrix random_matrix(Index rows, Index cols, Rng& rng);

/// Random CPTP map from a Haar isometry C^d -> C^{d_out} (x) C^{kraus_rank}.
QuantumChannel random_channel(Index d_in, Index d_out, Index kraus_rank, Rng& rng);

/// Convex mixture of `terms` Haar unitaries.
QuantumChannel random_unital_channel(Index d, Index terms, Rng& rng);

/// Kraus set {sqrt(c_i p_i) U_i} with Haar U_i, probabilities p_i and c_i
/// uniform in [c_min, 1]. Sub-unital and trace-non-increasing; trace
/// preserving only when every c_i = 1.
QuantumChannel random_sub_unital_operation(Index d, Index terms, Rng& rng,
                                           double c_min = 0.0);

}  // namespace entdyn
