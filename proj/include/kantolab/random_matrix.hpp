#pragma once

#include <cstdint>

#include "kantolab/psd_core.hpp"
#include "kantolab/rng.hpp"

namespace kantolab {

/// rows x cols matrix with iid standard complex normal entries.
Matrix ginibre(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal
/// phases folded back into Q (Mezzadri's correction).
Matrix haar_unitary(Index n, Rng& rng);

/// Uniformly random unit vector.
Vector random_unit_vector(Index n, Rng& rng);

/// Hermitian matrix with eigenvalues drawn uniformly in [w.m, w.M] and a
/// Haar-random eigenbasis. With probability endpoint_prob (and n >= 2) the
/// spectrum is forced to contain both endpoints, which is where the
/// Kantorovich-family bounds are attained. A degenerate window returns m*I
/// exactly.
HermitianMatrix random_with_spectrum(const SpectralWindow& w, Index n,
                                     std::uint64_t seed,
                                     double endpoint_prob = 0.5);

/// Wishart-style PSD matrix G G* with G of shape n x rank.
HermitianMatrix random_psd(Index n, Index rank, Rng& rng);

/// GUE-style Hermitian matrix (hermitized Ginibre).
HermitianMatrix random_hermitian(Index n, Rng& rng);

}  // namespace kantolab
