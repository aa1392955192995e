#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "entroscope/quantum.hpp"

namespace entroscope {

/// All sampling takes an explicit engine; there is no global generator.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Matrix random_gaussian(Index rows, Index cols, Rng& rng);
Matrix random_unitary(Index dim, Rng& rng);
/// Columns form an orthonormal set (rows ≥ cols).
Matrix random_isometry(Index rows, Index cols, Rng& rng);

/// GG†/tr(GG†) with G a complex Gaussian dim×rank matrix.
QState random_state(const SystemLayout& layout, Index rank, Rng& rng);
QState random_state(Index dim, Index rank, Rng& rng);
QState random_pure_state(const SystemLayout& layout, Rng& rng);
/// Random state scaled by a trace drawn uniformly from [min_trace, 1].
QState random_subnormalized_state(const SystemLayout& layout, Index rank, double min_trace, Rng& rng);

/// Σ_x p(x)|x⟩⟨x| ⊗ ρ_B^x with labels "X" and "B".
QState random_cq_state(Index dim_x, Index dim_b, Rng& rng);

/// Trace-preserving channel from a random Stinespring isometry.
QChannel random_channel(Index dim_in, Index dim_out, Index n_kraus, Rng& rng);
/// Trace-non-increasing channel: a random channel with the Kraus operators
/// shrunk on a random subspace.
QChannel random_trace_non_increasing_channel(Index dim_in, Index dim_out, Index n_kraus, Rng& rng);
/// Sub-unital TP channel: mixture of unitaries followed by an isometric
/// embedding into dim_out ≥ dim_in.
QChannel random_subunital_channel(Index dim_in, Index dim_out, Index n_unitaries, Rng& rng);

enum class InstanceKind { State, Channel, CqState, Pure };

/// Seeded front end used by the CLI `gen` command. For channels dims is
/// {dim_in, dim_out} and rank is the number of Kraus operators; for CQ
/// states dims is {|X|, |B|}.
std::variant<QState, QChannel> sample_instance(InstanceKind kind, const std::vector<Index>& dims,
                                               Index rank, std::uint64_t seed);

}  // namespace entroscope
