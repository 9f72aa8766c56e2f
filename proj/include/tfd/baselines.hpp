#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tfd/random.hpp"
#include "tfd/slice_source.hpp"
#include "tfd/tensor.hpp"

namespace tfd {

/// Matrix FD on the mode-1 unfolding: every horizontal slice becomes one row of
/// length n2 * rho; the ell x n2 rho sketch is folded back.
DenseTensor mtfd_stream(SliceSource& source, Index ell);

/// ell x n1 Gaussian projection with N(0, 1/ell) entries, drawn column by
/// column (column j is the ell values consumed when slice j arrives).
Eigen::MatrixXd srtsvd_projection(Index ell, Index n1, RandomSeed seed);

/// Single-pass randomized sketch B = Q * A where Q is ell x n1 x trailing with
/// only its first frontal slice nonzero. Because of that, B's frontal slices
/// are Q1 A^(f), accumulated as B += Q1(:, j) (x) slice_j. `projection`
/// replaces the random Q1 (ell x n1) when given.
DenseTensor srtsvd_stream(SliceSource& source, Index ell, RandomSeed seed,
                          const std::optional<Eigen::MatrixXd>& projection = std::nullopt);

/// ell i.i.d. draws (with replacement) of slice indices with probability
/// proportional to `weights`, by inverse CDF. Zero-weight entries are never
/// drawn. Throws ArgumentError when all weights are zero.
std::vector<Index> normsamp_indices(const std::vector<double>& weights, Index ell, RandomSeed seed);

/// Two-pass norm sampling: pass one computes squared slice norms, pass two
/// emits the sampled slices scaled by 1 / sqrt(ell p_i), in draw order.
/// Requires a rewindable source.
DenseTensor normsamp_two_pass(SliceSource& source, Index ell, RandomSeed seed);

}  // namespace tfd
