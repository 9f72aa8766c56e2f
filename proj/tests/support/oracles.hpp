#pragma once

// Brute-force reference implementations used only by tests. Nothing here goes
// through the FFT path or the library's Fourier-slice code, so agreement with
// the library is evidence rather than a tautology.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tfd/tensor.hpp"

namespace tfd::oracle {

/// Tensor with i.i.d. N(0, 1) entries from a test-only generator.
DenseTensor random_tensor(std::vector<Index> dims, std::uint64_t seed, double scale = 1.0);

/// Unit-Frobenius-norm random tensor column (n x 1 x trailing).
DenseTensor random_column(Index n, std::span<const Index> trailing, std::uint64_t seed);

/// X[k] = sum_j x[j] exp(-2 pi i j k / n), double loop.
std::vector<Complex> naive_dft(const std::vector<Complex>& x);

/// Trailing multi-index (i3, ..., ip) of frontal index f, i3 fastest.
std::vector<Index> split_frontal(Index f, std::span<const Index> trailing);
Index join_frontal(const std::vector<Index>& idx, std::span<const Index> trailing);

/// t-product straight from the circulant definition:
///   C^(f) = sum_g A^(f - g) B^(g)   (trailing indices subtracted mode-wise)
DenseTensor circular_product(const DenseTensor& a, const DenseTensor& b);

/// Transpose from the slice-reversal definition, built per multi-index.
DenseTensor reversal_transpose(const DenseTensor& a);

/// Block circulant built from the circulant structure with the first trailing
/// mode innermost, matching the library's row/column numbering.
Eigen::MatrixXd circulant_blocks(const DenseTensor& a);

/// Stacks the frontal slices vertically: (n1 rho) x n2.
Eigen::MatrixXd stack_frontal(const DenseTensor& a);
DenseTensor unstack_frontal(const Eigen::MatrixXd& m, std::vector<Index> dims);

/// ||bcirc(A)^T bcirc(A) - bcirc(B)^T bcirc(B)||_2.
double bcirc_covariance_error(const DenseTensor& a, const DenseTensor& b);

/// Squared Frobenius norm of every entry.
double fro_sq(const DenseTensor& a);

/// Per-slice singular values with every Fourier slice formed by an explicit
/// DFT sum over frontal slices (rows = slices).
Eigen::MatrixXd dft_slice_singular_values(const DenseTensor& a);

/// ||A - A_k||_F^2 = (1/rho) sum_f sum_{j>=k} sigma_fj^2 from the slices above.
double dft_tail_energy(const DenseTensor& a, Index k);

/// Matrix FD from the textbook description, on a plain dense matrix: rows are
/// appended to a 2*ell buffer, shrunk with a full SVD.
Eigen::MatrixXd reference_fd(const Eigen::MatrixXd& rows, Index ell, double* loss = nullptr);

/// Least-squares line fit, returns R^2.
double line_r2(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tfd::oracle
