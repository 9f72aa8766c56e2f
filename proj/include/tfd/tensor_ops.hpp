#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tfd/exec.hpp"
#include "tfd/tensor.hpp"

namespace tfd {

enum class FftDirection { forward, inverse };

/// Applies the 1-D DFT along every trailing mode (3..p) of a buffer laid out
/// like a tensor with dims (lead, n2, trailing...). Works on any contiguous run
/// of whole horizontal slices, which is how the streaming sketch transforms a
/// single slice.
void transform_trailing(std::span<Complex> data, Index lead, Index n2, std::span<const Index> trailing,
                        FftDirection direction, Exec exec = Exec::parallel);

/// Unnormalized forward DFT along modes 3..p. Requires p >= 3.
FourierTensor fft_modes(const DenseTensor& t, Exec exec = Exec::parallel);

/// Inverse of fft_modes. Throws NumericalError when the imaginary residue
/// exceeds 1e-9 of the result's Frobenius norm.
DenseTensor ifft_modes(const FourierTensor& t, Exec exec = Exec::parallel);

/// Relative imaginary residue tolerated by ifft_modes.
inline constexpr double kImagResidueTol = 1e-9;

/// t-product (n1 x n2 x ...) * (n2 x m x ...) -> (n1 x m x ...), computed as
/// per-Fourier-slice matrix products.
DenseTensor t_product(const DenseTensor& a, const DenseTensor& b, Exec exec = Exec::parallel);

/// Tensor transpose: every frontal slice transposed, trailing indices negated
/// modulo their dims (slices 2..n reversed, recursively per mode).
DenseTensor t_transpose(const DenseTensor& a);

/// n x n x trailing identity: first frontal slice is I, the rest zero.
DenseTensor identity_tensor(Index n, std::span<const Index> trailing);

/// Entry cap for bcirc_matrix, n1 rho * n2 rho.
inline constexpr Index kBcircEntryCap = 1'000'000;

/// Explicit block-circulant expansion (n1 rho x n2 rho), built recursively over
/// the trailing modes with the last mode outermost. Row (i1, f) is at
/// i1 + n1 * f, column (i2, g) at i2 + n2 * g. Oracle only; throws
/// ArgumentError past kBcircEntryCap.
Eigen::MatrixXd bcirc_matrix(const DenseTensor& a);

double fro_norm(const DenseTensor& a);
/// l2* norm of a tensor column.
double tube_norm(const TensorColumn& x);

/// max_f sigma_max of Fourier slice f.
double tensor_spectral_norm(const DenseTensor& a, Exec exec = Exec::parallel);

/// Mode-1 unfolding [A^(1) A^(2) ... A^(rho)], n1 x n2 rho.
Eigen::MatrixXd unfold_mode1(const DenseTensor& a);
DenseTensor fold_mode1(const Eigen::MatrixXd& m, std::span<const Index> dims);

/// Copy of horizontal slice i1 as a 1 x n2 x trailing tensor.
DenseTensor horizontal_slice(const DenseTensor& a, Index i1);

/// Lateral slices [begin, end) as an n1 x (end - begin) x trailing tensor.
DenseTensor lateral_range(const DenseTensor& a, Index begin, Index end);

/// Leading block [0, rows) x [0, cols) of every frontal slice.
DenseTensor leading_block(const DenseTensor& a, Index rows, Index cols);

/// Elementwise a - b for equal dims.
DenseTensor subtract(const DenseTensor& a, const DenseTensor& b);

/// Dense copy of Fourier slice f.
Eigen::MatrixXcd fourier_slice(const FourierTensor& t, Index f);

}  // namespace tfd
