#pragma once

#include <Eigen/Dense>

#include "tfd/exec.hpp"
#include "tfd/slice_svd.hpp"
#include "tfd/tensor.hpp"

namespace tfd {

/// A = U * S * V^T with U (n1 x n1 x ...), V (n2 x n2 x ...) orthogonal and S
/// f-diagonal. In every Fourier slice the diagonal of S is real, nonnegative
/// and nonincreasing.
struct TsvdFactors {
  DenseTensor u;
  DenseTensor s;
  DenseTensor v;
};

/// Full t-SVD: per-Fourier-slice SVD of the representative slices, conjugates
/// mirrored, then inverse transform of each factor. `anchor` fixes the per-pair
/// phase (default: leading nonzero of each left singular vector real positive).
TsvdFactors t_svd(const DenseTensor& a, Exec exec = Exec::parallel, PhaseAnchor anchor = PhaseAnchor::left);

inline constexpr double kDefaultRankTol = 1e-8;

/// Number of singular tubes whose Frobenius norm exceeds tol times that of the first.
Index tubal_rank(const TsvdFactors& f, double tol = kDefaultRankTol);

struct TruncatedTsvd {
  DenseTensor approx;  // A_k
  DenseTensor u;       // n1 x k x ...
  DenseTensor s;       // k x k x ...
  DenseTensor v;       // n2 x k x ...
};

/// Best tubal-rank-k approximation sum_{s<k} U(:,s) * S(s,s) * V(:,s)^T.
/// Throws ArgumentError unless 1 <= k <= min(n1, n2).
TruncatedTsvd truncate_k(const TsvdFactors& f, Index k, Exec exec = Exec::parallel);

/// Singular values of every Fourier slice: row f holds slice f, nonincreasing,
/// min(n1, n2) columns.
Eigen::MatrixXd fourier_singular_values(const DenseTensor& a, Exec exec = Exec::parallel);

/// ||A - A_k||_F^2 from Fourier singular values: (1/rho) sum_f sum_{j>=k} sigma_fj^2.
double tail_energy(const Eigen::MatrixXd& fourier_sv, Index k);

/// First k lateral slices of the right factor V of A (n2 x k x ...), computed
/// from thin per-slice SVDs. Requires k <= min(n1, n2).
DenseTensor leading_right_factor(const DenseTensor& a, Index k, Exec exec = Exec::parallel);

}  // namespace tfd
