#pragma once

#include <Eigen/Dense>

#include "tfd/tensor.hpp"

namespace tfd {

enum class SvdVectors { none, thin, full };

/// Which factor absorbs the free phase of each singular pair.
///   left:  the leading nonzero entry of every left singular vector is real
///          positive; the right vector carries the compensating phase.
///   right: the same rule applied to the right singular vectors.
/// "Leading nonzero" is the first entry with magnitude above 1e-8 times the
/// vector's largest magnitude.
///   left_peak: the largest-magnitude entry of every left singular vector is
///          real positive (first one on ties).
enum class PhaseAnchor { left, right, left_peak };

struct SliceSvd {
  Eigen::VectorXd sigma;  // nonincreasing
  Eigen::MatrixXcd u;
  Eigen::MatrixXcd v;
};

/// SVD of one Fourier slice, m = u diag(sigma) v^H. With `real_slice` the
/// factorization runs in real arithmetic on m.real(), which keeps
/// self-conjugate slices (and hence the spatial factors) exactly real.
/// Throws NumericalError on non-finite input or solver failure; `slice` only
/// labels the message.
SliceSvd slice_svd(const Eigen::MatrixXcd& m, bool real_slice, SvdVectors vectors,
                   PhaseAnchor anchor = PhaseAnchor::left, Index slice = 0);

/// Singular values only.
Eigen::VectorXd slice_singular_values(const Eigen::MatrixXcd& m, bool real_slice, Index slice = 0);

struct ShrinkOutcome {
  double delta = 0.0;  // squared ell-th singular value removed
  Index live_rows = 0;  // rows left nonzero, always a prefix of length < ell
};

/// Frequent Directions shrink of the rows of `b`, in place:
///     b = U S V^H,  delta = sigma_ell^2,  b <- sqrt(max(S^2 - delta, 0)) V^H
/// computed from the eigendecomposition of the small Gram matrix b b^H, so the
/// cost is O(rows^2 * cols) instead of a full SVD. Rows ell-1 and beyond are
/// always zero afterwards. Eigenvalues at roundoff level (below
/// rows * eps * lambda_max) count as zero, so a rank-deficient buffer
/// reports delta = 0. Each kept row is sqrt(lambda_r - delta) times a unit
/// vector whose phase follows the PhaseAnchor::left rule on the eigenvector.
/// Throws NumericalError on non-finite input or solver failure.
template <class Scalar>
ShrinkOutcome shrink_rows(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b, Index ell, Index slice = 0);

extern template ShrinkOutcome shrink_rows<double>(Eigen::MatrixXd&, Index, Index);
extern template ShrinkOutcome shrink_rows<Complex>(Eigen::MatrixXcd&, Index, Index);

}  // namespace tfd
