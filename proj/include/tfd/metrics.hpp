#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tfd/exec.hpp"
#include "tfd/tensor.hpp"
#include "tfd/tfd_stream.hpp"

namespace tfd {

/// Largest tensor (in entries) the oracle metrics accept unless the caller
/// passes allow_large.
inline constexpr Index kOracleEntryCap = 50'000'000;

/// Throws ArgumentError when a tensor of these dims has more than
/// kOracleEntryCap entries and allow_large is false.
void check_oracle_size(std::span<const Index> dims, bool allow_large);

/// Quantities of A every error ratio is normalized by, computed once from a
/// full per-slice SVD.
struct ReferenceSpectrum {
  double fro_sq = 0.0;
  Index rho = 1;
  Eigen::MatrixXd fourier_sv;  // rho x min(n1, n2)

  /// ||A - A_k||_F^2.
  double tail(Index k) const;
};

ReferenceSpectrum reference_spectrum(const DenseTensor& a, Exec exec = Exec::parallel, bool allow_large = false);

/// ||A^T * A - B^T * B||, the tensor spectral norm of the Gram difference:
/// max over Fourier slices of the largest |eigenvalue| of A_f^H A_f - B_f^H B_f.
double covariance_error(const DenseTensor& a, const DenseTensor& b, Exec exec = Exec::parallel);

/// Max deviation of V^T * V from the identity over Fourier slices.
double orthonormality_defect(const DenseTensor& v, Exec exec = Exec::parallel);

/// ||A - A * V * V^T||_F^2 through ||A||^2 - ||A * V||^2. Throws ArgumentError
/// when V^T * V differs from I by more than 1e-6.
double projection_error(const DenseTensor& a, const DenseTensor& v, Exec exec = Exec::parallel);
/// Same quantity from the explicit residual (small inputs).
double projection_error_direct(const DenseTensor& a, const DenseTensor& v, Exec exec = Exec::parallel);

/// Projection error of A onto the top-k right singular space of a sketch.
/// k is clipped to min(ell, n2); returns ||A||^2 when the clipped k is 0.
double sketch_projection_error(const DenseTensor& a, const DenseTensor& sketch, Index k, Exec exec = Exec::parallel);

enum class BoundStatus { pass, fail, skipped };
std::string to_string(BoundStatus s);

struct BoundCheck {
  BoundStatus status = BoundStatus::skipped;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs (positive when the bound holds with room to spare).
  double margin() const { return rhs - lhs; }
};

/// Relative and absolute slack used by every bound comparison:
/// lhs <= rhs * (1 + kBoundRelTol) + kBoundAbsTol * ||A||_F^2.
inline constexpr double kBoundRelTol = 1e-6;
inline constexpr double kBoundAbsTol = 1e-10;

struct Certificate {
  Index k = 0;
  Index ell = 0;
  double c = 1.0;          // constant used; 1 when the run reports no c
  bool c_defined = false;
  BoundCheck covariance;   // cov <= tail_k / (ell / c - k)
  BoundCheck projection;   // proj <= ell / (ell - c k) * tail_k
  bool ok() const {
    return covariance.status != BoundStatus::fail && projection.status != BoundStatus::fail;
  }
};

/// Evaluates the covariance and projection bounds of a t-FD run with its own
/// c. Both are skipped when k >= ell / c. When c is undefined nothing was
/// shrunk away and c = 1 is used.
Certificate certify_bounds(const DenseTensor& a, const ReferenceSpectrum& ref, const SketchResult& result, Index k,
                           Exec exec = Exec::parallel);

/// Covariance bound for the unfolded-FD baseline: rho / (ell - k) * ||A||_F^2.
/// Infinite for k >= ell.
double mtfd_covariance_bound(Index rho, Index ell, Index k, double fro_sq);

/// Algorithm-independent projection bound: tail_k + 2 k cov_err.
double projection_from_covariance_bound(double tail_k, Index k, double cov_err);

bool within_bound(double lhs, double rhs, double fro_sq);

/// One CSV row of an experiment.
struct ErrorReport {
  std::string algorithm;
  Index ell = 0;
  Index k = 0;
  int repeat = 0;  // -1 on mean rows
  std::vector<Index> dims;
  std::optional<double> c_value;
  double delta_total = 0.0;
  double proj_err = 0.0;
  double cov_err = 0.0;
  double tail_energy = 0.0;
  double proj_err_ratio = 0.0;
  double cov_err_ratio = 0.0;
  double sketch_time_s = 0.0;
  double io_time_s = 0.0;
  double oracle_time_s = 0.0;
  std::int64_t peak_sketch_entries = 0;
};

}  // namespace tfd
