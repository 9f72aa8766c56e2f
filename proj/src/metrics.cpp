#include "tfd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfd/errors.hpp"
#include "tfd/parallel.hpp"
#include "tfd/tensor_ops.hpp"
#include "tfd/tsvd.hpp"

namespace tfd {

namespace {

void require_same_columns(const DenseTensor& a, const DenseTensor& b, const char* what) {
  if (a.order() != b.order() || a.n2() != b.n2() ||
      !std::equal(a.trailing_dims().begin(), a.trailing_dims().end(), b.trailing_dims().begin())) {
    throw DimensionError(std::string(what) + ": n2 and trailing dims must match");
  }
}

// Per representative slice f: fn(f) -> double, reduced by max.
template <class Fn>
double max_over_slices(const FourierPairing& pairing, Exec exec, Fn&& fn) {
  const auto& reps = pairing.representatives();
  std::vector<double> vals(reps.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(reps.size()), exec,
               [&](std::int64_t i) { vals[static_cast<Index>(i)] = fn(reps[static_cast<Index>(i)]); });
  return vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
}

}  // namespace

void check_oracle_size(std::span<const Index> dims, bool allow_large) {
  const Index entries = product(dims);
  if (!allow_large && entries > kOracleEntryCap) {
    throw ArgumentError("oracle metrics: tensor with " + std::to_string(entries) +
                        " entries exceeds the desk-scale cap; pass the override to force it");
  }
}

double ReferenceSpectrum::tail(Index k) const { return tail_energy(fourier_sv, k); }

ReferenceSpectrum reference_spectrum(const DenseTensor& a, Exec exec, bool allow_large) {
  check_oracle_size(a.dims(), allow_large);
  ReferenceSpectrum ref;
  const double f = fro_norm(a);
  ref.fro_sq = f * f;
  ref.rho = a.rho();
  ref.fourier_sv = fourier_singular_values(a, exec);
  return ref;
}

double covariance_error(const DenseTensor& a, const DenseTensor& b, Exec exec) {
  require_same_columns(a, b, "covariance_error");
  const FourierTensor fa = fft_modes(a, exec);
  const FourierTensor fb = fft_modes(b, exec);
  const FourierPairing pairing(a.trailing_dims());
  return max_over_slices(pairing, exec, [&](Index f) {
    const auto am = frontal(fa, f);
    const auto bm = frontal(fb, f);
    const Eigen::MatrixXcd g = am.adjoint() * am - bm.adjoint() * bm;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError("covariance_error: eigensolver failed on slice " + std::to_string(f));
    return eig.eigenvalues().cwiseAbs().maxCoeff();
  });
}

double orthonormality_defect(const DenseTensor& v, Exec exec) {
  const FourierTensor fv = fft_modes(v, exec);
  const FourierPairing pairing(v.trailing_dims());
  const auto k = static_cast<Eigen::Index>(v.n2());
  return max_over_slices(pairing, exec, [&](Index f) {
    const auto m = frontal(fv, f);
    const Eigen::MatrixXcd g = m.adjoint() * m - Eigen::MatrixXcd::Identity(k, k);
    return g.cwiseAbs().maxCoeff();
  });
}

double projection_error(const DenseTensor& a, const DenseTensor& v, Exec exec) {
  if (v.order() != a.order() || v.n1() != a.n2() ||
      !std::equal(a.trailing_dims().begin(), a.trailing_dims().end(), v.trailing_dims().begin())) {
    throw DimensionError("projection_error: V must be n2 x k with A's trailing dims");
  }
  const double defect = orthonormality_defect(v, exec);
  if (defect > 1e-6) {
    throw ArgumentError("projection_error: V^T * V deviates from I by " + std::to_string(defect));
  }
  const FourierTensor fa = fft_modes(a, exec);
  const FourierTensor fv = fft_modes(v, exec);
  const FourierPairing pairing(a.trailing_dims());
  const auto& reps = pairing.representatives();
  std::vector<double> kept(reps.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(reps.size()), exec, [&](std::int64_t i) {
    const Index f = reps[static_cast<Index>(i)];
    const double e = (frontal(fa, f) * frontal(fv, f)).squaredNorm();
    kept[static_cast<Index>(i)] = pairing.self_conjugate(f) ? e : 2.0 * e;
  });
  double total = 0.0;
  for (double e : kept) total += e;
  const double fa_norm = fro_norm(a);
  return std::max(0.0, fa_norm * fa_norm - total / static_cast<double>(a.rho()));
}

double projection_error_direct(const DenseTensor& a, const DenseTensor& v, Exec exec) {
  const DenseTensor proj = t_product(t_product(a, v, exec), t_transpose(v), exec);
  const double r = fro_norm(subtract(a, proj));
  return r * r;
}

double sketch_projection_error(const DenseTensor& a, const DenseTensor& sketch, Index k, Exec exec) {
  const Index kk = std::min({k, sketch.n1(), sketch.n2()});
  if (kk == 0) {
    const double f = fro_norm(a);
    return f * f;
  }
  return projection_error(a, leading_right_factor(sketch, kk, exec), exec);
}

std::string to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::pass:
      return "pass";
    case BoundStatus::fail:
      return "fail";
    case BoundStatus::skipped:
      return "skipped";
  }
  return "?";
}

bool within_bound(double lhs, double rhs, double fro_sq) {
  return lhs <= rhs * (1.0 + kBoundRelTol) + kBoundAbsTol * fro_sq;
}

Certificate certify_bounds(const DenseTensor& a, const ReferenceSpectrum& ref, const SketchResult& result, Index k,
                           Exec exec) {
  Certificate cert;
  cert.k = k;
  cert.ell = result.sketch.n1();
  cert.c_defined = result.c_value.has_value();
  cert.c = result.c_value.value_or(1.0);
  const double ell = static_cast<double>(cert.ell);
  const double kd = static_cast<double>(k);
  if (k < 1 || kd >= ell / cert.c) return cert;

  const double tail = ref.tail(k);
  cert.covariance.lhs = covariance_error(a, result.sketch, exec);
  cert.covariance.rhs = tail / (ell / cert.c - kd);
  cert.covariance.status =
      within_bound(cert.covariance.lhs, cert.covariance.rhs, ref.fro_sq) ? BoundStatus::pass : BoundStatus::fail;

  cert.projection.lhs = sketch_projection_error(a, result.sketch, k, exec);
  cert.projection.rhs = ell / (ell - cert.c * kd) * tail;
  cert.projection.status =
      within_bound(cert.projection.lhs, cert.projection.rhs, ref.fro_sq) ? BoundStatus::pass : BoundStatus::fail;
  return cert;
}

double mtfd_covariance_bound(Index rho, Index ell, Index k, double fro_sq) {
  if (k >= ell) return std::numeric_limits<double>::infinity();
  return static_cast<double>(rho) / static_cast<double>(ell - k) * fro_sq;
}

double projection_from_covariance_bound(double tail_k, Index k, double cov_err) {
  return tail_k + 2.0 * static_cast<double>(k) * cov_err;
}

}  // namespace tfd
