#include "tfd/slice_svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <string>

#include "tfd/errors.hpp"

namespace tfd {

namespace {

unsigned options_for(SvdVectors vectors) {
  switch (vectors) {
    case SvdVectors::thin:
      return Eigen::ComputeThinU | Eigen::ComputeThinV;
    case SvdVectors::full:
      return Eigen::ComputeFullU | Eigen::ComputeFullV;
    case SvdVectors::none:
      break;
  }
  return 0;
}

// Unit-modulus factor that rotates the leading nonzero entry of x onto the
// positive real axis.
Complex anchor_phase(const Eigen::Ref<const Eigen::VectorXcd>& x) {
  const double peak = x.cwiseAbs().maxCoeff();
  if (peak == 0.0) return 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x(i));
    if (mag > 1e-8 * peak) return std::conj(x(i)) / mag;
  }
  return 1.0;
}

Complex peak_phase(const Eigen::Ref<const Eigen::VectorXcd>& x) {
  Eigen::Index at = 0;
  const double peak = x.cwiseAbs().maxCoeff(&at);
  if (peak == 0.0) return 1.0;
  return std::conj(x(at)) / peak;
}

void normalize_phases(SliceSvd& out, PhaseAnchor anchor) {
  if (out.u.size() == 0 || out.v.size() == 0) return;
  const Eigen::Index paired = out.sigma.size();
  const bool on_left = anchor != PhaseAnchor::right;
  Eigen::MatrixXcd& lead = on_left ? out.u : out.v;
  Eigen::MatrixXcd& follow = on_left ? out.v : out.u;
  for (Eigen::Index j = 0; j < lead.cols(); ++j) {
    const Complex ph = anchor == PhaseAnchor::left_peak ? peak_phase(lead.col(j)) : anchor_phase(lead.col(j));
    lead.col(j) *= ph;
    if (j < paired) follow.col(j) *= ph;
  }
  for (Eigen::Index j = paired; j < follow.cols(); ++j) follow.col(j) *= anchor_phase(follow.col(j));
}

void check_finite(const Eigen::MatrixXcd& m, Index slice) {
  if (!m.allFinite()) throw NumericalError("SVD input of Fourier slice " + std::to_string(slice) + " is not finite");
}

}  // namespace

SliceSvd slice_svd(const Eigen::MatrixXcd& m, bool real_slice, SvdVectors vectors, PhaseAnchor anchor, Index slice) {
  check_finite(m, slice);
  SliceSvd out;
  const unsigned opts = options_for(vectors);
  if (real_slice) {
    const Eigen::MatrixXd re = m.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(re, opts);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD failed on Fourier slice " + std::to_string(slice));
    out.sigma = svd.singularValues();
    if (vectors != SvdVectors::none) {
      out.u = svd.matrixU().cast<Complex>();
      out.v = svd.matrixV().cast<Complex>();
    }
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, opts);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD failed on Fourier slice " + std::to_string(slice));
    out.sigma = svd.singularValues();
    if (vectors != SvdVectors::none) {
      out.u = svd.matrixU();
      out.v = svd.matrixV();
    }
  }
  if (vectors != SvdVectors::none) normalize_phases(out, anchor);
  return out;
}

Eigen::VectorXd slice_singular_values(const Eigen::MatrixXcd& m, bool real_slice, Index slice) {
  return slice_svd(m, real_slice, SvdVectors::none, PhaseAnchor::left, slice).sigma;
}

template <class Scalar>
ShrinkOutcome shrink_rows(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b, Index ell, Index slice) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (!b.allFinite()) throw NumericalError("shrink input of slice " + std::to_string(slice) + " is not finite");
  const Eigen::Index m = b.rows();
  const auto l = static_cast<Eigen::Index>(ell);
  ShrinkOutcome out;
  if (m == 0) return out;

  const Mat gram = b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> eig(gram);
  if (eig.info() != Eigen::Success) throw NumericalError("shrink eigensolver failed on slice " + std::to_string(slice));
  // ascending order; position m - 1 - r holds the r-th largest
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = std::max(lambda(m - 1), 0.0);
  const double floor = static_cast<double>(m) * std::numeric_limits<double>::epsilon() * top;
  auto value = [&](Eigen::Index r) {
    const double v = lambda(m - 1 - r);
    return v > floor ? v : 0.0;
  };
  out.delta = l <= m && l <= b.cols() ? value(l - 1) : 0.0;

  Mat shrunk = Mat::Zero(m, b.cols());
  for (Eigen::Index r = 0; r < std::min(l - 1, m); ++r) {
    const double v = value(r);
    if (v - out.delta <= 0.0) break;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> u = eig.eigenvectors().col(m - 1 - r);
    const double peak = u.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (std::abs(u(i)) > 1e-8 * peak) {
        if constexpr (std::is_same_v<Scalar, double>) {
          if (u(i) < 0.0) u = -u;
        } else {
          u *= std::conj(u(i)) / std::abs(u(i));
        }
        break;
      }
    }
    // u^H b = sigma_r v_r^H, rescaled to sqrt(sigma_r^2 - delta)
    shrunk.row(r) = std::sqrt((v - out.delta) / v) * (u.adjoint() * b);
    out.live_rows = static_cast<Index>(r) + 1;
  }
  b = std::move(shrunk);
  return out;
}

template ShrinkOutcome shrink_rows<double>(Eigen::MatrixXd&, Index, Index);
template ShrinkOutcome shrink_rows<Complex>(Eigen::MatrixXcd&, Index, Index);

}  // namespace tfd
