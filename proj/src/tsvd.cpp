#include "tfd/tsvd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfd/errors.hpp"
#include "tfd/parallel.hpp"
#include "tfd/tensor_ops.hpp"

namespace tfd {

TsvdFactors t_svd(const DenseTensor& a, Exec exec, PhaseAnchor anchor) {
  const FourierTensor fa = fft_modes(a, exec);
  const auto trailing = a.trailing_dims();
  const Index n1 = a.n1();
  const Index n2 = a.n2();
  FourierTensor fu(make_dims(n1, n1, trailing), true);
  FourierTensor fs(a.dims(), true);
  FourierTensor fv(make_dims(n2, n2, trailing), true);

  const FourierPairing pairing(trailing);
  const auto& reps = pairing.representatives();
  const auto count = static_cast<std::int64_t>(reps.size());
  parallel_for(count, exec, [&](std::int64_t r) {
    const Index f = reps[static_cast<Index>(r)];
    const SliceSvd svd = slice_svd(frontal(fa, f), pairing.self_conjugate(f), SvdVectors::full, anchor, f);
    frontal(fu, f) = svd.u;
    frontal(fv, f) = svd.v;
    auto s = frontal(fs, f);
    s.setZero();
    for (Eigen::Index j = 0; j < svd.sigma.size(); ++j) s(j, j) = svd.sigma(j);
    const Index g = pairing.partner(f);
    if (g != f) {
      frontal(fu, g) = svd.u.conjugate();
      frontal(fv, g) = svd.v.conjugate();
      frontal(fs, g) = s;
    }
  });
  return {ifft_modes(fu, exec), ifft_modes(fs, exec), ifft_modes(fv, exec)};
}

Index tubal_rank(const TsvdFactors& f, double tol) {
  const DenseTensor& s = f.s;
  const Index r = std::min(s.n1(), s.n2());
  auto tube_sq = [&](Index i) {
    double acc = 0.0;
    for (Index g = 0; g < s.rho(); ++g) acc += s(i, i, g) * s(i, i, g);
    return std::sqrt(acc);
  };
  if (r == 0) return 0;
  const double lead = tube_sq(0);
  if (lead == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < r; ++i) {
    if (tube_sq(i) > tol * lead) ++rank;
  }
  return rank;
}

TruncatedTsvd truncate_k(const TsvdFactors& f, Index k, Exec exec) {
  const Index n1 = f.u.n1();
  const Index n2 = f.v.n1();
  if (k < 1 || k > std::min(n1, n2)) {
    throw ArgumentError("truncate_k: k=" + std::to_string(k) + " outside [1, " + std::to_string(std::min(n1, n2)) +
                        "]");
  }
  TruncatedTsvd out;
  out.u = lateral_range(f.u, 0, k);
  out.s = leading_block(f.s, k, k);
  out.v = lateral_range(f.v, 0, k);
  out.approx = t_product(t_product(out.u, out.s, exec), t_transpose(out.v), exec);
  return out;
}

Eigen::MatrixXd fourier_singular_values(const DenseTensor& a, Exec exec) {
  const FourierTensor fa = fft_modes(a, exec);
  const FourierPairing pairing(a.trailing_dims());
  const auto r = static_cast<Eigen::Index>(std::min(a.n1(), a.n2()));
  Eigen::MatrixXd sv(static_cast<Eigen::Index>(a.rho()), r);
  const auto& reps = pairing.representatives();
  const auto count = static_cast<std::int64_t>(reps.size());
  parallel_for(count, exec, [&](std::int64_t i) {
    const Index f = reps[static_cast<Index>(i)];
    const Eigen::VectorXd s = slice_singular_values(frontal(fa, f), pairing.self_conjugate(f), f);
    sv.row(static_cast<Eigen::Index>(f)) = s.transpose();
    sv.row(static_cast<Eigen::Index>(pairing.partner(f))) = s.transpose();
  });
  return sv;
}

double tail_energy(const Eigen::MatrixXd& fourier_sv, Index k) {
  const auto kk = static_cast<Eigen::Index>(k);
  if (kk >= fourier_sv.cols()) return 0.0;
  return fourier_sv.rightCols(fourier_sv.cols() - kk).squaredNorm() / static_cast<double>(fourier_sv.rows());
}

DenseTensor leading_right_factor(const DenseTensor& a, Index k, Exec exec) {
  if (k < 1 || k > std::min(a.n1(), a.n2())) {
    throw ArgumentError("leading_right_factor: k=" + std::to_string(k) + " exceeds min(n1, n2)");
  }
  const FourierTensor fa = fft_modes(a, exec);
  const auto trailing = a.trailing_dims();
  FourierTensor fv(make_dims(a.n2(), k, trailing), true);
  const FourierPairing pairing(trailing);
  const auto& reps = pairing.representatives();
  const auto count = static_cast<std::int64_t>(reps.size());
  const auto kk = static_cast<Eigen::Index>(k);
  parallel_for(count, exec, [&](std::int64_t i) {
    const Index f = reps[static_cast<Index>(i)];
    const SliceSvd svd = slice_svd(frontal(fa, f), pairing.self_conjugate(f), SvdVectors::thin, PhaseAnchor::left, f);
    frontal(fv, f) = svd.v.leftCols(kk);
    const Index g = pairing.partner(f);
    if (g != f) frontal(fv, g) = svd.v.leftCols(kk).conjugate();
  });
  return ifft_modes(fv, exec);
}

}  // namespace tfd
