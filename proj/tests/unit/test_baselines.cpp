#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tfd/baselines.hpp"
#include "tfd/errors.hpp"
#include "tfd/fd_matrix.hpp"
#include "tfd/metrics.hpp"
#include "tfd/tensor_ops.hpp"

using namespace tfd;

namespace {

// Forward-only wrapper, to check the two-pass contract.
class OnePass final : public SliceSource {
 public:
  explicit OnePass(const DenseTensor& t) : inner_(t) {}
  const std::vector<Index>& dims() const override { return inner_.dims(); }
  bool next(std::span<double> out) override { return inner_.next(out); }

 private:
  TensorSliceSource inner_;
};

DenseTensor mtfd(const DenseTensor& a, Index ell) {
  TensorSliceSource src(a);
  return mtfd_stream(src, ell);
}

DenseTensor srt(const DenseTensor& a, Index ell, std::uint64_t seed,
                const std::optional<Eigen::MatrixXd>& q = std::nullopt) {
  TensorSliceSource src(a);
  return srtsvd_stream(src, ell, {seed}, q);
}

DenseTensor ns(const DenseTensor& a, Index ell, std::uint64_t seed) {
  TensorSliceSource src(a);
  return normsamp_two_pass(src, ell, {seed});
}

}  // namespace

TEST(Mtfd, ZeroStream) { EXPECT_EQ(fro_norm(mtfd(DenseTensor({20, 4, 3}), 3)), 0.0); }

TEST(Mtfd, SingletonModeIsMatrixFd) {
  const DenseTensor a = oracle::random_tensor({33, 6, 1}, 1);
  FrequentDirections fd(4, 6);
  for (Index i = 0; i < a.n1(); ++i) fd.insert(a.horizontal(i));
  EXPECT_EQ(unfold_mode1(mtfd(a, 4)), fd.finalize());
}

TEST(Mtfd, EqualsFdOnUnfolding) {
  const DenseTensor a = oracle::random_tensor({45, 5, 4}, 2);
  const Eigen::MatrixXd ref = oracle::reference_fd(unfold_mode1(a), 5);
  const Eigen::MatrixXd got = unfold_mode1(mtfd(a, 5));
  EXPECT_LT((got.transpose() * got - ref.transpose() * ref).norm(), 1e-9 * (ref.transpose() * ref).norm());
}

TEST(Mtfd, CovarianceBound) {
  const DenseTensor a = oracle::random_tensor({200, 20, 6}, 3);
  const DenseTensor b = mtfd(a, 10);
  const double fro = oracle::fro_sq(a);
  EXPECT_LE(covariance_error(a, b), mtfd_covariance_bound(6, 10, 5, fro));
  EXPECT_DOUBLE_EQ(mtfd_covariance_bound(6, 10, 5, fro), 6.0 / 5.0 * fro);
}

TEST(Srtsvd, ZeroInput) { EXPECT_EQ(fro_norm(srt(DenseTensor({10, 3, 2}), 4, 1)), 0.0); }

TEST(Srtsvd, IdentityProjectionReturnsInput) {
  const DenseTensor a = oracle::random_tensor({7, 3, 4}, 4);
  const DenseTensor b = srt(a, 7, 1, Eigen::MatrixXd::Identity(7, 7));
  EXPECT_LT(fro_norm(subtract(b, a)), 1e-14);
}

TEST(Srtsvd, MatchesDenseTProduct) {
  const DenseTensor a = oracle::random_tensor({20, 6, 3}, 5);
  const Eigen::MatrixXd q1 = srtsvd_projection(5, 20, {9});
  DenseTensor q({5, 20, 3});
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 20; ++j) q(i, j, 0) = q1(i, j);
  }
  const DenseTensor want = oracle::circular_product(q, a);
  EXPECT_LT(fro_norm(subtract(srt(a, 5, 9), want)), 1e-10 * fro_norm(want));
  EXPECT_LT(fro_norm(subtract(t_product(q, a), want)), 1e-10 * fro_norm(want));
}

TEST(Srtsvd, ProjectionScale) {
  const Eigen::MatrixXd q = srtsvd_projection(50, 400, {3});
  const double var = q.squaredNorm() / static_cast<double>(q.size());
  EXPECT_NEAR(var * 50.0, 1.0, 0.05);
}

TEST(Srtsvd, Deterministic) {
  const DenseTensor a = oracle::random_tensor({15, 4, 3}, 6);
  EXPECT_EQ(fro_norm(subtract(srt(a, 4, 77), srt(a, 4, 77))), 0.0);
  EXPECT_GT(fro_norm(subtract(srt(a, 4, 77), srt(a, 4, 78))), 0.0);
}

TEST(NormSamp, SingleNonzeroSlice) {
  DenseTensor a({6, 3, 2});
  const DenseTensor s = oracle::random_tensor({1, 3, 2}, 7);
  std::copy(s.data().begin(), s.data().end(), a.horizontal(4).begin());
  const DenseTensor b = ns(a, 4, 1);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 6; ++j) EXPECT_NEAR(b.horizontal(i)[j], s.data()[j] / 2.0, 1e-15);
  }
}

TEST(NormSamp, UniformFrequencies) {
  const std::vector<double> w(10, 2.5);
  const auto idx = normsamp_indices(w, 10000, {11});
  std::vector<double> count(10, 0.0);
  for (Index i : idx) ++count[i];
  double chi2 = 0.0;
  for (double c : count) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
  EXPECT_LT(chi2, 27.88);  // 99.9% quantile, 9 degrees of freedom
}

TEST(NormSamp, ZeroWeightsNeverDrawn) {
  const std::vector<double> w{0.0, 1.0, 0.0, 0.0, 3.0, 0.0};
  for (Index i : normsamp_indices(w, 5000, {12})) EXPECT_TRUE(i == 1 || i == 4);
  EXPECT_THROW(normsamp_indices(std::vector<double>(4, 0.0), 3, {1}), ArgumentError);
  EXPECT_THROW(ns(DenseTensor({5, 2, 2}), 3, 1), ArgumentError);
}

TEST(NormSamp, NeedsRewindableSource) {
  const DenseTensor a = oracle::random_tensor({5, 2, 2}, 8);
  OnePass src(a);
  EXPECT_THROW(normsamp_two_pass(src, 2, {1}), ArgumentError);
}

TEST(NormSamp, UnbiasedGram) {
  const DenseTensor a = oracle::random_tensor({40, 6, 3}, 9);
  const Eigen::MatrixXd ua = unfold_mode1(a);
  const Eigen::MatrixXd want = ua.transpose() * ua;
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(want.rows(), want.cols());
  for (std::uint64_t s = 0; s < 500; ++s) {
    const Eigen::MatrixXd ub = unfold_mode1(ns(a, 20, 1000 + s));
    mean += ub.transpose() * ub;
  }
  mean /= 500.0;
  EXPECT_LT((mean - want).norm(), 0.05 * want.norm());
}

TEST(NormSamp, Deterministic) {
  const DenseTensor a = oracle::random_tensor({30, 4, 2}, 10);
  EXPECT_EQ(fro_norm(subtract(ns(a, 5, 3), ns(a, 5, 3))), 0.0);
}
