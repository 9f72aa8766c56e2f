#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tfd/datagen.hpp"
#include "tfd/errors.hpp"
#include "tfd/tensor_ops.hpp"
#include "tfd/tfd_stream.hpp"
#include "tfd/tsvd.hpp"

using namespace tfd;

namespace {

double orth_defect(const DenseTensor& q) {
  const DenseTensor g = t_product(t_transpose(q), q);
  return fro_norm(subtract(g, identity_tensor(q.n2(), q.trailing_dims())));
}

}  // namespace

TEST(Decay, Laws) {
  EXPECT_DOUBLE_EQ(decay_value(DecayLaw::linear, 1, 4), 1.0);
  EXPECT_DOUBLE_EQ(decay_value(DecayLaw::linear, 4, 4), 0.25);
  EXPECT_DOUBLE_EQ(decay_value(DecayLaw::polynomial, 3, 4), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(decay_value(DecayLaw::exponential, 3, 4), 0.125);
  for (DecayLaw l : {DecayLaw::linear, DecayLaw::polynomial, DecayLaw::exponential}) {
    EXPECT_EQ(parse_decay(to_string(l)), l);
  }
  EXPECT_THROW(parse_decay("cubic"), ArgumentError);
}

TEST(Synthetic, NoiselessHasExactTubalRank) {
  SyntheticSpec spec;
  spec.dims = {40, 20, 4};
  spec.k = 5;
  spec.eta = 1e12;
  spec.seed = {1};
  EXPECT_EQ(tubal_rank(t_svd(gen_synthetic(spec).data), 1e-6), 5u);
}

TEST(Synthetic, FullRankWhenKIsMax) {
  SyntheticSpec spec;
  spec.dims = {12, 6, 3};
  spec.k = 6;
  spec.eta = std::numeric_limits<double>::infinity();
  spec.seed = {2};
  EXPECT_EQ(tubal_rank(t_svd(gen_synthetic(spec).data)), 6u);
}

TEST(Synthetic, FourierSpectrumFollowsDecayLaw) {
  // S_f D_f U_f^H has exactly k nonzero singular values in every slice
  SyntheticSpec spec;
  spec.dims = {30, 10, 5};
  spec.k = 4;
  spec.eta = std::numeric_limits<double>::infinity();
  spec.decay = DecayLaw::exponential;
  spec.seed = {3};
  const SyntheticTensor t = gen_synthetic(spec);
  ASSERT_EQ(t.laws.size(), 5u);
  for (DecayLaw l : t.laws) EXPECT_EQ(l, DecayLaw::exponential);
  const Eigen::MatrixXd sv = fourier_singular_values(t.data);
  for (Index f = 0; f < 5; ++f) {
    EXPECT_GT(sv(f, 3), 1e-6 * sv(f, 0));
    EXPECT_LT(sv(f, 4), 1e-10 * sv(f, 0));
  }
}

TEST(Synthetic, RandomLawsSharedByPartners) {
  SyntheticSpec spec;
  spec.dims = {10, 6, 7};
  spec.k = 2;
  spec.seed = {4};
  const SyntheticTensor t = gen_synthetic(spec);
  const FourierPairing pairing(std::vector<Index>{7});
  for (Index f = 0; f < 7; ++f) EXPECT_EQ(t.laws[f], t.laws[pairing.partner(f)]);
}

TEST(Synthetic, RealAndDeterministic) {
  SyntheticSpec spec;
  spec.dims = {10, 6, 4, 3};
  spec.k = 3;
  spec.seed = {5};
  const DenseTensor a = gen_synthetic(spec).data;
  const DenseTensor b = gen_synthetic(spec).data;
  EXPECT_EQ(fro_norm(subtract(a, b)), 0.0);
  spec.seed = {6};
  EXPECT_GT(fro_norm(subtract(a, gen_synthetic(spec).data)), 0.0);
  for (double v : a.data()) EXPECT_TRUE(std::isfinite(v));
}

TEST(Synthetic, NoiseLevel) {
  SyntheticSpec spec;
  spec.dims = {40, 20, 4};
  spec.k = 3;
  spec.seed = {7};
  spec.eta = std::numeric_limits<double>::infinity();
  const DenseTensor clean = gen_synthetic(spec).data;
  spec.eta = 10.0;
  const DenseTensor noisy = gen_synthetic(spec).data;
  const double noise_sq = oracle::fro_sq(subtract(noisy, clean));
  EXPECT_NEAR(noise_sq / static_cast<double>(clean.size()), 0.01, 0.002);
}

TEST(Synthetic, Validation) {
  SyntheticSpec spec;
  spec.dims = {10, 4, 3};
  spec.k = 5;
  EXPECT_THROW(spec.validate(), ArgumentError);
  spec.k = 2;
  spec.eta = 0.0;
  EXPECT_THROW(spec.validate(), ArgumentError);
  spec.eta = 1.0;
  spec.dims = {10, 4};
  EXPECT_THROW(spec.validate(), ArgumentError);
}

TEST(PartialOrthogonal, Invariant) {
  const std::vector<Index> trailing{4};
  EXPECT_LT(orth_defect(gen_partial_orthogonal(6, 3, trailing, {1})), 1e-9);
  const DenseTensor q = gen_partial_orthogonal(5, 5, trailing, {2});
  EXPECT_LT(orth_defect(q), 1e-9);
  EXPECT_LT(orth_defect(t_transpose(q)), 1e-9);
  const DenseTensor col = gen_partial_orthogonal(7, 1, std::vector<Index>{3, 2}, {3});
  EXPECT_NEAR(tube_norm(TensorColumn(col)), 1.0, 1e-9);
  EXPECT_THROW(gen_partial_orthogonal(4, 5, trailing, {1}), ArgumentError);
}

TEST(Extreme, Structure) {
  ExtremeSpec spec;
  spec.dims = {8, 5, 4};
  spec.alpha = 1e-12;
  spec.seed = {1};
  const DenseTensor a = gen_extreme(spec);
  for (Index f = 1; f < 4; ++f) EXPECT_LT((frontal(a, f) - frontal(a, 0)).cwiseAbs().maxCoeff(), 1e-11);
  spec.alpha = 0.0;
  EXPECT_THROW(spec.validate(), ArgumentError);
}

TEST(Extreme, UniformPart) {
  ExtremeSpec spec;
  spec.dims = {50, 20, 4};
  spec.alpha = 1.0;
  spec.seed = {2};
  const DenseTensor a = gen_extreme(spec);
  spec.alpha = 2.0;
  const DenseTensor b = gen_extreme(spec);
  // b - a = U, uniform on [0, 1)
  const DenseTensor u = subtract(b, a);
  double mean = 0.0;
  for (double v : u.data()) {
    EXPECT_GE(v, -1e-12);
    EXPECT_LT(v, 1.0 + 1e-12);
    mean += v;
  }
  EXPECT_NEAR(mean / static_cast<double>(u.size()), 0.5, 0.02);
}

TEST(Extreme, CParameterAtDeskScale) {
  ExtremeSpec spec;
  spec.dims = {600, 60, 20};
  spec.seed = {3};
  spec.alpha = 100.0;
  const SketchResult balanced = tfd_stream(gen_extreme(spec), 30);
  spec.alpha = 0.01;
  const SketchResult skewed = tfd_stream(gen_extreme(spec), 30);
  ASSERT_TRUE(balanced.c_value && skewed.c_value);
  EXPECT_LT(*balanced.c_value, 1.5);
  EXPECT_GT(*skewed.c_value, 0.8 * 20);
}

TEST(FullScale, RecordedConfigs) {
  const auto specs = full_scale_specs();
  ASSERT_EQ(specs.size(), 3u);
  std::vector<Index> ks;
  for (const auto& s : specs) {
    EXPECT_EQ(s.dims, (std::vector<Index>{10000, 1000, 10}));
    EXPECT_EQ(s.eta, 10.0);
    ks.push_back(s.k);
  }
  EXPECT_EQ(ks, (std::vector<Index>{10, 20, 50}));
}

TEST(Scenes, LayoutAndLabels) {
  SceneSpec spec;
  spec.seed = {1};
  const SceneStream s = gen_two_scene(spec);
  EXPECT_EQ(s.data.dims(), (std::vector<Index>{40, 60, 30}));
  ASSERT_EQ(s.labels.size(), 60u);
  for (Index t = 0; t < 60; ++t) EXPECT_EQ(s.labels[t], (t >= 20 && t < 40) ? 1 : 0);
  spec.frames_last = true;
  const SceneStream f = gen_two_scene(spec);
  EXPECT_EQ(f.data.dims(), (std::vector<Index>{40, 30, 60}));
  // same frames, different orientation
  for (Index t = 0; t < 60; t += 7) EXPECT_EQ(s.data(3, t, 5), f.data(3, 5, t));
}
