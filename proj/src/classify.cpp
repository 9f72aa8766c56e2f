#include "tfd/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "tfd/errors.hpp"
#include "tfd/tensor_ops.hpp"
#include "tfd/tfd_stream.hpp"
#include "tfd/tsvd.hpp"

namespace tfd {

namespace {

double choose2(double n) { return n * (n - 1.0) / 2.0; }

KMeansResult lloyd(const Eigen::MatrixXd& x, int k, Rng& rng, int max_iter) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());

  // k-means++ seeding
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
  Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (pick = 0; pick < n - 1; ++pick) {
        target -= d2(pick);
        if (target < 0.0) break;
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = x.row(pick);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      (centers.rowwise() - x.row(i)).rowwise().squaredNorm().minCoeff(&best);
      if (labels[static_cast<std::size_t>(i)] != static_cast<int>(best)) {
        labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
        changed = true;
      }
    }
    if (!changed) break;
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
      ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
        continue;
      }
      // empty cluster: move it to the point farthest from its center
      Eigen::VectorXd dist(n);
      for (Eigen::Index i = 0; i < n; ++i) dist(i) = (x.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
      Eigen::Index far = 0;
      dist.maxCoeff(&far);
      centers.row(c) = x.row(far);
    }
  }

  KMeansResult out;
  out.labels = std::move(labels);
  out.centers = std::move(centers);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.inertia += (x.row(i) - out.centers.row(out.labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return out;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, RandomSeed seed, int restarts, int max_iter) {
  if (k < 1 || k > points.rows()) throw ArgumentError("kmeans: need 1 <= k <= number of points");
  if (restarts < 1) throw ArgumentError("kmeans: restarts must be at least 1");
  const Eigen::RowVectorXd mean = points.colwise().mean();
  const double spread = (points.rowwise() - mean).squaredNorm();
  if (spread <= kCoincidentTol * kCoincidentTol * points.squaredNorm()) {
    KMeansResult same;
    same.labels.assign(static_cast<std::size_t>(points.rows()), 0);
    same.centers = mean.replicate(k, 1);
    same.inertia = spread;
    return same;
  }
  Rng rng(seed.value, streams::kmeans);
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    KMeansResult run = lloyd(points, k, rng, max_iter);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw ArgumentError("adjusted_rand_index: labelings differ in length");
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> ra;
  std::map<int, double> rb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    ra[a[i]] += 1.0;
    rb[b[i]] += 1.0;
  }
  double index = 0.0;
  for (const auto& [key, n] : joint) index += choose2(n);
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (const auto& [key, n] : ra) sum_a += choose2(n);
  for (const auto& [key, n] : rb) sum_b += choose2(n);
  const double pairs = choose2(static_cast<double>(a.size()));
  const double expected = pairs > 0.0 ? sum_a * sum_b / pairs : 0.0;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

std::string to_string(FrameAxis a) { return a == FrameAxis::lateral ? "lateral" : "frontal"; }

FrameAxis parse_frame_axis(const std::string& name) {
  if (name == "lateral") return FrameAxis::lateral;
  if (name == "frontal") return FrameAxis::frontal;
  throw ArgumentError("unknown frame axis '" + name + "' (expected lateral or frontal)");
}

Eigen::MatrixXd frame_features(const DenseTensor& sketch, FrameAxis axis, Exec exec) {
  const TsvdFactors f = t_svd(sketch, exec);
  if (axis == FrameAxis::frontal) {
    const auto ell = static_cast<Eigen::Index>(f.u.n1());
    const auto frames = static_cast<Eigen::Index>(f.u.rho());
    Eigen::MatrixXd features(frames, ell);
    for (Eigen::Index t = 0; t < frames; ++t) {
      features.row(t) = frontal(f.u, static_cast<Index>(t)).rowwise().mean().transpose();
    }
    return features;
  }
  const DenseTensor sv = t_product(f.s, t_transpose(f.v), exec);  // ell x n2 x ...
  const Index frames = sv.n2();
  const Index ell = sv.n1();
  const Index rho = sv.rho();
  Eigen::MatrixXd features(static_cast<Eigen::Index>(frames), static_cast<Eigen::Index>(ell * rho));
  for (Index t = 0; t < frames; ++t) {
    for (Index r = 0; r < ell; ++r) {
      for (Index g = 0; g < rho; ++g) {
        features(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(r * rho + g)) = sv(r, t, g);
      }
    }
  }
  return features;
}

SceneLabels classify_scenes(SliceSource& source, Index ell, int n_clusters, RandomSeed seed, FrameAxis axis,
                            Exec exec) {
  if (n_clusters < 2) throw ArgumentError("classify_scenes: need at least two clusters");
  const SketchResult sketch = tfd_stream(source, ell, exec);
  SceneLabels out;
  out.c_value = sketch.c_value;
  out.features = frame_features(sketch.sketch, axis, exec);
  if (n_clusters > out.features.rows()) throw ArgumentError("classify_scenes: more clusters than frames");
  KMeansResult km = kmeans(out.features, n_clusters, seed);
  out.labels = std::move(km.labels);
  out.inertia = km.inertia;
  return out;
}

}  // namespace tfd
