#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tfd/exec.hpp"
#include "tfd/random.hpp"
#include "tfd/slice_source.hpp"
#include "tfd/tensor.hpp"

namespace tfd {

struct KMeansResult {
  std::vector<int> labels;
  Eigen::MatrixXd centers;  // one row per cluster
  double inertia = 0.0;     // sum of squared distances to the assigned center
};

/// Relative spread below which all points are treated as one location.
inline constexpr double kCoincidentTol = 1e-10;

/// Lloyd iterations from k-means++ seeds, best of `restarts` runs by inertia.
/// Points are the rows of `points`. When every point coincides with the mean
/// up to kCoincidentTol (relative), all get label 0 instead of being split on
/// roundoff. Throws ArgumentError unless 1 <= k <= number of points.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, RandomSeed seed, int restarts = 20, int max_iter = 300);

/// Adjusted Rand index of two labelings of the same items. Two labelings that
/// each put everything in one cluster score 1.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// Where the frames sit in the streamed tensor.
///   lateral: frames index mode 2 (tensor rows x frames x columns, streamed
///            over rows). Frame t's feature vector is lateral slice t of
///            S * V^T from the sketch's t-SVD B = U * S * V^T, flattened to
///            ell * rho values. Since U is orthogonal these slices have the
///            same pairwise distances as the sketch's lateral slices, which
///            approximate the frames' own distances.
///   frontal: frames index the trailing modes. Frame t's feature vector is
///            column t of the ell x rho matrix obtained by averaging U over
///            its second mode.
enum class FrameAxis { lateral, frontal };

std::string to_string(FrameAxis a);
FrameAxis parse_frame_axis(const std::string& name);

/// One row per frame.
Eigen::MatrixXd frame_features(const DenseTensor& sketch, FrameAxis axis, Exec exec = Exec::parallel);

struct SceneLabels {
  std::vector<int> labels;    // one per frame
  Eigen::MatrixXd features;   // one row per frame
  std::optional<double> c_value;
  double inertia = 0.0;
};

/// Sketches the stream with t-FD, takes the sketch's t-SVD, extracts per-frame
/// features along `axis` and clusters them with k-means. Throws ArgumentError
/// when n_clusters < 2 or exceeds the number of frames.
SceneLabels classify_scenes(SliceSource& source, Index ell, int n_clusters, RandomSeed seed,
                            FrameAxis axis = FrameAxis::lateral, Exec exec = Exec::parallel);

}  // namespace tfd
