#include "tfd/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tfd/errors.hpp"
#include "tfd/fd_matrix.hpp"

namespace tfd {

namespace {

void require_ell(Index ell, const char* what) {
  if (ell < 1) throw ArgumentError(std::string(what) + ": ell must be at least 1");
}

}  // namespace

DenseTensor mtfd_stream(SliceSource& source, Index ell) {
  require_ell(ell, "mtfd_stream");
  const Index width = source.slice_size();
  FrequentDirections fd(ell, width);
  Storage<double> row(width);
  while (source.next(row)) fd.insert(row);
  const Eigen::MatrixXd b = fd.finalize();
  DenseTensor out(with_n1(source.dims(), ell));
  Eigen::Map<RowMatrix<double>>(out.data().data(), b.rows(), b.cols()) = b;
  return out;
}

Eigen::MatrixXd srtsvd_projection(Index ell, Index n1, RandomSeed seed) {
  Rng rng(seed.value, streams::srtsvd);
  const double scale = 1.0 / std::sqrt(static_cast<double>(ell));
  Eigen::MatrixXd q(static_cast<Eigen::Index>(ell), static_cast<Eigen::Index>(n1));
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) q(i, j) = scale * rng.normal();
  }
  return q;
}

DenseTensor srtsvd_stream(SliceSource& source, Index ell, RandomSeed seed,
                          const std::optional<Eigen::MatrixXd>& projection) {
  require_ell(ell, "srtsvd_stream");
  if (projection && static_cast<Index>(projection->rows()) != ell) {
    throw DimensionError("srtsvd_stream: projection must have ell rows");
  }
  const Index width = source.slice_size();
  DenseTensor b(with_n1(source.dims(), ell));
  Rng rng(seed.value, streams::srtsvd);
  const double scale = 1.0 / std::sqrt(static_cast<double>(ell));
  Storage<double> slice(width);
  std::vector<double> q(ell);
  Index j = 0;
  while (source.next(slice)) {
    if (projection) {
      if (static_cast<Eigen::Index>(j) >= projection->cols()) throw DimensionError("srtsvd_stream: projection too narrow");
      for (Index i = 0; i < ell; ++i) q[i] = (*projection)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    } else {
      for (Index i = 0; i < ell; ++i) q[i] = scale * rng.normal();
    }
    for (Index i = 0; i < ell; ++i) {
      auto row = b.horizontal(i);
      for (Index t = 0; t < width; ++t) row[t] += q[i] * slice[t];
    }
    ++j;
  }
  return b;
}

std::vector<Index> normsamp_indices(const std::vector<double>& weights, Index ell, RandomSeed seed) {
  std::vector<double> cdf(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cdf.begin());
  const double total = cdf.empty() ? 0.0 : cdf.back();
  if (!(total > 0.0)) throw ArgumentError("norm sampling: every slice has zero norm");
  Rng rng(seed.value, streams::normsamp);
  std::vector<Index> picks(ell);
  for (Index s = 0; s < ell; ++s) {
    const double x = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    if (it == cdf.end()) --it;  // x rounds up to total
    // step back over trailing zero-weight entries sharing the same cdf value
    while (weights[static_cast<Index>(it - cdf.begin())] <= 0.0) --it;
    picks[s] = static_cast<Index>(it - cdf.begin());
  }
  return picks;
}

DenseTensor normsamp_two_pass(SliceSource& source, Index ell, RandomSeed seed) {
  require_ell(ell, "normsamp_two_pass");
  if (!source.rewindable()) throw ArgumentError("normsamp_two_pass: source must support a second pass");
  const Index width = source.slice_size();
  Storage<double> slice(width);

  std::vector<double> norms;
  while (source.next(slice)) {
    double s = 0.0;
    for (double v : slice) s += v * v;
    norms.push_back(s);
  }
  const std::vector<Index> picks = normsamp_indices(norms, ell, seed);
  const double total = std::accumulate(norms.begin(), norms.end(), 0.0);

  // rows of the sketch wanting each slice, so the second pass is one sweep
  std::vector<std::pair<Index, Index>> wanted;  // (slice, sketch row)
  for (Index s = 0; s < ell; ++s) wanted.emplace_back(picks[s], s);
  std::sort(wanted.begin(), wanted.end());

  DenseTensor b(with_n1(source.dims(), ell));
  source.rewind();
  Index i = 0;
  auto w = wanted.begin();
  while (w != wanted.end() && source.next(slice)) {
    for (; w != wanted.end() && w->first == i; ++w) {
      const double p = norms[i] / total;
      const double scale = 1.0 / std::sqrt(static_cast<double>(ell) * p);
      auto row = b.horizontal(w->second);
      for (Index t = 0; t < width; ++t) row[t] = scale * slice[t];
    }
    ++i;
  }
  if (w != wanted.end()) throw FormatError("normsamp_two_pass: second pass ended early");
  return b;
}

}  // namespace tfd
