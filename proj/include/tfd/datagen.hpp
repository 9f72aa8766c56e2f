#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfd/random.hpp"
#include "tfd/tensor.hpp"

namespace tfd {

/// Singular value profiles placed on the diagonal of a Fourier slice of D:
///   linear       sigma_i = 1 - (i - 1) / k
///   polynomial   sigma_i = 1 / i
///   exponential  sigma_i = 2^-i
/// for i = 1..k.
enum class DecayLaw { linear, polynomial, exponential };

std::string to_string(DecayLaw law);
DecayLaw parse_decay(const std::string& name);
double decay_value(DecayLaw law, Index i, Index k);

struct SyntheticSpec {
  std::vector<Index> dims;  // (n1, n2, n3, ...), order >= 3
  Index k = 1;
  double eta = 10.0;        // noise divisor; infinity disables noise
  /// Fixed law for every slice; empty draws one law per Fourier slice pair.
  std::optional<DecayLaw> decay;
  RandomSeed seed;

  void validate() const;
};

struct SyntheticTensor {
  DenseTensor data;
  std::vector<DecayLaw> laws;  // one per Fourier slice (partners share)
};

/// A = S * D * U^T + N / eta with S (n1 x k x ...) and N (n1 x n2 x ...)
/// i.i.d. N(0, 1), D (k x k x ...) f-diagonal with the decay profile in every
/// Fourier slice, and U (n2 x k x ...) partially orthogonal.
SyntheticTensor gen_synthetic(const SyntheticSpec& spec);

/// n2 x k x trailing tensor with U^T * U = I: orthonormalized Gaussian draws
/// per Fourier slice, conjugate partners mirrored so the result is real.
DenseTensor gen_partial_orthogonal(Index n2, Index k, std::span<const Index> trailing, RandomSeed seed);

struct ExtremeSpec {
  std::vector<Index> dims;
  double alpha = 1.0;
  RandomSeed seed;

  void validate() const;
};

/// A = B + alpha U: every frontal slice of B is the same N(0, 1) matrix, U is
/// i.i.d. uniform on [0, 1).
DenseTensor gen_extreme(const ExtremeSpec& spec);

/// Full-size synthetic configurations (10000 x 1000 x 10, eta = 10,
/// k in {10, 20, 50}). Too large for routine runs; kept for reference.
std::vector<SyntheticSpec> full_scale_specs();

struct SceneSpec {
  Index n1 = 40;      // rows of a frame
  Index n2 = 30;      // columns of a frame
  Index frames = 60;  // n3
  Index rank = 3;
  double noise = 0.05;
  /// Frame ranges [begin, end) showing the second scene; the rest show the first.
  std::vector<std::pair<Index, Index>> second_scene{{20, 40}};
  /// false: tensor is n1 x frames x n2 (frames on mode 2);
  /// true: n1 x n2 x frames (frames on mode 3).
  bool frames_last = false;
  RandomSeed seed;
};

struct SceneStream {
  DenseTensor data;
  std::vector<int> labels;   // ground truth scene per frame
};

/// Video-like stand-in: frame t (an n1 x n2 image) = X_s(t) + noise with two
/// fixed low-rank images X_0, X_1 of unit Frobenius norm. The noise has
/// Frobenius norm about `noise` per frame.
SceneStream gen_two_scene(const SceneSpec& spec);

}  // namespace tfd
