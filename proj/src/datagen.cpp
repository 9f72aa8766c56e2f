#include "tfd/datagen.hpp"

#include <cmath>
#include <limits>

#include "tfd/errors.hpp"
#include "tfd/tensor_ops.hpp"

namespace tfd {

namespace {

void validate_dims(const std::vector<Index>& dims, const char* what) {
  if (dims.size() < 3) throw ArgumentError(std::string(what) + ": dims must have at least three entries");
  for (Index d : dims) {
    if (d == 0) throw ArgumentError(std::string(what) + ": dims must be positive");
  }
}

DenseTensor gaussian_tensor(const std::vector<Index>& dims, Rng& rng, double scale = 1.0) {
  DenseTensor t(dims);
  for (double& v : t.data()) v = scale * rng.normal();
  return t;
}

Eigen::MatrixXcd orthonormal_columns(Index n, Index k, bool real, Rng& rng) {
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(k);
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      g(i, j) = real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
}

// Fourier image of a partially orthogonal n2 x k x trailing tensor.
FourierTensor partial_orthogonal_fourier(Index n2, Index k, std::span<const Index> trailing, Rng& rng) {
  if (k < 1 || k > n2) throw ArgumentError("partially orthogonal tensor needs 1 <= k <= n2");
  FourierTensor q(make_dims(n2, k, trailing), true);
  const FourierPairing pairing(trailing);
  for (Index f : pairing.representatives()) {
    const bool real = pairing.self_conjugate(f);
    const Eigen::MatrixXcd m = orthonormal_columns(n2, k, real, rng);
    frontal(q, f) = m;
    if (!real) frontal(q, pairing.partner(f)) = m.conjugate();
  }
  return q;
}

}  // namespace

std::string to_string(DecayLaw law) {
  switch (law) {
    case DecayLaw::linear:
      return "linear";
    case DecayLaw::polynomial:
      return "polynomial";
    case DecayLaw::exponential:
      return "exponential";
  }
  return "?";
}

DecayLaw parse_decay(const std::string& name) {
  if (name == "linear") return DecayLaw::linear;
  if (name == "polynomial") return DecayLaw::polynomial;
  if (name == "exponential") return DecayLaw::exponential;
  throw ArgumentError("unknown decay law '" + name + "'");
}

double decay_value(DecayLaw law, Index i, Index k) {
  const double x = static_cast<double>(i);
  switch (law) {
    case DecayLaw::linear:
      return 1.0 - (x - 1.0) / static_cast<double>(k);
    case DecayLaw::polynomial:
      return 1.0 / x;
    case DecayLaw::exponential:
      return std::pow(2.0, -x);
  }
  return 0.0;
}

void SyntheticSpec::validate() const {
  validate_dims(dims, "synthetic spec");
  if (k < 1 || k > std::min(dims[0], dims[1])) throw ArgumentError("synthetic spec: need 1 <= k <= min(n1, n2)");
  if (!(eta > 0.0)) throw ArgumentError("synthetic spec: eta must be positive");
}

SyntheticTensor gen_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const Index n1 = spec.dims[0];
  const Index n2 = spec.dims[1];
  const std::span<const Index> trailing = std::span<const Index>(spec.dims).subspan(2);
  const Index k = spec.k;

  Rng core_rng(spec.seed.value, streams::synthetic_core);
  Rng factor_rng(spec.seed.value, streams::synthetic_factor);
  Rng decay_rng(spec.seed.value, streams::synthetic_decay);

  const FourierTensor s = fft_modes(gaussian_tensor(make_dims(n1, k, trailing), core_rng));
  const FourierTensor u = partial_orthogonal_fourier(n2, k, trailing, factor_rng);

  const FourierPairing pairing(trailing);
  SyntheticTensor out;
  out.laws.resize(pairing.rho());
  FourierTensor a(spec.dims, true);
  for (Index f : pairing.representatives()) {
    const DecayLaw law = spec.decay ? *spec.decay : static_cast<DecayLaw>(decay_rng.below(3));
    Eigen::VectorXd d(static_cast<Eigen::Index>(k));
    for (Index i = 0; i < k; ++i) d(static_cast<Eigen::Index>(i)) = decay_value(law, i + 1, k);
    const Eigen::MatrixXcd af = frontal(s, f) * d.cast<Complex>().asDiagonal() * frontal(u, f).adjoint();
    frontal(a, f) = af;
    const Index g = pairing.partner(f);
    if (g != f) frontal(a, g) = af.conjugate();
    out.laws[f] = law;
    out.laws[g] = law;
  }
  out.data = ifft_modes(a);

  if (std::isfinite(spec.eta)) {
    Rng noise_rng(spec.seed.value, streams::synthetic_noise);
    const double scale = 1.0 / spec.eta;
    for (double& v : out.data.data()) v += scale * noise_rng.normal();
  }
  return out;
}

DenseTensor gen_partial_orthogonal(Index n2, Index k, std::span<const Index> trailing, RandomSeed seed) {
  if (trailing.empty()) throw ArgumentError("gen_partial_orthogonal: needs at least one trailing dim");
  Rng rng(seed.value, streams::synthetic_factor);
  return ifft_modes(partial_orthogonal_fourier(n2, k, trailing, rng));
}

void ExtremeSpec::validate() const {
  validate_dims(dims, "extreme spec");
  if (!(alpha > 0.0)) throw ArgumentError("extreme spec: alpha must be positive");
}

DenseTensor gen_extreme(const ExtremeSpec& spec) {
  spec.validate();
  Rng base_rng(spec.seed.value, streams::extreme_base);
  Rng noise_rng(spec.seed.value, streams::extreme_noise);
  DenseTensor a(spec.dims);
  const auto rows = static_cast<Eigen::Index>(a.n1());
  const auto cols = static_cast<Eigen::Index>(a.n2());
  Eigen::MatrixXd base(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) base(i, j) = base_rng.normal();
  }
  for (Index f = 0; f < a.rho(); ++f) frontal(a, f) = base;
  for (double& v : a.data()) v += spec.alpha * noise_rng.uniform();
  return a;
}

std::vector<SyntheticSpec> full_scale_specs() {
  std::vector<SyntheticSpec> out;
  for (Index k : {10, 20, 50}) {
    SyntheticSpec s;
    s.dims = {10000, 1000, 10};
    s.k = k;
    s.eta = 10.0;
    s.seed = RandomSeed{k};
    out.push_back(s);
  }
  return out;
}

SceneStream gen_two_scene(const SceneSpec& spec) {
  if (spec.n1 == 0 || spec.n2 == 0 || spec.frames == 0) throw ArgumentError("scene spec: dims must be positive");
  if (spec.rank < 1 || spec.rank > std::min(spec.n1, spec.n2)) throw ArgumentError("scene spec: bad rank");
  Rng rng(spec.seed.value, streams::scenes);
  const auto r = static_cast<Eigen::Index>(spec.rank);
  const auto n1 = static_cast<Eigen::Index>(spec.n1);
  const auto n2 = static_cast<Eigen::Index>(spec.n2);

  auto low_rank = [&] {
    Eigen::MatrixXd l(n1, r);
    Eigen::MatrixXd rt(r, n2);
    for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = rng.normal();
    for (Eigen::Index i = 0; i < rt.size(); ++i) rt.data()[i] = rng.normal();
    Eigen::MatrixXd x = l * rt;
    return Eigen::MatrixXd(x / x.norm());
  };
  const Eigen::MatrixXd scene0 = low_rank();
  const Eigen::MatrixXd scene1 = low_rank();

  SceneStream out;
  out.data = spec.frames_last ? DenseTensor({spec.n1, spec.n2, spec.frames}) : DenseTensor({spec.n1, spec.frames, spec.n2});
  out.labels.assign(spec.frames, 0);
  for (const auto& [begin, end] : spec.second_scene) {
    for (Index t = begin; t < std::min(end, spec.frames); ++t) out.labels[t] = 1;
  }
  const double noise = spec.noise / std::sqrt(static_cast<double>(spec.n1 * spec.n2));
  for (Index t = 0; t < spec.frames; ++t) {
    const Eigen::MatrixXd& x = out.labels[t] == 0 ? scene0 : scene1;
    for (Eigen::Index i = 0; i < n1; ++i) {
      for (Eigen::Index j = 0; j < n2; ++j) {
        const double v = x(i, j) + noise * rng.normal();
        const auto ii = static_cast<Index>(i);
        const auto jj = static_cast<Index>(j);
        if (spec.frames_last) {
          out.data(ii, jj, t) = v;
        } else {
          out.data(ii, t, jj) = v;
        }
      }
    }
  }
  return out;
}

}  // namespace tfd
