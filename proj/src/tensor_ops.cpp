#include "tfd/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfd/errors.hpp"
#include "tfd/parallel.hpp"
#include "tfd/fft.hpp"

namespace tfd {

namespace {

void require_order3(const std::vector<Index>& dims, const char* what) {
  if (dims.size() < 3) throw DimensionError(std::string(what) + " requires a tensor of order >= 3");
}

bool same_trailing(std::span<const Index> a, std::span<const Index> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

void transform_trailing(std::span<Complex> data, Index lead, Index n2, std::span<const Index> trailing,
                        FftDirection direction, Exec exec) {
  const Index rho = product(trailing);
  if (data.size() != lead * n2 * rho) throw DimensionError("transform_trailing: buffer size mismatch");

  Index stride = n2;
  for (Index n : trailing) {
    if (n > 1) {
      const FftPlan& plan = fft_plan(n);
      const Index block = stride * n;
      const Index tubes = data.size() / n;
      const auto count = static_cast<std::int64_t>(tubes);
#pragma omp parallel if (exec == Exec::parallel && tubes > 64)
      {
        std::vector<Complex> tube(n);
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < count; ++t) {
          const Index outer = static_cast<Index>(t) / stride;
          const Index inner = static_cast<Index>(t) % stride;
          Complex* base = data.data() + outer * block + inner;
          for (Index j = 0; j < n; ++j) tube[j] = base[j * stride];
          if (direction == FftDirection::forward) {
            plan.forward(tube);
          } else {
            plan.inverse(tube);
          }
          for (Index j = 0; j < n; ++j) base[j * stride] = tube[j];
        }
      }
    }
    stride *= n;
  }
}

FourierTensor fft_modes(const DenseTensor& t, Exec exec) {
  require_order3(t.dims(), "fft_modes");
  Storage<Complex> data(t.data().begin(), t.data().end());
  FourierTensor out(t.dims(), std::move(data), true);
  transform_trailing(out.data(), t.n1(), t.n2(), t.trailing_dims(), FftDirection::forward, exec);
  return out;
}

DenseTensor ifft_modes(const FourierTensor& t, Exec exec) {
  require_order3(t.dims(), "ifft_modes");
  Storage<Complex> work(t.data().begin(), t.data().end());
  transform_trailing(work, t.n1(), t.n2(), t.trailing_dims(), FftDirection::inverse, exec);

  double imag_sq = 0.0;
  double total_sq = 0.0;
  Storage<double> real(work.size());
  for (Index i = 0; i < work.size(); ++i) {
    imag_sq += work[i].imag() * work[i].imag();
    total_sq += std::norm(work[i]);
    real[i] = work[i].real();
  }
  if (std::sqrt(imag_sq) > kImagResidueTol * std::sqrt(total_sq)) {
    throw NumericalError("ifft_modes: imaginary residue " + std::to_string(std::sqrt(imag_sq)) +
                         " exceeds tolerance for a real result");
  }
  return DenseTensor(t.dims(), std::move(real));
}

DenseTensor t_product(const DenseTensor& a, const DenseTensor& b, Exec exec) {
  require_order3(a.dims(), "t_product");
  if (a.order() != b.order() || !same_trailing(a.trailing_dims(), b.trailing_dims())) {
    throw DimensionError("t_product: trailing dims differ");
  }
  if (a.n2() != b.n1()) throw DimensionError("t_product: inner dims differ");

  const FourierTensor fa = fft_modes(a, exec);
  const FourierTensor fb = fft_modes(b, exec);
  FourierTensor fc(make_dims(a.n1(), b.n2(), a.trailing_dims()), true);
  const FourierPairing pairing(a.trailing_dims());
  const auto& reps = pairing.representatives();
  const auto count = static_cast<std::int64_t>(reps.size());
  parallel_for(count, exec, [&](std::int64_t r) {
    const Index f = reps[static_cast<Index>(r)];
    auto out = frontal(fc, f);
    out.noalias() = frontal(fa, f) * frontal(fb, f);
    const Index g = pairing.partner(f);
    if (g != f) frontal(fc, g) = out.conjugate();
  });
  return ifft_modes(fc, exec);
}

DenseTensor t_transpose(const DenseTensor& a) {
  require_order3(a.dims(), "t_transpose");
  DenseTensor out(make_dims(a.n2(), a.n1(), a.trailing_dims()));
  const auto trailing = a.trailing_dims();
  for (Index f = 0; f < a.rho(); ++f) {
    const Index g = frontal_negate(trailing, f);
    frontal(out, g) = frontal(a, f).transpose();
  }
  return out;
}

DenseTensor identity_tensor(Index n, std::span<const Index> trailing) {
  DenseTensor out(make_dims(n, n, trailing));
  for (Index i = 0; i < n; ++i) out(i, i, 0) = 1.0;
  return out;
}

Eigen::MatrixXd bcirc_matrix(const DenseTensor& a) {
  const Index rows = a.n1() * a.rho();
  const Index cols = a.n2() * a.rho();
  if (rows * cols > kBcircEntryCap) {
    throw ArgumentError("bcirc_matrix: " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds the oracle size cap");
  }
  const auto trailing = a.trailing_dims();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Index fr = 0; fr < a.rho(); ++fr) {
    for (Index fc = 0; fc < a.rho(); ++fc) {
      const Index f = frontal_difference(trailing, fr, fc);
      m.block(static_cast<Eigen::Index>(fr * a.n1()), static_cast<Eigen::Index>(fc * a.n2()),
              static_cast<Eigen::Index>(a.n1()), static_cast<Eigen::Index>(a.n2())) = frontal(a, f);
    }
  }
  return m;
}

double fro_norm(const DenseTensor& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double tube_norm(const TensorColumn& x) { return fro_norm(x.tensor()); }

double tensor_spectral_norm(const DenseTensor& a, Exec exec) {
  const FourierTensor fa = fft_modes(a, exec);
  const FourierPairing pairing(a.trailing_dims());
  const auto& reps = pairing.representatives();
  std::vector<double> per_slice(reps.size(), 0.0);
  const auto count = static_cast<std::int64_t>(reps.size());
  parallel_for(count, exec, [&](std::int64_t r) {
    const Eigen::MatrixXcd m = frontal(fa, reps[static_cast<Index>(r)]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    per_slice[static_cast<Index>(r)] = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  });
  return per_slice.empty() ? 0.0 : *std::max_element(per_slice.begin(), per_slice.end());
}

Eigen::MatrixXd unfold_mode1(const DenseTensor& a) {
  const auto rows = static_cast<Eigen::Index>(a.n1());
  const auto cols = static_cast<Eigen::Index>(a.n2() * a.rho());
  return Eigen::Map<const RowMatrix<double>>(a.data().data(), rows, cols);
}

DenseTensor fold_mode1(const Eigen::MatrixXd& m, std::span<const Index> dims) {
  std::vector<Index> d(dims.begin(), dims.end());
  if (d.size() < 2) throw DimensionError("fold_mode1: need at least two dims");
  DenseTensor out(d);
  if (static_cast<Index>(m.rows()) != out.n1() || static_cast<Index>(m.cols()) != out.n2() * out.rho()) {
    throw DimensionError("fold_mode1: matrix shape does not match dims");
  }
  Eigen::Map<RowMatrix<double>>(out.data().data(), m.rows(), m.cols()) = m;
  return out;
}

DenseTensor horizontal_slice(const DenseTensor& a, Index i1) {
  if (i1 >= a.n1()) throw DimensionError("horizontal_slice: index out of range");
  const auto src = a.horizontal(i1);
  return DenseTensor(with_n1(a.dims(), 1), Storage<double>(src.begin(), src.end()));
}

DenseTensor lateral_range(const DenseTensor& a, Index begin, Index end) {
  if (begin > end || end > a.n2()) throw DimensionError("lateral_range: bad column range");
  DenseTensor out(make_dims(a.n1(), end - begin, a.trailing_dims()));
  for (Index f = 0; f < a.rho(); ++f) {
    frontal(out, f) = frontal(a, f).middleCols(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(end - begin));
  }
  return out;
}

DenseTensor leading_block(const DenseTensor& a, Index rows, Index cols) {
  if (rows > a.n1() || cols > a.n2()) throw DimensionError("leading_block: block exceeds tensor");
  DenseTensor out(make_dims(rows, cols, a.trailing_dims()));
  for (Index f = 0; f < a.rho(); ++f) {
    frontal(out, f) = frontal(a, f).topLeftCorner(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  }
  return out;
}

DenseTensor subtract(const DenseTensor& a, const DenseTensor& b) {
  if (a.dims() != b.dims()) throw DimensionError("subtract: dims differ");
  DenseTensor out(a.dims());
  for (Index i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

Eigen::MatrixXcd fourier_slice(const FourierTensor& t, Index f) { return frontal(t, f); }

}  // namespace tfd
