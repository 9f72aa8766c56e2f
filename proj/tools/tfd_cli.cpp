// Command-line front end: synth, sketch, bench, certify, classify.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "tfd/baselines.hpp"
#include "tfd/classify.hpp"
#include "tfd/datagen.hpp"
#include "tfd/errors.hpp"
#include "tfd/experiment.hpp"
#include "tfd/metrics.hpp"
#include "tfd/stream_io.hpp"
#include "tfd/tfd_stream.hpp"

namespace {

using namespace tfd;

std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.empty()) throw ArgumentError("bad dims '" + text + "' (expected e.g. 300x40x8)");
    std::size_t used = 0;
    const unsigned long long v = std::stoull(part, &used);
    if (used != part.size()) throw ArgumentError("bad dims '" + text + "'");
    dims.push_back(static_cast<Index>(v));
  }
  return dims;
}

// Input selection shared by bench and certify.
struct InputOptions {
  std::string path;
  std::string gen;
  std::string dims = "300x40x8";
  Index rank = 5;
  double eta = 10.0;
  std::string decay;
  double alpha = 1.0;
  std::uint64_t data_seed = 1;

  void add(CLI::App* app) {
    app->add_option("--in", path, "Input stream file");
    app->add_option("--gen", gen, "Generate the input instead: synthetic | extreme")
        ->check(CLI::IsMember({"synthetic", "extreme"}));
    app->add_option("--dims", dims, "Generated tensor dims, e.g. 300x40x8");
    app->add_option("--rank", rank, "Tubal rank of a synthetic tensor");
    app->add_option("--eta", eta, "Noise divisor of a synthetic tensor");
    app->add_option("--decay", decay, "Fixed decay law: linear | polynomial | exponential (default: random per slice)");
    app->add_option("--alpha", alpha, "Noise weight of an extreme-case tensor");
    app->add_option("--data-seed", data_seed, "Seed of the generated tensor");
  }

  InputSource resolve() const {
    if (!path.empty() && !gen.empty()) throw ArgumentError("give either --in or --gen, not both");
    if (!path.empty()) return path;
    if (gen == "synthetic") {
      SyntheticSpec s;
      s.dims = parse_dims(dims);
      s.k = rank;
      s.eta = eta;
      if (!decay.empty()) s.decay = parse_decay(decay);
      s.seed = RandomSeed{data_seed};
      return s;
    }
    if (gen == "extreme") {
      ExtremeSpec s;
      s.dims = parse_dims(dims);
      s.alpha = alpha;
      s.seed = RandomSeed{data_seed};
      return s;
    }
    throw ArgumentError("no input: pass --in FILE or --gen synthetic|extreme");
  }
};

DenseTensor materialize(const InputSource& src) {
  if (const auto* p = std::get_if<std::string>(&src)) return read_tensor(*p);
  if (const auto* s = std::get_if<SyntheticSpec>(&src)) return gen_synthetic(*s).data;
  return gen_extreme(std::get<ExtremeSpec>(src));
}

int run_synth(const std::string& kind, const std::string& dims, Index rank, double eta, const std::string& decay,
              double alpha, double noise, std::uint64_t seed, const std::string& out) {
  if (out.empty()) throw ArgumentError("synth: --out is required");
  if (kind == "synthetic") {
    SyntheticSpec s;
    s.dims = parse_dims(dims);
    s.k = rank;
    s.eta = eta;
    if (!decay.empty()) s.decay = parse_decay(decay);
    s.seed = RandomSeed{seed};
    write_tensor(out, gen_synthetic(s).data);
  } else if (kind == "extreme") {
    ExtremeSpec s;
    s.dims = parse_dims(dims);
    s.alpha = alpha;
    s.seed = RandomSeed{seed};
    write_tensor(out, gen_extreme(s));
  } else {
    const auto d = parse_dims(dims);
    if (d.size() != 3) throw ArgumentError("synth scenes: dims must be rows x frames x cols");
    SceneSpec s;
    s.n1 = d[0];
    s.frames = d[1];
    s.n2 = d[2];
    s.rank = rank;
    s.noise = noise;
    s.second_scene = {{s.frames / 3, 2 * s.frames / 3}};
    s.seed = RandomSeed{seed};
    const SceneStream scenes = gen_two_scene(s);
    write_tensor(out, scenes.data);
    std::ofstream labels(out + ".labels.csv");
    labels << "frame,scene\r\n";
    for (std::size_t t = 0; t < scenes.labels.size(); ++t) labels << t << ',' << scenes.labels[t] << "\r\n";
  }
  std::cout << "wrote " << out << '\n';
  return 0;
}

int run_sketch(const std::string& in, Index ell, const std::string& alg, std::uint64_t seed, const std::string& out,
               Exec exec) {
  StreamReader reader(in);
  DenseTensor sketch;
  const Algorithm a = parse_algorithm(alg);
  switch (a) {
    case Algorithm::tfd: {
      const SketchResult r = tfd_stream(reader, ell, exec);
      sketch = r.sketch;
      std::cout << "shrinks " << r.shrinks << "  delta_total " << r.delta_total << "  c "
                << (r.c_value ? std::to_string(*r.c_value) : std::string("undefined")) << '\n';
      break;
    }
    case Algorithm::mtfd:
      sketch = mtfd_stream(reader, ell);
      break;
    case Algorithm::srtsvd:
      sketch = srtsvd_stream(reader, ell, RandomSeed{seed});
      break;
    case Algorithm::normsamp:
      sketch = normsamp_two_pass(reader, ell, RandomSeed{seed});
      break;
    case Algorithm::exact:
      break;
  }
  if (!out.empty()) {
    write_tensor(out, sketch);
    std::cout << "wrote " << out << '\n';
  }
  return 0;
}

int run_certify(const InputSource& src, const std::vector<Index>& ells, const std::vector<Index>& ks, Exec exec,
                bool allow_large) {
  const DenseTensor a = materialize(src);
  const ReferenceSpectrum ref = reference_spectrum(a, exec, allow_large);
  bool failed = false;
  std::printf("%5s %4s %9s %-8s %14s %14s %-8s %14s %14s\n", "ell", "k", "c", "cov", "cov_err", "cov_bound", "proj",
              "proj_err", "proj_bound");
  for (Index ell : ells) {
    const SketchResult r = tfd_stream(a, ell, exec);
    for (Index k : ks) {
      const Certificate cert = certify_bounds(a, ref, r, k, exec);
      failed = failed || !cert.ok();
      std::printf("%5zu %4zu %9.4f %-8s %14.6g %14.6g %-8s %14.6g %14.6g\n", ell, k, cert.c,
                  to_string(cert.covariance.status).c_str(), cert.covariance.lhs, cert.covariance.rhs,
                  to_string(cert.projection.status).c_str(), cert.projection.lhs, cert.projection.rhs);
    }
  }
  return failed ? 1 : 0;
}

int run_classify(const std::string& in, Index ell, int clusters, std::uint64_t seed, const std::string& axis,
                 const std::string& out, Exec exec) {
  StreamReader reader(in);
  const SceneLabels result = classify_scenes(reader, ell, clusters, RandomSeed{seed}, parse_frame_axis(axis), exec);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary);
    if (!file) throw ArgumentError("cannot write '" + out + "'");
    os = &file;
  }
  *os << "frame,label\r\n";
  for (std::size_t t = 0; t < result.labels.size(); ++t) *os << t << ',' << result.labels[t] << "\r\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming tensor sketching with t-FD and baselines"};
  app.require_subcommand(1);

  int threads = 0;
  bool serial = false;
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
  app.add_flag("--serial", serial, "Use the serial reference kernels");

  std::string out;
  std::uint64_t seed = 1;
  std::vector<Index> ells{10};
  std::vector<Index> ks{5};
  std::vector<std::string> algs{"tfd"};
  int repeats = 1;
  bool allow_large = false;

  auto* synth = app.add_subcommand("synth", "Write a synthetic, extreme-case or two-scene tensor stream");
  std::string kind = "synthetic";
  std::string dims = "300x40x8";
  Index rank = 5;
  double eta = 10.0;
  std::string decay;
  double alpha = 1.0;
  double noise = 0.3;
  synth->add_option("--kind", kind, "synthetic | extreme | scenes")
      ->check(CLI::IsMember({"synthetic", "extreme", "scenes"}));
  synth->add_option("--dims", dims, "Dims, e.g. 300x40x8 (scenes: rows x frames x cols)");
  synth->add_option("--k,--rank", rank, "Tubal rank (synthetic) or scene rank");
  synth->add_option("--eta", eta, "Noise divisor (synthetic)");
  synth->add_option("--decay", decay, "linear | polynomial | exponential (default: random per slice)");
  synth->add_option("--alpha", alpha, "Noise weight (extreme)");
  synth->add_option("--noise", noise, "Per-frame noise norm (scenes)");
  synth->add_option("--seed", seed, "Random seed");
  synth->add_option("--out", out, "Output stream file")->required();

  auto* sketch = app.add_subcommand("sketch", "Stream a file through one sketcher");
  std::string in;
  std::string alg = "tfd";
  Index ell = 10;
  sketch->add_option("--in", in, "Input stream file")->required();
  sketch->add_option("--ell", ell, "Sketch size");
  sketch->add_option("--alg", alg, "tfd | mtfd | srtsvd | normsamp");
  sketch->add_option("--seed", seed, "Seed for randomized sketchers");
  sketch->add_option("--out", out, "Write the sketch as a stream file");

  auto* bench = app.add_subcommand("bench", "Run an experiment grid and write CSV");
  InputOptions bench_in;
  bench_in.add(bench);
  bench->add_option("--alg", algs, "Algorithms (comma separated)")->delimiter(',');
  bench->add_option("--ell", ells, "Sketch sizes (comma separated)")->delimiter(',');
  bench->add_option("--k", ks, "Target ranks (comma separated)")->delimiter(',');
  bench->add_option("--repeats", repeats, "Repeats per cell");
  bench->add_option("--seed", seed, "Base seed of the randomized sketchers");
  bench->add_option("--out", out, "CSV output path (metadata goes to <out>.meta.json)");
  bench->add_flag("--allow-large", allow_large, "Lift the oracle size cap");

  auto* certify = app.add_subcommand("certify", "Check the t-FD covariance and projection bounds");
  InputOptions cert_in;
  cert_in.add(certify);
  certify->add_option("--ell", ells, "Sketch sizes (comma separated)")->delimiter(',');
  certify->add_option("--k", ks, "Target ranks (comma separated)")->delimiter(',');
  certify->add_flag("--allow-large", allow_large, "Lift the oracle size cap");

  auto* classify = app.add_subcommand("classify", "Cluster frames from a t-FD sketch");
  int clusters = 2;
  std::string axis = "lateral";
  classify->add_option("--in", in, "Input stream file")->required();
  classify->add_option("--ell", ell, "Sketch size");
  classify->add_option("--clusters", clusters, "Number of clusters");
  classify->add_option("--seed", seed, "k-means seed");
  classify->add_option("--frame-axis", axis, "lateral (frames on mode 2) | frontal (frames on mode 3)")
      ->check(CLI::IsMember({"lateral", "frontal"}));
  classify->add_option("--out", out, "Labels CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);
  const Exec exec = serial ? Exec::serial : Exec::parallel;

  try {
    if (*synth) return run_synth(kind, dims, rank, eta, decay, alpha, noise, seed, out);
    if (*sketch) return run_sketch(in, ell, alg, seed, out, exec);
    if (*certify) return run_certify(cert_in.resolve(), ells, ks, exec, allow_large);
    if (*classify) return run_classify(in, ell, clusters, seed, axis, out, exec);
    if (*bench) {
      ExperimentConfig cfg;
      cfg.input = bench_in.resolve();
      cfg.algorithms.clear();
      for (const auto& a : algs) cfg.algorithms.push_back(parse_algorithm(a));
      cfg.ells = ells;
      cfg.ks = ks;
      cfg.repeats = repeats;
      cfg.seed = RandomSeed{seed};
      cfg.out = out;
      cfg.exec = exec;
      cfg.allow_large = allow_large;
      const auto rows = run_experiment(cfg);
      if (out.empty()) write_csv(std::cout, rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
