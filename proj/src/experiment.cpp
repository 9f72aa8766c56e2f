#include "tfd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "tfd/baselines.hpp"
#include "tfd/errors.hpp"
#include "tfd/stream_io.hpp"
#include "tfd/tfd_stream.hpp"

namespace tfd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Cell {
  Algorithm algorithm;
  Index ell;
  int repeat;
  DenseTensor sketch;
  std::optional<double> c_value;
  double delta_total = 0.0;
  double sketch_time_s = 0.0;
  double io_time_s = 0.0;
  std::int64_t peak = 0;
};

// In-memory tensor for generated inputs; file inputs stay on disk until the
// oracle phase.
struct Input {
  std::optional<DenseTensor> tensor;
  std::string path;
  std::vector<DecayLaw> laws;

  std::unique_ptr<SliceSource> open() const {
    if (tensor) return std::make_unique<TensorSliceSource>(*tensor);
    return std::make_unique<StreamReader>(path);
  }
};

Input make_input(const InputSource& src) {
  Input in;
  if (const auto* path = std::get_if<std::string>(&src)) {
    in.path = *path;
  } else if (const auto* syn = std::get_if<SyntheticSpec>(&src)) {
    SyntheticTensor t = gen_synthetic(*syn);
    in.tensor = std::move(t.data);
    in.laws = std::move(t.laws);
  } else {
    in.tensor = gen_extreme(std::get<ExtremeSpec>(src));
  }
  return in;
}

Cell sketch_cell(const Input& input, Algorithm alg, Index ell, int repeat, const ExperimentConfig& cfg) {
  auto raw = input.open();
  TimedSource source(*raw);
  Cell cell{alg, ell, repeat, {}, std::nullopt, 0.0, 0.0, 0.0, 0};
  const AllocationProbe probe;
  const auto t0 = Clock::now();
  switch (alg) {
    case Algorithm::tfd: {
      SketchResult r = tfd_stream(source, ell, cfg.exec);
      cell.sketch = std::move(r.sketch);
      cell.c_value = r.c_value;
      cell.delta_total = r.delta_total;
      break;
    }
    case Algorithm::mtfd:
      cell.sketch = mtfd_stream(source, ell);
      break;
    case Algorithm::srtsvd:
      cell.sketch = srtsvd_stream(source, ell, repeat_seed(cfg.seed, repeat));
      break;
    case Algorithm::normsamp:
      cell.sketch = normsamp_two_pass(source, ell, repeat_seed(cfg.seed, repeat));
      break;
    case Algorithm::exact:
      cell.sketch = collect(source);
      break;
  }
  const double total = seconds_since(t0);
  cell.peak = probe.peak_delta();
  cell.io_time_s = source.seconds();
  cell.sketch_time_s = std::max(0.0, total - cell.io_time_s);
  return cell;
}

ErrorReport mean_row(const std::vector<ErrorReport>& group) {
  ErrorReport m = group.front();
  m.repeat = -1;
  const auto n = static_cast<double>(group.size());
  double c_sum = 0.0;
  int c_count = 0;
  m.delta_total = m.proj_err = m.cov_err = m.proj_err_ratio = m.cov_err_ratio = 0.0;
  m.sketch_time_s = m.io_time_s = m.oracle_time_s = 0.0;
  std::int64_t peak = 0;
  for (const auto& r : group) {
    if (r.c_value) {
      c_sum += *r.c_value;
      ++c_count;
    }
    m.delta_total += r.delta_total / n;
    m.proj_err += r.proj_err / n;
    m.cov_err += r.cov_err / n;
    m.proj_err_ratio += r.proj_err_ratio / n;
    m.cov_err_ratio += r.cov_err_ratio / n;
    m.sketch_time_s += r.sketch_time_s / n;
    m.io_time_s += r.io_time_s / n;
    m.oracle_time_s += r.oracle_time_s / n;
    peak = std::max(peak, r.peak_sketch_entries);
  }
  m.c_value = c_count > 0 ? std::optional<double>(c_sum / c_count) : std::nullopt;
  m.peak_sketch_entries = peak;
  return m;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_dims(const std::vector<Index>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(dims[i]);
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::tfd:
      return "tfd";
    case Algorithm::mtfd:
      return "mtfd";
    case Algorithm::srtsvd:
      return "srtsvd";
    case Algorithm::normsamp:
      return "normsamp";
    case Algorithm::exact:
      return "exact";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::tfd, Algorithm::mtfd, Algorithm::srtsvd, Algorithm::normsamp}) {
    if (to_string(a) == name) return a;
  }
  throw ArgumentError("unknown algorithm '" + name + "' (expected tfd, mtfd, srtsvd or normsamp)");
}

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw ArgumentError("experiment: no algorithms selected");
  if (ells.empty()) throw ArgumentError("experiment: no sketch sizes given");
  if (ks.empty()) throw ArgumentError("experiment: no k values given");
  for (Index e : ells) {
    if (e < 1) throw ArgumentError("experiment: sketch sizes must be at least 1");
  }
  for (Index k : ks) {
    if (k < 1) throw ArgumentError("experiment: k must be at least 1");
  }
  if (repeats < 1) throw ArgumentError("experiment: repeats must be at least 1");
  if (const auto* syn = std::get_if<SyntheticSpec>(&input)) syn->validate();
  if (const auto* ext = std::get_if<ExtremeSpec>(&input)) ext->validate();
  if (const auto* path = std::get_if<std::string>(&input)) {
    if (path->empty()) throw ArgumentError("experiment: empty input path");
  }
}

RandomSeed repeat_seed(RandomSeed base, int repeat) {
  return RandomSeed{splitmix64(base.value + static_cast<std::uint64_t>(repeat))};
}

std::vector<ErrorReport> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Input input = make_input(cfg.input);
  // fail before sketching if the oracle phase would refuse the tensor
  if (input.tensor) {
    check_oracle_size(input.tensor->dims(), cfg.allow_large);
  } else {
    check_oracle_size(StreamReader(input.path).dims(), cfg.allow_large);
  }

  // streaming phase
  std::vector<Cell> cells;
  for (Algorithm alg : cfg.algorithms) {
    for (Index ell : cfg.ells) {
      // deterministic sketchers are rerun too, so every repeat has its own timing
      for (int r = 0; r < cfg.repeats; ++r) {
        cells.push_back(sketch_cell(input, alg, ell, r, cfg));
      }
    }
  }

  // oracle phase
  std::optional<DenseTensor> loaded;
  if (!input.tensor) {
    StreamReader reader(input.path);
    loaded = collect(reader);
  }
  const DenseTensor& a = input.tensor ? *input.tensor : *loaded;
  const ReferenceSpectrum ref = reference_spectrum(a, cfg.exec, cfg.allow_large);

  std::vector<ErrorReport> rows;
  std::map<std::tuple<int, Index, Index>, std::vector<ErrorReport>> groups;
  std::vector<std::tuple<int, Index, Index>> order;
  for (const Cell& cell : cells) {
    const auto t0 = Clock::now();
    const double cov = covariance_error(a, cell.sketch, cfg.exec);
    const double cov_time = seconds_since(t0);
    for (Index k : cfg.ks) {
      const auto t1 = Clock::now();
      ErrorReport r;
      r.algorithm = to_string(cell.algorithm);
      r.ell = cell.ell;
      r.k = k;
      r.repeat = cell.repeat;
      r.dims = a.dims();
      r.c_value = cell.c_value;
      r.delta_total = cell.delta_total;
      r.cov_err = cov;
      r.proj_err = sketch_projection_error(a, cell.sketch, k, cfg.exec);
      r.tail_energy = ref.tail(k);
      r.proj_err_ratio = r.tail_energy > 0.0 ? r.proj_err / r.tail_energy : std::nan("");
      r.cov_err_ratio = r.tail_energy > 0.0 ? r.cov_err / r.tail_energy : std::nan("");
      r.sketch_time_s = cell.sketch_time_s;
      r.io_time_s = cell.io_time_s;
      r.oracle_time_s = cov_time + seconds_since(t1);
      r.peak_sketch_entries = cell.peak;
      const auto key = std::make_tuple(static_cast<int>(cell.algorithm), cell.ell, k);
      if (!groups.count(key)) order.push_back(key);
      groups[key].push_back(r);
    }
  }
  for (const auto& key : order) {
    const auto& g = groups[key];
    rows.insert(rows.end(), g.begin(), g.end());
    rows.push_back(mean_row(g));
  }

  if (!cfg.out.empty()) {
    std::ofstream csv(cfg.out, std::ios::binary);
    if (!csv) throw ArgumentError("cannot write '" + cfg.out + "'");
    write_csv(csv, rows);
    std::ofstream meta(cfg.out + ".meta.json");
    meta << experiment_metadata(cfg, input.laws) << '\n';
  }
  return rows;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "algorithm",      "ell",           "k",           "repeat",        "dims",         "c_value",
      "delta_total",    "proj_err",      "cov_err",     "tail_energy",   "proj_err_ratio", "cov_err_ratio",
      "sketch_time_s",  "io_time_s",     "oracle_time_s", "peak_sketch_entries"};
  return cols;
}

void write_csv(std::ostream& out, const std::vector<ErrorReport>& rows) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\r\n";
  for (const auto& r : rows) {
    const std::vector<std::string> fields{
        csv_field(r.algorithm),
        std::to_string(r.ell),
        std::to_string(r.k),
        r.repeat < 0 ? "mean" : std::to_string(r.repeat),
        format_dims(r.dims),
        r.c_value ? format_double(*r.c_value) : "",
        format_double(r.delta_total),
        format_double(r.proj_err),
        format_double(r.cov_err),
        format_double(r.tail_energy),
        format_double(r.proj_err_ratio),
        format_double(r.cov_err_ratio),
        format_double(r.sketch_time_s),
        format_double(r.io_time_s),
        format_double(r.oracle_time_s),
        std::to_string(r.peak_sketch_entries)};
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << "\r\n";
  }
}

std::string experiment_metadata(const ExperimentConfig& cfg, const std::vector<DecayLaw>& laws) {
  nlohmann::json j;
  j["seed"] = cfg.seed.value;
  j["repeats"] = cfg.repeats;
  j["ells"] = cfg.ells;
  j["ks"] = cfg.ks;
  for (Algorithm a : cfg.algorithms) j["algorithms"].push_back(to_string(a));
  j["exec"] = cfg.exec == Exec::parallel ? "parallel" : "serial";
  if (const auto* path = std::get_if<std::string>(&cfg.input)) {
    j["input"] = {{"kind", "file"}, {"path", *path}};
  } else if (const auto* syn = std::get_if<SyntheticSpec>(&cfg.input)) {
    std::vector<std::string> names;
    for (DecayLaw l : laws) names.push_back(to_string(l));
    j["input"] = {{"kind", "synthetic"},
                  {"dims", syn->dims},
                  {"k", syn->k},
                  {"eta", std::isfinite(syn->eta) ? nlohmann::json(syn->eta) : nlohmann::json("inf")},
                  {"seed", syn->seed.value},
                  {"decay_per_slice", names},
                  {"decay_formulas",
                   {{"linear", "1 - (i-1)/k"}, {"polynomial", "1/i"}, {"exponential", "2^-i"}}}};
  } else {
    const auto& ext = std::get<ExtremeSpec>(cfg.input);
    j["input"] = {{"kind", "extreme"}, {"dims", ext.dims}, {"alpha", ext.alpha}, {"seed", ext.seed.value}};
  }
  return j.dump(2);
}

}  // namespace tfd
