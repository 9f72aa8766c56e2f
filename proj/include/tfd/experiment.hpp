#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "tfd/datagen.hpp"
#include "tfd/exec.hpp"
#include "tfd/metrics.hpp"
#include "tfd/random.hpp"

namespace tfd {

/// `exact` returns A itself as its sketch; it exists to pin the error floors
/// (covariance 0, projection ratio 1) in tests and is not offered by the CLI.
enum class Algorithm { tfd, mtfd, srtsvd, normsamp, exact };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

using InputSource = std::variant<std::string, SyntheticSpec, ExtremeSpec>;

struct ExperimentConfig {
  InputSource input;
  std::vector<Algorithm> algorithms{Algorithm::tfd};
  std::vector<Index> ells{10};
  std::vector<Index> ks{5};
  int repeats = 1;
  RandomSeed seed;
  std::string out;         // CSV path; empty writes nothing
  Exec exec = Exec::parallel;
  bool allow_large = false;  // lift the oracle size cap

  /// Throws ArgumentError on empty lists, ell or k < 1, repeats < 1.
  void validate() const;
};

/// Seed used by repeat r of a randomized baseline.
RandomSeed repeat_seed(RandomSeed base, int repeat);

/// Sketches every (algorithm, ell, repeat) cell in a streaming phase, then
/// evaluates every k against the full tensor in a separate oracle phase. Rows
/// come ordered by algorithm, ell, k, repeat; one mean row (repeat = -1)
/// follows each (algorithm, ell, k) group. Cells run one after another so
/// the allocation probe sees a single sketch at a time; the kernels inside a
/// cell use OpenMP according to cfg.exec.
std::vector<ErrorReport> run_experiment(const ExperimentConfig& cfg);

/// Column order of the CSV output.
const std::vector<std::string>& csv_columns();
/// RFC-4180 CSV with a header row, CRLF line endings.
void write_csv(std::ostream& out, const std::vector<ErrorReport>& rows);
/// JSON description of the configuration (input, decay laws drawn for a
/// synthetic input, seeds), written next to the CSV as <out>.meta.json.
std::string experiment_metadata(const ExperimentConfig& cfg, const std::vector<DecayLaw>& laws = {});

}  // namespace tfd
