#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "simpkit/aggregate.hh"
#include "simpkit/codec.hh"
#include "simpkit/corpus.hh"
#include "simpkit/metrics.hh"

namespace simpkit {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shared settings. The defaults reproduce the library defaults.
///
///   {
///     "metric_lowercase": true,
///     "slot_names": {"X": "elaborate", ...},
///     "stopwords": "path/to/list.txt",
///     "split": {"ratios": [0.75, 0.10, 0.15], "seed": 7, "stratify": true},
///     "aggregate": {"max_iters": 100, "tol": 1e-7, "threshold": 0.9,
///                   "smoothing": 1e-6}
///   }
///
/// Every key is optional; unknown keys and wrongly typed values are errors.
struct Config {
  MetricOptions metric;
  SlotNames slot_names;
  std::optional<std::string> stopwords_path;
  std::array<double, 3> split_ratios{0.75, 0.10, 0.15};
  std::optional<std::uint64_t> split_seed;
  bool split_stratify = true;
  DawidSkeneOptions dawid_skene;
  double route_threshold = 0.9;

  static Config parse(std::string_view json_text);
  static Config load(const std::string &path);
};

}  // namespace simpkit
