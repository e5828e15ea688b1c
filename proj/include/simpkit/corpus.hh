#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "simpkit/metrics.hh"

namespace simpkit {

enum class CorpusSource { SimpWiki, Msd, Other };

std::string_view to_string(CorpusSource source);
/// Case-insensitive; unknown names are an error.
std::optional<CorpusSource> corpus_source_from(std::string_view name);

struct CorpusRecord {
  std::string pair_id;
  CorpusSource source = CorpusSource::Other;
  std::string expert;
  std::string simple;
  std::optional<std::string> annotated;  // simple-side markup
  bool operator==(const CorpusRecord &) const = default;
};

enum class CorpusFormat { Tsv, Jsonl };

/// From the extension: .tsv, otherwise JSONL.
CorpusFormat format_for_path(std::string_view path);

enum class CorpusErrc { Io, Parse, Validation, EmptyCorpus, Ratio };

class CorpusError : public std::runtime_error {
 public:
  CorpusError(CorpusErrc code, const std::string &what,
              size_t line = 0, std::vector<std::string> pair_ids = {});
  CorpusErrc code() const { return code_; }
  /// 1-based line for parse errors, else 0.
  size_t line() const { return line_; }
  /// Failing records for validation errors.
  const std::vector<std::string> &pair_ids() const { return pair_ids_; }

 private:
  CorpusErrc code_;
  size_t line_;
  std::vector<std::string> pair_ids_;
};

/// TSV columns: pair_id, source, expert, simple and an optional annotated
/// column; an optional header row names them. Fields escape tab, newline,
/// carriage return and backslash with a backslash. JSONL objects carry the
/// same keys; "source" defaults to other and "annotated" may be absent or
/// null.
std::vector<CorpusRecord> parse_corpus(std::string_view content,
                                       CorpusFormat format);
std::string format_corpus(const std::vector<CorpusRecord> &records,
                          CorpusFormat format);

/// Reads and validates. Blank texts, duplicate pair ids and annotations that
/// do not parse or do not extract back to the record's texts are collected
/// into one Validation error.
std::vector<CorpusRecord> load_corpus(const std::string &path,
                                      CorpusFormat format);
void save_corpus(const std::vector<CorpusRecord> &records,
                 const std::string &path, CorpusFormat format);
void validate_corpus(const std::vector<CorpusRecord> &records);

struct MeanStd {
  double mean = 0;
  double std = 0;  // sample standard deviation; 0 when n < 2
  size_t n = 0;
};

/// Word-level change counts between the two texts: metric tokens without
/// punctuation, aligned with the annotation matcher.
struct WordChanges {
  size_t added = 0;
  size_t deleted = 0;
  size_t kept = 0;
};

WordChanges word_changes(std::string_view expert, std::string_view simple,
                         const MetricOptions &options = {});

struct PairStats {
  double lev_similarity = 0;
  double compression = 0;
  double fkgl_expert = 0;
  double fkgl_simple = 0;
  WordChanges words;
};

PairStats pair_stats(const CorpusRecord &record,
                     const MetricOptions &options = {});

struct CorpusStats {
  size_t records = 0;
  MeanStd lev_similarity;
  MeanStd compression;
  MeanStd fkgl_expert;
  MeanStd fkgl_simple;
  MeanStd words_added;
  MeanStd words_deleted;
  MeanStd words_kept;
  /// elaboration, replacement, insertion, deletion; counted over records
  /// with annotations.
  std::map<std::string, size_t> edits;
  size_t annotated_records = 0;
};

/// Throws CorpusError(EmptyCorpus) on an empty corpus. `jobs` > 1 computes
/// the per-pair values concurrently; the result does not depend on it.
CorpusStats corpus_stats(const std::vector<CorpusRecord> &records,
                         const MetricOptions &options = {}, unsigned jobs = 1);

/// Levenshtein-similarity strata: [0,0.3), [0.3,0.5), [0.5,0.7), [0.7,1].
inline constexpr std::array<double, 3> kStratumEdges{0.3, 0.5, 0.7};
size_t stratum_of(double lev_similarity);

struct SplitOptions {
  std::array<double, 3> ratios{0.75, 0.10, 0.15};
  std::uint64_t seed = 0;
  bool stratify = true;
};

struct SplitStratum {
  size_t stratum = 0;
  std::array<size_t, 3> sizes{};
};

struct CorpusSplit {
  /// train, dev, test; each keeps the corpus order.
  std::array<std::vector<CorpusRecord>, 3> parts;
  std::vector<SplitStratum> strata;
};

/// Split sizes for n records by largest remainder; ties go to the earlier
/// part.
std::array<size_t, 3> split_sizes(size_t n, const std::array<double, 3> &ratios);

/// Stratified, seeded split. Totals follow split_sizes; each stratum gets
/// its floor share per part and the remaining records are spread so each
/// stratum stays within one record of its exact share. Throws
/// CorpusError(Ratio) unless the ratios are non-negative and sum to 1.
CorpusSplit split_corpus(const std::vector<CorpusRecord> &records,
                         const SplitOptions &options);

/// JSON manifest: seed, ratios, stratification, sizes and pair ids per part.
std::string split_manifest(const CorpusSplit &split, const SplitOptions &options);

}  // namespace simpkit
