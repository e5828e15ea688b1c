#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simpkit {

enum class MetricErrc {
  EmptyReference,
  EmptyOutput,
  EmptyInput,
  EmptySlot,
  EmptyText,
  EmptyExpert,
  AngleMismatch,
  MissingExpert,
};

std::string_view to_string(MetricErrc code);

class MetricError : public std::runtime_error {
 public:
  MetricError(MetricErrc code, const std::string &detail);
  MetricErrc code() const { return code_; }

 private:
  MetricErrc code_;
};

struct MetricOptions {
  bool lowercase = true;
};

/// Metric-side tokenization: whitespace split, then every ASCII punctuation
/// character becomes its own token. Distinct from the case-preserving
/// annotation tokenizer in diff.hh.
std::vector<std::string> metric_tokens(std::string_view text,
                                       const MetricOptions &options = {});

/// Text as independently tokenized pieces. n-grams never cross a piece
/// boundary, which is how multi-span slot values are scored.
using Pieces = std::vector<std::vector<std::string>>;

Pieces to_pieces(std::span<const std::string> texts,
                 const MetricOptions &options = {});

constexpr int kMaxNgramOrder = 4;

/// n-gram multiset keyed by the tokens joined with U+001F.
using NgramCounts = std::map<std::string, long>;

NgramCounts ngram_counts(const Pieces &pieces, int n);

// SARI

struct SariScore {
  double sari = 0;
  double add = 0;
  double keep = 0;
  double del = 0;
};

/// SARI with the precision-only DEL and F1 ADD/KEEP, averaged over n = 1..4.
/// An order contributes to an operation's average only if the operation has
/// candidates at that order; an operation with no candidates at any order
/// scores 100 for DEL and 0 for ADD and KEEP. Scores are in [0, 100].
/// Multiple references are pooled into one multiset.
SariScore sari(std::string_view input, std::string_view output,
               std::span<const std::string> references,
               const MetricOptions &options = {});

SariScore sari(const Pieces &input, const Pieces &output,
               std::span<const Pieces> references);

// ALTDEL

struct AltDelOrder {
  int n = 0;
  long numerator = 0;       // |(I ∩ O) \ R|
  long output_total = 0;    // |O|
  long deletable_total = 0; // |I \ R|
  bool counted = false;     // O has n-grams at this order
};

/// Deletion score for a predicted span O against the input I and the
/// reference R: precision |(I∩O)\R| / |O|, recall |(I∩O)\R| / |I\R|, with
/// multiset semantics. Orders where O has no n-grams are skipped; recall at an
/// order with empty I\R is 0 and sets `degenerate`. Values are in [0, 1].
struct AltDelScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  bool degenerate = false;
  std::array<AltDelOrder, kMaxNgramOrder> orders{};
};

AltDelScore altdel(std::string_view input, std::string_view output_span,
                   std::span<const std::string> references,
                   const MetricOptions &options = {});

AltDelScore altdel(const Pieces &input, const Pieces &output,
                   std::span<const Pieces> references);

// Readability

struct ReadabilityReport {
  double fkgl = 0;
  size_t words = 0;
  size_t sentences = 0;
  size_t syllables = 0;
};

/// Flesch-Kincaid grade: 0.39 words/sentence + 11.8 syllables/word - 15.59.
/// A word is a whitespace token with a letter or digit. A sentence ends at a
/// token whose last character is one of . ! ?; trailing words without a
/// terminator form one more sentence.
ReadabilityReport fkgl(std::string_view text);

/// Vowel groups (a e i o u y), minus a silent final 'e', at least 1.
size_t count_syllables(std::string_view word);

/// 1 - levenshtein(a, b) / max(|a|, |b|) over code points; 1 when both are
/// empty.
double lev_similarity(std::string_view a, std::string_view b);

size_t levenshtein(std::string_view a, std::string_view b);

/// |simple| / |expert| in code points after whitespace normalization.
double compression_ratio(std::string_view expert, std::string_view simple);

struct RougeL {
  double recall = 0;
  double precision = 0;
  double f1 = 0;
  size_t lcs = 0;
};

/// LCS-based ROUGE-L over metric tokens.
RougeL rouge_l(std::string_view candidate, std::string_view reference,
               const MetricOptions &options = {});

size_t lcs_length(std::span<const std::string> a,
                  std::span<const std::string> b);

/// Settings that affect scores, reported next to every result.
std::map<std::string, std::string> metric_metadata();

}  // namespace simpkit
