#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "simpkit/markup.hh"

namespace simpkit {

/// Half-open character (byte) interval.
struct CharSpan {
  size_t begin = 0;
  size_t end = 0;
  bool operator==(const CharSpan &) const = default;
};

/// A coreference link from a span of the normalized expert text to a span of
/// the normalized simple text, as produced by an external resolver.
struct CorefLink {
  CharSpan expert;
  CharSpan simple;
  bool operator==(const CorefLink &) const = default;
};

class ElabError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ElabWarning {
  size_t link_index = 0;  // index into the caller's link list
  std::string message;
};

struct ElaborationResult {
  AnnotatedText annotated;
  std::vector<ElabWarning> warnings;
  size_t upgraded = 0;
};

/// Fixed English stopword list used for elaboration typing.
class StopwordList {
 public:
  /// The bundled list (see `version()`).
  static const StopwordList &builtin();
  /// One word per line; blank lines and lines starting with '#' are skipped.
  static StopwordList from_file(const std::string &path);

  explicit StopwordList(std::vector<std::string> words,
                        std::string version = "custom");

  bool contains(std::string_view lowercase_word) const;
  const std::string &version() const { return version_; }
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
  std::string version_;
};

/// Relabels edits as elaborations where a coreference link maps an expert
/// span to a simple span that is strictly longer in tokens. The run of
/// segments covered by the link's simple span is merged into one Elaborate
/// edit, so neither extracted text changes. When an edit overlaps several
/// qualifying links the earliest link (by simple-text position) wins and a
/// warning names the others.
///
/// `annotated` must come from auto_annotate over the same pair the link
/// offsets refer to. Throws ElabError (SpanOutOfBounds) for empty or
/// out-of-range spans.
ElaborationResult detect_elaborations(
    const AnnotatedText &annotated, const std::vector<CorefLink> &links,
    const StopwordList &stopwords = StopwordList::builtin());

/// Type1 when a content token of the source (lowercased, punctuation and
/// stopwords removed) also appears in the target, Type2 otherwise. A source
/// made only of stopwords falls back to comparing all of its words.
ElabType classify_elaboration(
    const Edit &edit, const StopwordList &stopwords = StopwordList::builtin());

}  // namespace simpkit
