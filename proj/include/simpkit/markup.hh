#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace simpkit {

/// The four edit operations of the annotation scheme.
enum class EditKind { Replace, Elaborate, Delete, Insert };

/// Type 1 elaborations keep part of the original span in the elaborated text;
/// type 2 replace it entirely. Parsing never classifies; see elab.hh.
enum class ElabType { Unclassified, Type1, Type2 };

/// Which text an annotated string is written over. Expert-side markup may mark
/// replace/elaborate spans without a target (the in-place request form).
enum class AnnotatedSide { ExpertAnnotated, SimpleAnnotated };

/// Which plain text to recover from an annotation.
enum class TextSide { Expert, Simple };

struct Plain {
  std::string text;
  bool operator==(const Plain &) const = default;
};

struct Edit {
  EditKind kind = EditKind::Replace;
  std::string source;  // expert-side span; empty for Insert
  std::string target;  // simple-side span; empty for Delete
  ElabType elab = ElabType::Unclassified;
  bool operator==(const Edit &) const = default;
};

using Segment = std::variant<Plain, Edit>;

/// Ordered plain and edit segments. In normal form no Plain is empty and no
/// two Plains are adjacent; edits never nest.
struct AnnotatedText {
  std::vector<Segment> segments;
  AnnotatedSide side = AnnotatedSide::SimpleAnnotated;
  bool operator==(const AnnotatedText &) const = default;
};

enum class MarkupErrc {
  UnbalancedTag,
  NestedTag,
  MissingBy,
  MisplacedBy,
  UnknownTag,
  EmptySpan,
};

class MarkupError : public std::runtime_error {
 public:
  MarkupError(MarkupErrc code, size_t offset, const std::string &what);
  MarkupErrc code() const { return code_; }
  /// Byte offset into the parsed string where the problem was detected.
  size_t offset() const { return offset_; }

 private:
  MarkupErrc code_;
  size_t offset_;
};

std::string_view to_string(EditKind kind);
std::string_view to_string(ElabType type);
std::string_view to_string(MarkupErrc code);

/// Parses tagged text. Tags: <rep>, <elab>, <del>, <ins>, their closers, and
/// the <by> separator. On the expert side, <rep>/<elab> spans may instead be
/// closed by the <extra_id_1>/<extra_id_0> sentinels, leaving the target
/// empty. Plain text is kept byte for byte apart from entity decoding
/// (&lt; and &amp;).
AnnotatedText parse_annotated(std::string_view text, AnnotatedSide side);

/// Inverse of parse_annotated. Expects a valid AnnotatedText.
std::string serialize(const AnnotatedText &annotated);

/// Concatenates Plain text with each edit's source (Expert) or target
/// (Simple), then normalizes whitespace.
std::string extract(const AnnotatedText &annotated, TextSide side);

/// Throws MarkupError if `annotated` breaks a segment invariant.
void validate(const AnnotatedText &annotated);

/// Escapes plain or span text for embedding in markup.
std::string escape_markup(std::string_view text);

/// Accumulates segments in normal form. `separate()` requests a single space
/// between the previous and next piece; it lands in an adjacent Plain when
/// there is one and becomes Plain(" ") between two edits otherwise.
class SegmentBuilder {
 public:
  void plain(std::string_view text);
  void edit(Edit edit);
  void separate();
  AnnotatedText finish(AnnotatedSide side) &&;

 private:
  void flush_space();
  std::vector<Segment> segments_;
  bool pending_space_ = false;
};

}  // namespace simpkit
