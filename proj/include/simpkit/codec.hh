#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "simpkit/diff.hh"

namespace simpkit {

/// Slot ids use the usual abbreviations: E expert, S simple, D deletion,
/// I insertion, R replacement, X elaboration, Ri/Xi the contents to replace or
/// elaborate (inputs), Ea/Sa annotated expert/simple text.
enum class Slot { E, S, D, I, R, X, Ri, Xi, Ea, Sa };

inline constexpr Slot kAllSlots[] = {Slot::E, Slot::S,  Slot::D,  Slot::I,
                                     Slot::R, Slot::X,  Slot::Ri, Slot::Xi,
                                     Slot::Ea, Slot::Sa};

std::string_view abbreviation(Slot slot);
std::optional<Slot> slot_from_abbreviation(std::string_view abbrev);

/// How a slot's value is shaped on the wire.
enum class ValueShape { Text, SpanList, PairList, Markup };
ValueShape shape_of(Slot slot);

/// The reserved value standing for a slot with no content.
inline constexpr std::string_view kEmptySlotToken = "<extra_id_0>";
inline constexpr std::string_view kElabEndSentinel = "<extra_id_0>";
inline constexpr std::string_view kRepEndSentinel = "<extra_id_1>";

struct SpanPair {
  std::string pre;
  std::string post;
  bool operator==(const SpanPair &) const = default;
};

struct EmptyValue {
  bool operator==(const EmptyValue &) const = default;
};

using SpanList = std::vector<std::string>;
using PairList = std::vector<SpanPair>;
using SlotValue = std::variant<EmptyValue, std::string, SpanList, PairList>;

bool is_empty(const SlotValue &value);

/// Source slots -> target slots.
struct Angle {
  std::vector<Slot> sources;
  std::vector<Slot> targets;

  /// "ERi->RS"; also accepts the arrow character. Syntax only: see
  /// `registered_angle` for membership.
  static Angle parse(std::string_view text);
  std::string name() const;
  bool operator==(const Angle &) const = default;
};

enum class AngleFamily { Multi, MultiInPlace, Fixed };

struct RegisteredAngle {
  Angle angle;
  std::vector<AngleFamily> families;
};

/// The position-agnostic multi angles, the in-place angles E->Sa and Ea->Sa,
/// and the fixed-angle formats E->RXDIS and E->Sa; 18 distinct angles.
const std::vector<RegisteredAngle> &registry();
bool is_registered(const Angle &angle);
/// Parses and checks membership; throws CodecError(UnregisteredAngle).
Angle registered_angle(std::string_view text);

struct Example {
  std::string pair_id;
  Angle angle;
  std::map<Slot, SlotValue> values;
  bool operator==(const Example &) const = default;
};

enum class CodecErrc {
  UnregisteredAngle,
  MalformedAngle,
  MissingSlotValue,
  MalformedSlotSyntax,
  OverlappingSpans,
  SpanOutOfBounds,
  UnsupportedEdit,
  UnknownSlot,
};

std::string_view to_string(CodecErrc code);

class CodecError : public std::runtime_error {
 public:
  CodecError(CodecErrc code, const std::string &detail);
  CodecErrc code() const { return code_; }

 private:
  CodecErrc code_;
};

/// Surface names, without the surrounding '$'.
class SlotNames {
 public:
  SlotNames();
  const std::string &name(Slot slot) const;
  std::optional<Slot> slot(std::string_view name) const;
  void set(Slot slot, std::string name);

 private:
  std::map<Slot, std::string> names_;
};

enum class FindingKind { MissingSlot, ExtraSlot, DuplicateSlot, UnknownSlot,
                         InvalidAnnotation };
std::string_view to_string(FindingKind kind);

struct DecodeFinding {
  FindingKind kind;
  std::optional<Slot> slot;
  std::string detail;
  bool operator==(const DecodeFinding &) const = default;
};

struct DecodeResult {
  Example example;
  std::vector<DecodeFinding> findings;
};

/// Requested target names first (no values), then `$name$ = value` for each
/// source slot, joined by " ; ".
std::string encode_input(const Example &example,
                         const SlotNames &names = SlotNames());

/// `$name$ = value` for every target slot; the training target format.
std::string render_output(const Example &example,
                          const SlotNames &names = SlotNames());

/// Parses a generated output. Slot-set deviations against the angle's targets
/// are findings, not errors; only broken `$name$ = value` syntax throws.
DecodeResult decode_output(std::string_view text, const Angle &angle,
                           const SlotNames &names = SlotNames());

/// Inverse of encode_input, with the same finding rules against the angle.
DecodeResult decode_input(std::string_view text, const Angle &angle,
                          const SlotNames &names = SlotNames());

struct EaSpan {
  TokenRange span;  // token interval over tokenize(expert)
  EditKind kind;    // Replace or Elaborate
};

/// Marks spans in place: `<elab>`/`<rep>` before the span, `<extra_id_0>`
/// (elaboration) or `<extra_id_1>` (replacement) right after it.
std::string encode_ea(std::string_view expert, std::vector<EaSpan> spans);

/// Escaping applied to natural-language values (and list items when
/// `in_list`); exposed for tests.
std::string escape_value(std::string_view text, bool in_list);
std::string unescape_value(std::string_view text);

}  // namespace simpkit
