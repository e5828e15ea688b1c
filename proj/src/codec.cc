#include "simpkit/codec.hh"

#include <algorithm>

#include "simpkit/markup.hh"
#include "simpkit/text.hh"

namespace simpkit {

namespace {

constexpr std::string_view kPartSep = " ; ";
constexpr std::string_view kItemSep = ", ";
constexpr std::string_view kPairSep = " <by> ";

}  // namespace

// Slots

std::string_view abbreviation(Slot slot) {
  switch (slot) {
    case Slot::E: return "E";
    case Slot::S: return "S";
    case Slot::D: return "D";
    case Slot::I: return "I";
    case Slot::R: return "R";
    case Slot::X: return "X";
    case Slot::Ri: return "Ri";
    case Slot::Xi: return "Xi";
    case Slot::Ea: return "Ea";
    case Slot::Sa: return "Sa";
  }
  return "";
}

std::optional<Slot> slot_from_abbreviation(std::string_view abbrev) {
  for (Slot slot : kAllSlots) {
    if (abbreviation(slot) == abbrev) return slot;
  }
  return std::nullopt;
}

ValueShape shape_of(Slot slot) {
  switch (slot) {
    case Slot::E:
    case Slot::S: return ValueShape::Text;
    case Slot::Ea:
    case Slot::Sa: return ValueShape::Markup;
    case Slot::R:
    case Slot::X: return ValueShape::PairList;
    case Slot::D:
    case Slot::I:
    case Slot::Ri:
    case Slot::Xi: return ValueShape::SpanList;
  }
  return ValueShape::Text;
}

bool is_empty(const SlotValue &value) {
  if (std::holds_alternative<EmptyValue>(value)) return true;
  if (const auto *text = std::get_if<std::string>(&value)) return text->empty();
  if (const auto *list = std::get_if<SpanList>(&value)) return list->empty();
  return std::get<PairList>(value).empty();
}

std::string_view to_string(CodecErrc code) {
  switch (code) {
    case CodecErrc::UnregisteredAngle: return "UnregisteredAngle";
    case CodecErrc::MalformedAngle: return "MalformedAngle";
    case CodecErrc::MissingSlotValue: return "MissingSlotValue";
    case CodecErrc::MalformedSlotSyntax: return "MalformedSlotSyntax";
    case CodecErrc::OverlappingSpans: return "OverlappingSpans";
    case CodecErrc::SpanOutOfBounds: return "SpanOutOfBounds";
    case CodecErrc::UnsupportedEdit: return "UnsupportedEdit";
    case CodecErrc::UnknownSlot: return "UnknownSlot";
  }
  return "";
}

std::string_view to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::MissingSlot: return "MissingSlot";
    case FindingKind::ExtraSlot: return "ExtraSlot";
    case FindingKind::DuplicateSlot: return "DuplicateSlot";
    case FindingKind::UnknownSlot: return "UnknownSlot";
    case FindingKind::InvalidAnnotation: return "InvalidAnnotation";
  }
  return "";
}

CodecError::CodecError(CodecErrc code, const std::string &detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code) {}

SlotNames::SlotNames()
    : names_{{Slot::E, "expert"},
             {Slot::S, "simple"},
             {Slot::D, "delete"},
             {Slot::I, "insert"},
             {Slot::R, "replace"},
             {Slot::X, "elaborate"},
             {Slot::Ri, "replace_in"},
             {Slot::Xi, "elaborate_in"},
             {Slot::Ea, "annotated_expert"},
             {Slot::Sa, "annotated_simple"}} {}

const std::string &SlotNames::name(Slot slot) const { return names_.at(slot); }

std::optional<Slot> SlotNames::slot(std::string_view name) const {
  for (const auto &[slot, surface] : names_) {
    if (surface == name) return slot;
  }
  return std::nullopt;
}

void SlotNames::set(Slot slot, std::string name) {
  names_[slot] = std::move(name);
}

// Angles

Angle Angle::parse(std::string_view text) {
  std::string norm = normalize_whitespace(text);
  std::string_view arrow = "->";
  size_t at = norm.find(arrow);
  if (at == std::string::npos) {
    arrow = "\xE2\x86\x92";
    at = norm.find(arrow);
  }
  if (at == std::string::npos) {
    throw CodecError(CodecErrc::MalformedAngle, "no arrow in '" + norm + "'");
  }
  auto parse_side = [&](std::string_view side) {
    std::string compact;
    for (char c : side) {
      if (!is_space(c)) compact.push_back(c);
    }
    std::vector<Slot> slots;
    size_t i = 0;
    while (i < compact.size()) {
      std::optional<Slot> slot;
      if (i + 1 < compact.size()) {
        slot = slot_from_abbreviation(std::string_view(compact).substr(i, 2));
        if (slot) i += 2;
      }
      if (!slot) {
        slot = slot_from_abbreviation(std::string_view(compact).substr(i, 1));
        if (!slot) {
          throw CodecError(CodecErrc::MalformedAngle,
                           "unknown slot at '" + compact.substr(i) + "'");
        }
        i += 1;
      }
      if (std::find(slots.begin(), slots.end(), *slot) != slots.end()) {
        throw CodecError(CodecErrc::MalformedAngle,
                         "slot repeated in '" + compact + "'");
      }
      slots.push_back(*slot);
    }
    if (slots.empty()) {
      throw CodecError(CodecErrc::MalformedAngle, "empty side in '" + norm + "'");
    }
    return slots;
  };
  Angle angle;
  angle.sources = parse_side(std::string_view(norm).substr(0, at));
  angle.targets = parse_side(std::string_view(norm).substr(at + arrow.size()));
  return angle;
}

std::string Angle::name() const {
  std::string out;
  for (Slot s : sources) out += abbreviation(s);
  out += "->";
  for (Slot s : targets) out += abbreviation(s);
  return out;
}

const std::vector<RegisteredAngle> &registry() {
  static const std::vector<RegisteredAngle> angles = [] {
    std::vector<RegisteredAngle> out;
    auto add = [&](std::string_view name, AngleFamily family) {
      Angle angle = Angle::parse(name);
      for (RegisteredAngle &r : out) {
        if (r.angle == angle) {
          r.families.push_back(family);
          return;
        }
      }
      out.push_back({angle, {family}});
    };
    for (std::string_view name :
         {"E->S", "E->DIS", "ERi->DRS", "ED->IS", "EDXi->XS", "ERi->RS",
          "ERiXi->DRXS", "E->DS", "EXi->XS", "ERiXi->RXS", "EDRi->RS",
          "EDRiXi->RXS", "E->IS", "ED->S", "EXi->DXS"}) {
      add(name, AngleFamily::Multi);
    }
    add("E->Sa", AngleFamily::MultiInPlace);
    add("Ea->Sa", AngleFamily::MultiInPlace);
    add("E->RXDIS", AngleFamily::Fixed);
    add("E->Sa", AngleFamily::Fixed);
    return out;
  }();
  return angles;
}

bool is_registered(const Angle &angle) {
  const auto &all = registry();
  return std::any_of(all.begin(), all.end(),
                     [&](const RegisteredAngle &r) { return r.angle == angle; });
}

Angle registered_angle(std::string_view text) {
  Angle angle = Angle::parse(text);
  if (!is_registered(angle)) {
    throw CodecError(CodecErrc::UnregisteredAngle, angle.name());
  }
  return angle;
}

// Escaping

std::string escape_value(std::string_view text, bool in_list) {
  std::string out;
  out.reserve(text.size() + 8);
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool escape = c == '\\' || c == '$';
    if (c == ';' && (i == 0 || text[i - 1] == ' ')) escape = true;
    if (c == '<') {
      std::string_view rest = text.substr(i);
      escape = rest.starts_with("<by>") || rest.starts_with("<extra_id_");
    }
    if (in_list && (c == ',' || c == '[' || c == ']')) escape = true;
    if (escape) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

namespace {

std::string escape_markup_value(std::string_view text) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\\' || c == '$' ||
        (c == ';' && (i == 0 || text[i - 1] == ' '))) {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string unescape_value(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size()) ++i;
    out.push_back(text[i]);
  }
  return out;
}

namespace {

/// Splits on `sep` occurrences that do not begin inside an escape.
std::vector<std::string_view> split_unescaped(std::string_view text,
                                              std::string_view sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\\') {
      i += 2;
      continue;
    }
    if (text.substr(i, sep.size()) == sep) {
      parts.push_back(text.substr(start, i - start));
      i += sep.size();
      start = i;
      continue;
    }
    ++i;
  }
  parts.push_back(text.substr(std::min(start, text.size())));
  return parts;
}

std::string render_value(Slot slot, const SlotValue &value) {
  if (is_empty(value)) return std::string(kEmptySlotToken);
  switch (shape_of(slot)) {
    case ValueShape::Text:
      if (const auto *text = std::get_if<std::string>(&value)) {
        return escape_value(*text, false);
      }
      break;
    case ValueShape::Markup:
      if (const auto *text = std::get_if<std::string>(&value)) {
        return escape_markup_value(*text);
      }
      break;
    case ValueShape::SpanList:
      if (const auto *list = std::get_if<SpanList>(&value)) {
        std::string out = "[";
        for (size_t k = 0; k < list->size(); ++k) {
          if (k > 0) out += kItemSep;
          out += escape_value((*list)[k], true);
        }
        return out + "]";
      }
      break;
    case ValueShape::PairList:
      if (const auto *pairs = std::get_if<PairList>(&value)) {
        std::string out = "[";
        for (size_t k = 0; k < pairs->size(); ++k) {
          if (k > 0) out += kItemSep;
          out += escape_value((*pairs)[k].pre, true);
          out += kPairSep;
          out += escape_value((*pairs)[k].post, true);
        }
        return out + "]";
      }
      break;
  }
  throw CodecError(CodecErrc::MalformedSlotSyntax,
                   "value shape does not fit slot " +
                       std::string(abbreviation(slot)));
}

std::string_view list_body(std::string_view raw, Slot slot) {
  bool closed = raw.size() >= 2 && raw.front() == '[' && raw.back() == ']';
  if (closed) {
    // The closing bracket must not itself be escaped.
    size_t backslashes = 0;
    for (size_t k = raw.size() - 1; k-- > 1 && raw[k] == '\\';) ++backslashes;
    closed = backslashes % 2 == 0;
  }
  if (!closed) {
    throw CodecError(CodecErrc::MalformedSlotSyntax,
                     "expected [..] for slot " +
                         std::string(abbreviation(slot)));
  }
  return raw.substr(1, raw.size() - 2);
}

SlotValue parse_value(Slot slot, std::string_view raw) {
  if (raw == kEmptySlotToken) return EmptyValue{};
  switch (shape_of(slot)) {
    case ValueShape::Text:
    case ValueShape::Markup: {
      std::string text = unescape_value(raw);
      if (text.empty()) return EmptyValue{};
      return text;
    }
    case ValueShape::SpanList: {
      std::string_view body = list_body(raw, slot);
      SpanList items;
      if (body.empty()) return EmptyValue{};
      for (std::string_view item : split_unescaped(body, kItemSep)) {
        items.push_back(unescape_value(item));
      }
      return items;
    }
    case ValueShape::PairList: {
      std::string_view body = list_body(raw, slot);
      PairList pairs;
      if (body.empty()) return EmptyValue{};
      for (std::string_view item : split_unescaped(body, kItemSep)) {
        auto halves = split_unescaped(item, kPairSep);
        if (halves.size() != 2) {
          throw CodecError(CodecErrc::MalformedSlotSyntax,
                           "expected 'pre <by> post' in slot " +
                               std::string(abbreviation(slot)));
        }
        pairs.push_back({unescape_value(halves[0]), unescape_value(halves[1])});
      }
      return pairs;
    }
  }
  return EmptyValue{};
}

struct RawPart {
  std::string name;
  std::optional<std::string_view> value;  // nullopt for a bare request
};

std::vector<RawPart> split_parts(std::string_view text) {
  std::vector<RawPart> parts;
  if (normalize_whitespace(text).empty()) return parts;
  for (std::string_view part : split_unescaped(text, kPartSep)) {
    size_t lead = 0;
    while (lead < part.size() && is_space(part[lead])) ++lead;
    part.remove_prefix(lead);
    if (part.empty() || part.front() != '$') {
      throw CodecError(CodecErrc::MalformedSlotSyntax,
                       "expected '$name$' at '" + std::string(part) + "'");
    }
    size_t close = part.find('$', 1);
    if (close == std::string_view::npos) {
      throw CodecError(CodecErrc::MalformedSlotSyntax,
                       "unterminated slot name at '" + std::string(part) + "'");
    }
    RawPart raw{std::string(part.substr(1, close - 1)), std::nullopt};
    std::string_view rest = part.substr(close + 1);
    if (rest.starts_with(" = ")) {
      raw.value = rest.substr(3);
    } else if (rest == " =" || rest == "=") {
      raw.value = std::string_view();
    } else if (!normalize_whitespace(rest).empty()) {
      throw CodecError(CodecErrc::MalformedSlotSyntax,
                       "expected ' = ' after $" + raw.name + "$");
    }
    parts.push_back(std::move(raw));
  }
  return parts;
}

void check_markup(Slot slot, const SlotValue &value,
                  std::vector<DecodeFinding> &findings) {
  if (shape_of(slot) != ValueShape::Markup) return;
  const auto *text = std::get_if<std::string>(&value);
  if (!text) return;
  AnnotatedSide side = slot == Slot::Ea ? AnnotatedSide::ExpertAnnotated
                                        : AnnotatedSide::SimpleAnnotated;
  try {
    parse_annotated(*text, side);
  } catch (const MarkupError &e) {
    findings.push_back({FindingKind::InvalidAnnotation, slot, e.what()});
  }
}

/// Fills `result` from assignments, reporting deviations from `expected`.
void collect(const std::vector<RawPart> &parts, const std::vector<Slot> &expected,
             const SlotNames &names, DecodeResult &result, bool bare_is_empty) {
  for (const RawPart &part : parts) {
    std::optional<Slot> slot = names.slot(part.name);
    if (!slot) {
      result.findings.push_back(
          {FindingKind::UnknownSlot, std::nullopt, "$" + part.name + "$"});
      continue;
    }
    if (!part.value && !bare_is_empty) continue;
    if (std::find(expected.begin(), expected.end(), *slot) == expected.end()) {
      result.findings.push_back({FindingKind::ExtraSlot, *slot, ""});
      continue;
    }
    if (result.example.values.count(*slot)) {
      result.findings.push_back({FindingKind::DuplicateSlot, *slot, ""});
      continue;
    }
    SlotValue value = part.value ? parse_value(*slot, *part.value)
                                 : SlotValue(EmptyValue{});
    check_markup(*slot, value, result.findings);
    result.example.values.emplace(*slot, std::move(value));
  }
  for (Slot slot : expected) {
    if (!result.example.values.count(slot)) {
      result.findings.push_back({FindingKind::MissingSlot, slot, ""});
    }
  }
}

void require_registered(const Angle &angle) {
  if (!is_registered(angle)) {
    throw CodecError(CodecErrc::UnregisteredAngle, angle.name());
  }
}

}  // namespace

std::string encode_input(const Example &example, const SlotNames &names) {
  require_registered(example.angle);
  std::vector<std::string> parts;
  for (Slot slot : example.angle.targets) {
    parts.push_back("$" + names.name(slot) + "$");
  }
  for (Slot slot : example.angle.sources) {
    auto it = example.values.find(slot);
    if (it == example.values.end()) {
      throw CodecError(CodecErrc::MissingSlotValue,
                       std::string(abbreviation(slot)));
    }
    parts.push_back("$" + names.name(slot) + "$ = " +
                    render_value(slot, it->second));
  }
  return join(parts, kPartSep);
}

std::string render_output(const Example &example, const SlotNames &names) {
  require_registered(example.angle);
  std::vector<std::string> parts;
  for (Slot slot : example.angle.targets) {
    auto it = example.values.find(slot);
    if (it == example.values.end()) {
      throw CodecError(CodecErrc::MissingSlotValue,
                       std::string(abbreviation(slot)));
    }
    parts.push_back("$" + names.name(slot) + "$ = " +
                    render_value(slot, it->second));
  }
  return join(parts, kPartSep);
}

DecodeResult decode_output(std::string_view text, const Angle &angle,
                           const SlotNames &names) {
  require_registered(angle);
  DecodeResult result;
  result.example.angle = angle;
  collect(split_parts(text), angle.targets, names, result, true);
  return result;
}

DecodeResult decode_input(std::string_view text, const Angle &angle,
                          const SlotNames &names) {
  require_registered(angle);
  DecodeResult result;
  result.example.angle = angle;
  std::vector<RawPart> parts = split_parts(text);

  std::vector<Slot> requested;
  for (const RawPart &part : parts) {
    if (part.value) continue;
    if (auto slot = names.slot(part.name)) requested.push_back(*slot);
  }
  if (requested != angle.targets) {
    for (Slot slot : angle.targets) {
      if (std::find(requested.begin(), requested.end(), slot) ==
          requested.end()) {
        result.findings.push_back(
            {FindingKind::MissingSlot, slot, "not requested"});
      }
    }
    for (Slot slot : requested) {
      if (std::find(angle.targets.begin(), angle.targets.end(), slot) ==
          angle.targets.end()) {
        result.findings.push_back(
            {FindingKind::ExtraSlot, slot, "requested but not a target"});
      }
    }
  }
  collect(parts, angle.sources, names, result, false);
  return result;
}

std::string encode_ea(std::string_view expert, std::vector<EaSpan> spans) {
  std::vector<std::string> tokens = tokenize(expert);
  for (const EaSpan &s : spans) {
    if (s.kind != EditKind::Replace && s.kind != EditKind::Elaborate) {
      throw CodecError(CodecErrc::UnsupportedEdit,
                       std::string(to_string(s.kind)));
    }
    if (s.span.begin >= s.span.end || s.span.end > tokens.size()) {
      throw CodecError(CodecErrc::SpanOutOfBounds,
                       "[" + std::to_string(s.span.begin) + ", " +
                           std::to_string(s.span.end) + ")");
    }
  }
  std::sort(spans.begin(), spans.end(), [](const EaSpan &x, const EaSpan &y) {
    return x.span.begin < y.span.begin;
  });
  for (size_t k = 1; k < spans.size(); ++k) {
    if (spans[k].span.begin < spans[k - 1].span.end) {
      throw CodecError(CodecErrc::OverlappingSpans,
                       "spans starting at " +
                           std::to_string(spans[k - 1].span.begin) + " and " +
                           std::to_string(spans[k].span.begin));
    }
  }
  std::string out;
  size_t next = 0;
  for (size_t t = 0; t < tokens.size(); ++t) {
    if (t > 0) out.push_back(' ');
    bool opens = next < spans.size() && spans[next].span.begin == t;
    if (opens) {
      out += spans[next].kind == EditKind::Elaborate ? "<elab>" : "<rep>";
    }
    out += escape_markup(tokens[t]);
    if (next < spans.size() && spans[next].span.end == t + 1) {
      out += spans[next].kind == EditKind::Elaborate ? kElabEndSentinel
                                                     : kRepEndSentinel;
      ++next;
    }
  }
  return out;
}

}  // namespace simpkit
