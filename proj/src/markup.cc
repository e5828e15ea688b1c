#include "simpkit/markup.hh"

#include <optional>

#include "simpkit/text.hh"

namespace simpkit {

namespace {

constexpr std::string_view kBy = "<by>";
constexpr std::string_view kElabSentinel = "<extra_id_0>";
constexpr std::string_view kRepSentinel = "<extra_id_1>";

std::string_view tag_name(EditKind kind) {
  switch (kind) {
    case EditKind::Replace: return "rep";
    case EditKind::Elaborate: return "elab";
    case EditKind::Delete: return "del";
    case EditKind::Insert: return "ins";
  }
  return "";
}

std::optional<EditKind> kind_from_tag(std::string_view name) {
  if (name == "rep") return EditKind::Replace;
  if (name == "elab") return EditKind::Elaborate;
  if (name == "del") return EditKind::Delete;
  if (name == "ins") return EditKind::Insert;
  return std::nullopt;
}

bool is_tag_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

/// Length of a tag-shaped token `<name>` or `</name>` at `pos`, 0 if the `<`
/// there is not tag-shaped.
size_t tag_length(std::string_view text, size_t pos) {
  size_t i = pos + 1;
  if (i < text.size() && text[i] == '/') ++i;
  size_t name_start = i;
  while (i < text.size() && is_tag_char(text[i])) ++i;
  if (i == name_start || i >= text.size() || text[i] != '>') return 0;
  return i + 1 - pos;
}

enum class Phase { Source, Target };

struct OpenEdit {
  EditKind kind;
  size_t offset;
  Phase phase = Phase::Source;
  std::string source = {};
  std::string target = {};
  bool saw_by = false;
};

std::string fail_message(MarkupErrc code, size_t offset,
                         std::string_view detail) {
  std::string msg(to_string(code));
  msg += " at byte " + std::to_string(offset);
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

[[noreturn]] void fail(MarkupErrc code, size_t offset,
                       std::string_view detail = {}) {
  throw MarkupError(code, offset, fail_message(code, offset, detail));
}

bool requires_target(EditKind kind) {
  return kind == EditKind::Replace || kind == EditKind::Elaborate;
}

void check_edit(const Edit &edit, AnnotatedSide side, size_t offset) {
  switch (edit.kind) {
    case EditKind::Replace:
    case EditKind::Elaborate:
      if (edit.source.empty()) fail(MarkupErrc::EmptySpan, offset, "source");
      if (edit.target.empty() && side == AnnotatedSide::SimpleAnnotated) {
        fail(MarkupErrc::EmptySpan, offset, "target");
      }
      break;
    case EditKind::Delete:
      if (edit.source.empty()) fail(MarkupErrc::EmptySpan, offset, "source");
      if (!edit.target.empty()) {
        fail(MarkupErrc::MisplacedBy, offset, "delete carries a target");
      }
      break;
    case EditKind::Insert:
      if (edit.target.empty()) fail(MarkupErrc::EmptySpan, offset, "target");
      if (!edit.source.empty()) {
        fail(MarkupErrc::MisplacedBy, offset, "insert carries a source");
      }
      break;
  }
}

}  // namespace

MarkupError::MarkupError(MarkupErrc code, size_t offset,
                         const std::string &what)
    : std::runtime_error(what), code_(code), offset_(offset) {}

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::Replace: return "replacement";
    case EditKind::Elaborate: return "elaboration";
    case EditKind::Delete: return "deletion";
    case EditKind::Insert: return "insertion";
  }
  return "";
}

std::string_view to_string(ElabType type) {
  switch (type) {
    case ElabType::Unclassified: return "unclassified";
    case ElabType::Type1: return "type1";
    case ElabType::Type2: return "type2";
  }
  return "";
}

std::string_view to_string(MarkupErrc code) {
  switch (code) {
    case MarkupErrc::UnbalancedTag: return "UnbalancedTag";
    case MarkupErrc::NestedTag: return "NestedTag";
    case MarkupErrc::MissingBy: return "MissingBy";
    case MarkupErrc::MisplacedBy: return "MisplacedBy";
    case MarkupErrc::UnknownTag: return "UnknownTag";
    case MarkupErrc::EmptySpan: return "EmptySpan";
  }
  return "";
}

// SegmentBuilder

void SegmentBuilder::flush_space() {
  if (!pending_space_) return;
  pending_space_ = false;
  if (segments_.empty()) return;
  if (auto *last = std::get_if<Plain>(&segments_.back())) {
    last->text.push_back(' ');
  } else {
    segments_.emplace_back(Plain{" "});
  }
}

void SegmentBuilder::plain(std::string_view text) {
  if (text.empty()) return;
  flush_space();
  if (!segments_.empty()) {
    if (auto *last = std::get_if<Plain>(&segments_.back())) {
      last->text.append(text);
      return;
    }
  }
  segments_.emplace_back(Plain{std::string(text)});
}

void SegmentBuilder::edit(Edit edit) {
  flush_space();
  segments_.emplace_back(std::move(edit));
}

void SegmentBuilder::separate() { pending_space_ = true; }

AnnotatedText SegmentBuilder::finish(AnnotatedSide side) && {
  return AnnotatedText{std::move(segments_), side};
}

// Parsing

AnnotatedText parse_annotated(std::string_view text, AnnotatedSide side) {
  SegmentBuilder builder;
  std::string plain;
  std::optional<OpenEdit> open;

  auto sink = [&]() -> std::string & {
    if (!open) return plain;
    return open->phase == Phase::Source ? open->source : open->target;
  };

  auto close = [&] {
    Edit edit{open->kind, std::move(open->source), std::move(open->target),
              ElabType::Unclassified};
    check_edit(edit, side, open->offset);
    builder.edit(std::move(edit));
    open.reset();
  };

  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '&') {
      if (text.substr(i, 4) == "&lt;") {
        sink().push_back('<');
        i += 4;
        continue;
      }
      if (text.substr(i, 5) == "&amp;") {
        sink().push_back('&');
        i += 5;
        continue;
      }
      sink().push_back(c);
      ++i;
      continue;
    }
    if (c != '<') {
      sink().push_back(c);
      ++i;
      continue;
    }
    size_t len = tag_length(text, i);
    if (len == 0) {
      // A bare '<' that cannot start a tag is literal text.
      sink().push_back(c);
      ++i;
      continue;
    }
    std::string_view tag = text.substr(i, len);
    bool closing = tag[1] == '/';
    std::string_view name =
        tag.substr(closing ? 2 : 1, len - (closing ? 3 : 2));

    if (tag == kBy) {
      if (!open) fail(MarkupErrc::MisplacedBy, i, "<by> outside an edit");
      if (open->saw_by) fail(MarkupErrc::MisplacedBy, i, "second <by>");
      if (!requires_target(open->kind)) {
        fail(MarkupErrc::MisplacedBy, i,
             std::string("<by> inside <") + std::string(tag_name(open->kind)) +
                 ">");
      }
      open->saw_by = true;
      open->phase = Phase::Target;
    } else if (tag == kElabSentinel || tag == kRepSentinel) {
      if (side != AnnotatedSide::ExpertAnnotated) {
        fail(MarkupErrc::UnknownTag, i,
             "span sentinel outside expert-side markup");
      }
      EditKind expected =
          tag == kElabSentinel ? EditKind::Elaborate : EditKind::Replace;
      if (!open || open->kind != expected) {
        fail(MarkupErrc::UnbalancedTag, i, "sentinel does not close its span");
      }
      if (open->saw_by) {
        fail(MarkupErrc::MisplacedBy, i, "sentinel-closed span has <by>");
      }
      close();
    } else if (auto kind = kind_from_tag(name)) {
      if (!closing) {
        if (open) fail(MarkupErrc::NestedTag, i, std::string(tag));
        builder.plain(plain);
        plain.clear();
        open = OpenEdit{.kind = *kind, .offset = i};
        if (*kind == EditKind::Insert) open->phase = Phase::Target;
      } else {
        if (!open || open->kind != *kind) {
          fail(MarkupErrc::UnbalancedTag, i, std::string(tag));
        }
        if (requires_target(open->kind) && !open->saw_by &&
            side == AnnotatedSide::SimpleAnnotated) {
          fail(MarkupErrc::MissingBy, open->offset);
        }
        close();
      }
    } else {
      fail(MarkupErrc::UnknownTag, i, std::string(tag));
    }
    i += len;
  }
  if (open) fail(MarkupErrc::UnbalancedTag, open->offset, "unclosed edit");
  builder.plain(plain);
  return std::move(builder).finish(side);
}

// Serialization

std::string escape_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '<') {
      out += "&lt;";
    } else if (c == '&' && (text.substr(i + 1, 3) == "lt;" ||
                            text.substr(i + 1, 4) == "amp;")) {
      out += "&amp;";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string serialize(const AnnotatedText &annotated) {
  std::string out;
  for (const Segment &segment : annotated.segments) {
    if (const auto *plain = std::get_if<Plain>(&segment)) {
      out += escape_markup(plain->text);
      continue;
    }
    const Edit &edit = std::get<Edit>(segment);
    std::string name(tag_name(edit.kind));
    out += "<" + name + ">";
    switch (edit.kind) {
      case EditKind::Replace:
      case EditKind::Elaborate:
        out += escape_markup(edit.source);
        if (edit.target.empty()) {
          out += edit.kind == EditKind::Elaborate ? kElabSentinel
                                                  : kRepSentinel;
          continue;
        }
        out += kBy;
        out += escape_markup(edit.target);
        break;
      case EditKind::Delete:
        out += escape_markup(edit.source);
        break;
      case EditKind::Insert:
        out += escape_markup(edit.target);
        break;
    }
    out += "</" + name + ">";
  }
  return out;
}

std::string extract(const AnnotatedText &annotated, TextSide side) {
  std::string raw;
  for (const Segment &segment : annotated.segments) {
    if (const auto *plain = std::get_if<Plain>(&segment)) {
      raw += plain->text;
    } else {
      const Edit &edit = std::get<Edit>(segment);
      raw += side == TextSide::Expert ? edit.source : edit.target;
    }
  }
  return normalize_whitespace(raw);
}

void validate(const AnnotatedText &annotated) {
  bool previous_plain = false;
  for (size_t k = 0; k < annotated.segments.size(); ++k) {
    const Segment &segment = annotated.segments[k];
    if (const auto *plain = std::get_if<Plain>(&segment)) {
      if (plain->text.empty()) fail(MarkupErrc::EmptySpan, k, "empty plain");
      if (previous_plain) {
        fail(MarkupErrc::UnbalancedTag, k, "adjacent plain segments");
      }
      previous_plain = true;
      continue;
    }
    previous_plain = false;
    check_edit(std::get<Edit>(segment), annotated.side, k);
  }
}

}  // namespace simpkit
