#include "simpkit/diff.hh"

#include "simpkit/text.hh"

namespace simpkit {

std::string_view to_string(OpTag tag) {
  switch (tag) {
    case OpTag::Equal: return "equal";
    case OpTag::Replace: return "replace";
    case OpTag::Delete: return "delete";
    case OpTag::Insert: return "insert";
  }
  return "";
}

std::vector<EditOpcode> opcodes_from_blocks(
    const std::vector<MatchingBlock> &blocks, size_t a_size, size_t b_size) {
  std::vector<EditOpcode> ops;
  size_t i = 0;
  size_t j = 0;
  auto emit_gap = [&](size_t ai, size_t bj) {
    if (i < ai && j < bj) {
      ops.push_back({OpTag::Replace, {i, ai}, {j, bj}});
    } else if (i < ai) {
      ops.push_back({OpTag::Delete, {i, ai}, {j, j}});
    } else if (j < bj) {
      ops.push_back({OpTag::Insert, {i, i}, {j, bj}});
    }
  };
  for (const MatchingBlock &m : blocks) {
    emit_gap(m.a_begin, m.b_begin);
    ops.push_back({OpTag::Equal,
                   {m.a_begin, m.a_begin + m.size},
                   {m.b_begin, m.b_begin + m.size}});
    i = m.a_begin + m.size;
    j = m.b_begin + m.size;
  }
  emit_gap(a_size, b_size);
  return ops;
}

std::vector<std::string> tokenize(std::string_view text) {
  return split_whitespace(text);
}

std::vector<EditOpcode> opcodes(const std::vector<std::string> &a,
                                const std::vector<std::string> &b) {
  return opcodes(std::span<const std::string>(a),
                 std::span<const std::string>(b));
}

namespace {

std::string join_range(const std::vector<std::string> &tokens,
                       TokenRange range) {
  std::string out;
  for (size_t k = range.begin; k < range.end; ++k) {
    if (k > range.begin) out.push_back(' ');
    out += tokens[k];
  }
  return out;
}

}  // namespace

AnnotatedText auto_annotate(std::string_view expert, std::string_view simple) {
  std::vector<std::string> a = tokenize(expert);
  std::vector<std::string> b = tokenize(simple);
  if (a.empty()) throw DiffError("EmptyInput: expert text is blank");
  if (b.empty()) throw DiffError("EmptyInput: simple text is blank");

  SegmentBuilder builder;
  for (const EditOpcode &op : opcodes(a, b)) {
    builder.separate();
    switch (op.op) {
      case OpTag::Equal:
        builder.plain(join_range(a, op.a));
        break;
      case OpTag::Replace:
        builder.edit({EditKind::Replace, join_range(a, op.a),
                      join_range(b, op.b)});
        break;
      case OpTag::Delete:
        builder.edit({EditKind::Delete, join_range(a, op.a), {}});
        break;
      case OpTag::Insert:
        builder.edit({EditKind::Insert, {}, join_range(b, op.b)});
        break;
    }
  }
  return std::move(builder).finish(AnnotatedSide::SimpleAnnotated);
}

}  // namespace simpkit
