#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "simpkit/markup.hh"

namespace simpkit {

/// Half-open interval of token indices.
struct TokenRange {
  size_t begin = 0;
  size_t end = 0;
  size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool operator==(const TokenRange &) const = default;
};

enum class OpTag { Equal, Replace, Delete, Insert };

std::string_view to_string(OpTag tag);

/// One diff instruction. Opcodes from `opcodes()` tile both sequences in
/// order and never place two Equal opcodes next to each other.
struct EditOpcode {
  OpTag op = OpTag::Equal;
  TokenRange a;
  TokenRange b;
  bool operator==(const EditOpcode &) const = default;
};

/// A maximal run a[a_begin, a_begin+size) == b[b_begin, b_begin+size).
struct MatchingBlock {
  size_t a_begin = 0;
  size_t b_begin = 0;
  size_t size = 0;
  bool operator==(const MatchingBlock &) const = default;
};

namespace detail {

/// Longest block a[i,i+k) == b[j,j+k) inside the given window. Among blocks of
/// equal length the one starting earliest in `a` wins, then earliest in `b`.
template <class T>
MatchingBlock longest_match(std::span<const T> a, std::span<const T> b,
                            size_t alo, size_t ahi, size_t blo, size_t bhi,
                            std::vector<size_t> &prev,
                            std::vector<size_t> &curr) {
  MatchingBlock best{alo, blo, 0};
  size_t width = bhi - blo;
  prev.assign(width + 1, 0);
  curr.assign(width + 1, 0);
  for (size_t i = alo; i < ahi; ++i) {
    for (size_t j = blo; j < bhi; ++j) {
      size_t col = j - blo + 1;
      if (a[i] == b[j]) {
        size_t k = prev[col - 1] + 1;
        curr[col] = k;
        if (k > best.size) best = MatchingBlock{i + 1 - k, j + 1 - k, k};
      } else {
        curr[col] = 0;
      }
    }
    std::swap(prev, curr);
  }
  return best;
}

}  // namespace detail

/// Ratcliff/Obershelp matching: take the longest matching block, recurse on
/// the pieces to its left and right. No junk heuristic is applied. Returns
/// blocks sorted by position with adjacent blocks merged.
template <class T>
std::vector<MatchingBlock> matching_blocks(std::span<const T> a,
                                           std::span<const T> b) {
  std::vector<MatchingBlock> blocks;
  std::vector<std::tuple<size_t, size_t, size_t, size_t>> pending;
  std::vector<size_t> prev, curr;
  pending.emplace_back(0, a.size(), 0, b.size());
  while (!pending.empty()) {
    auto [alo, ahi, blo, bhi] = pending.back();
    pending.pop_back();
    if (alo >= ahi || blo >= bhi) continue;
    MatchingBlock m =
        detail::longest_match(a, b, alo, ahi, blo, bhi, prev, curr);
    if (m.size == 0) continue;
    blocks.push_back(m);
    if (alo < m.a_begin && blo < m.b_begin) {
      pending.emplace_back(alo, m.a_begin, blo, m.b_begin);
    }
    if (m.a_begin + m.size < ahi && m.b_begin + m.size < bhi) {
      pending.emplace_back(m.a_begin + m.size, ahi, m.b_begin + m.size, bhi);
    }
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const MatchingBlock &x, const MatchingBlock &y) {
              return std::tie(x.a_begin, x.b_begin) <
                     std::tie(y.a_begin, y.b_begin);
            });
  std::vector<MatchingBlock> merged;
  for (const MatchingBlock &m : blocks) {
    if (!merged.empty()) {
      MatchingBlock &last = merged.back();
      if (last.a_begin + last.size == m.a_begin &&
          last.b_begin + last.size == m.b_begin) {
        last.size += m.size;
        continue;
      }
    }
    merged.push_back(m);
  }
  return merged;
}

/// Converts matching blocks into the Equal/Replace/Delete/Insert tiling of
/// both sequences.
std::vector<EditOpcode> opcodes_from_blocks(
    const std::vector<MatchingBlock> &blocks, size_t a_size, size_t b_size);

template <class T>
std::vector<EditOpcode> opcodes(std::span<const T> a, std::span<const T> b) {
  return opcodes_from_blocks(matching_blocks(a, b), a.size(), b.size());
}

/// Annotation-side tokenization: whitespace split after normalization, case
/// and punctuation preserved.
std::vector<std::string> tokenize(std::string_view text);

std::vector<EditOpcode> opcodes(const std::vector<std::string> &a,
                                const std::vector<std::string> &b);

class DiffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Diffs two texts at token level and maps the opcodes onto markup: Equal to
/// Plain, the rest to edits of the same kind. Plain segments carry the single
/// spaces at edit boundaries, so extract() recovers both normalized texts.
/// Throws DiffError when either text is blank.
AnnotatedText auto_annotate(std::string_view expert, std::string_view simple);

}  // namespace simpkit
