#include "simpkit/elab.hh"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <optional>
#include <tuple>

#include "simpkit/diff.hh"
#include "simpkit/metrics.hh"
#include "simpkit/text.hh"

namespace simpkit {

namespace detail {
const std::vector<std::string> &builtin_stopwords();
const char *builtin_stopwords_version();
}  // namespace detail

StopwordList::StopwordList(std::vector<std::string> words, std::string version)
    : words_(words.begin(), words.end()), version_(std::move(version)) {}

const StopwordList &StopwordList::builtin() {
  static const StopwordList list(detail::builtin_stopwords(),
                                 detail::builtin_stopwords_version());
  return list;
}

StopwordList StopwordList::from_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ElabError("cannot open stopword list: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = normalize_whitespace(line);
    if (word.empty() || word[0] == '#') continue;
    words.push_back(ascii_lower(word));
  }
  return StopwordList(std::move(words), "file:" + path);
}

bool StopwordList::contains(std::string_view lowercase_word) const {
  return words_.count(std::string(lowercase_word)) > 0;
}

namespace {

bool is_punctuation_token(std::string_view token) {
  return token.size() == 1 && static_cast<unsigned char>(token[0]) < 0x80 &&
         std::ispunct(static_cast<unsigned char>(token[0]));
}

std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> out;
  for (std::string &token : metric_tokens(text, {.lowercase = true})) {
    if (!is_punctuation_token(token)) out.push_back(std::move(token));
  }
  return out;
}

struct Unit {
  std::vector<std::string> expert;
  std::vector<std::string> simple;
  std::optional<Edit> edit;  // nullopt for a single plain token
  size_t simple_begin = 0;   // index of first simple token
};

size_t count_tokens(std::string_view text, CharSpan span) {
  return tokenize(text.substr(span.begin, span.end - span.begin)).size();
}

}  // namespace

ElabType classify_elaboration(const Edit &edit,
                              const StopwordList &stopwords) {
  std::vector<std::string> source = words_of(edit.source);
  std::vector<std::string> target = words_of(edit.target);
  std::vector<std::string> content;
  for (const std::string &w : source) {
    if (!stopwords.contains(w)) content.push_back(w);
  }
  if (content.empty()) content = source;
  for (const std::string &w : content) {
    if (std::find(target.begin(), target.end(), w) != target.end()) {
      return ElabType::Type1;
    }
  }
  return ElabType::Type2;
}

ElaborationResult detect_elaborations(const AnnotatedText &annotated,
                                      const std::vector<CorefLink> &links,
                                      const StopwordList &stopwords) {
  ElaborationResult result{annotated, {}, 0};
  if (links.empty()) return result;

  std::vector<Unit> units;
  for (const Segment &segment : annotated.segments) {
    if (const auto *plain = std::get_if<Plain>(&segment)) {
      for (std::string &token : tokenize(plain->text)) {
        units.push_back({{token}, {token}, std::nullopt});
      }
    } else {
      const Edit &edit = std::get<Edit>(segment);
      units.push_back({tokenize(edit.source), tokenize(edit.target), edit});
    }
  }

  // Simple-token character offsets in the normalized simple text.
  std::vector<CharSpan> simple_tokens;
  std::vector<std::string> expert_words;
  size_t offset = 0;
  for (Unit &unit : units) {
    unit.simple_begin = simple_tokens.size();
    for (const std::string &token : unit.simple) {
      if (!simple_tokens.empty()) ++offset;
      simple_tokens.push_back({offset, offset + token.size()});
      offset += token.size();
    }
    expert_words.insert(expert_words.end(), unit.expert.begin(),
                        unit.expert.end());
  }
  const std::string expert_text = join(expert_words, " ");
  const std::string simple_text = extract(annotated, TextSide::Simple);
  if (offset != simple_text.size()) {
    throw ElabError("annotation edits do not fall on token boundaries");
  }

  for (size_t k = 0; k < links.size(); ++k) {
    const CorefLink &link = links[k];
    if (link.expert.begin >= link.expert.end ||
        link.expert.end > expert_text.size() ||
        link.simple.begin >= link.simple.end ||
        link.simple.end > simple_text.size()) {
      throw ElabError("SpanOutOfBounds: link " + std::to_string(k));
    }
  }

  std::vector<size_t> order(links.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return std::tie(links[x].simple.begin, links[x].expert.begin) <
           std::tie(links[y].simple.begin, links[y].expert.begin);
  });

  std::vector<std::optional<size_t>> claimed(units.size());
  struct Merge {
    size_t last;
    Edit edit;
  };
  std::vector<std::optional<Merge>> merges(units.size());

  for (size_t link_index : order) {
    const CorefLink &link = links[link_index];
    if (count_tokens(simple_text, link.simple) <=
        count_tokens(expert_text, link.expert)) {
      continue;
    }
    // Units whose simple tokens intersect the link's simple span.
    std::optional<size_t> first, last;
    bool touches_edit = false;
    for (size_t u = 0; u < units.size(); ++u) {
      const Unit &unit = units[u];
      bool overlaps = false;
      for (size_t t = 0; t < unit.simple.size(); ++t) {
        const CharSpan &tok = simple_tokens[unit.simple_begin + t];
        if (tok.begin < link.simple.end && link.simple.begin < tok.end) {
          overlaps = true;
          break;
        }
      }
      if (!overlaps) continue;
      if (!first) first = u;
      last = u;
      if (unit.edit) touches_edit = true;
    }
    if (!first || !touches_edit) continue;

    std::optional<size_t> rival;
    for (size_t u = *first; u <= *last; ++u) {
      if (claimed[u]) rival = claimed[u];
    }
    if (rival) {
      result.warnings.push_back(
          {link_index, "OverlapConflict: edit already upgraded by link " +
                           std::to_string(*rival)});
      continue;
    }

    std::vector<std::string> source, target;
    for (size_t u = *first; u <= *last; ++u) {
      source.insert(source.end(), units[u].expert.begin(),
                    units[u].expert.end());
      target.insert(target.end(), units[u].simple.begin(),
                    units[u].simple.end());
    }
    if (source.empty()) {
      result.warnings.push_back(
          {link_index, "insertion has no expert-side text to elaborate"});
      continue;
    }
    Edit edit{EditKind::Elaborate, join(source, " "), join(target, " ")};
    edit.elab = classify_elaboration(edit, stopwords);
    for (size_t u = *first; u <= *last; ++u) claimed[u] = link_index;
    merges[*first] = Merge{*last, std::move(edit)};
    ++result.upgraded;
  }

  if (result.upgraded == 0) return result;

  SegmentBuilder builder;
  for (size_t u = 0; u < units.size(); ++u) {
    builder.separate();
    if (merges[u]) {
      builder.edit(merges[u]->edit);
      u = merges[u]->last;
    } else if (units[u].edit) {
      builder.edit(*units[u].edit);
    } else {
      builder.plain(units[u].expert.front());
    }
  }
  result.annotated = std::move(builder).finish(annotated.side);
  return result;
}

}  // namespace simpkit
