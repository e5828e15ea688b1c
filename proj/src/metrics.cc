#include "simpkit/metrics.hh"

#include <algorithm>
#include <cctype>

#include "simpkit/text.hh"

namespace simpkit {

std::string_view to_string(MetricErrc code) {
  switch (code) {
    case MetricErrc::EmptyReference: return "EmptyReference";
    case MetricErrc::EmptyOutput: return "EmptyOutput";
    case MetricErrc::EmptyInput: return "EmptyInput";
    case MetricErrc::EmptySlot: return "EmptySlot";
    case MetricErrc::EmptyText: return "EmptyText";
    case MetricErrc::EmptyExpert: return "EmptyExpert";
    case MetricErrc::AngleMismatch: return "AngleMismatch";
    case MetricErrc::MissingExpert: return "MissingExpert";
  }
  return "";
}

MetricError::MetricError(MetricErrc code, const std::string &detail)
    : std::runtime_error(std::string(to_string(code)) +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

namespace {

bool is_ascii_punct(char c) {
  auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u);
}

}  // namespace

std::vector<std::string> metric_tokens(std::string_view text,
                                       const MetricOptions &options) {
  std::vector<std::string> tokens;
  for (const std::string &chunk : split_whitespace(text)) {
    std::string word;
    for (char c : chunk) {
      if (is_ascii_punct(c)) {
        if (!word.empty()) tokens.push_back(std::move(word));
        word.clear();
        tokens.emplace_back(1, c);
      } else {
        word.push_back(c);
      }
    }
    if (!word.empty()) tokens.push_back(std::move(word));
  }
  if (options.lowercase) {
    for (std::string &t : tokens) t = ascii_lower(t);
  }
  return tokens;
}

Pieces to_pieces(std::span<const std::string> texts,
                 const MetricOptions &options) {
  Pieces pieces;
  for (const std::string &text : texts) {
    auto tokens = metric_tokens(text, options);
    if (!tokens.empty()) pieces.push_back(std::move(tokens));
  }
  return pieces;
}

NgramCounts ngram_counts(const Pieces &pieces, int n) {
  NgramCounts counts;
  const size_t order = static_cast<size_t>(n);
  for (const auto &tokens : pieces) {
    for (size_t i = 0; i + order <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (size_t k = 1; k < order; ++k) {
        key.push_back('\x1f');
        key += tokens[i + k];
      }
      ++counts[key];
    }
  }
  return counts;
}

// Readability

size_t count_syllables(std::string_view word) {
  std::string letters;
  for (char c : word) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isalpha(u)) {
      letters.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  auto is_vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' ||
           c == 'y';
  };
  size_t groups = 0;
  bool in_group = false;
  for (char c : letters) {
    bool vowel = is_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  if (!letters.empty() && letters.back() == 'e' && groups > 0) --groups;
  return std::max<size_t>(groups, 1);
}

ReadabilityReport fkgl(std::string_view text) {
  ReadabilityReport report;
  bool open_sentence = false;
  for (const std::string &token : split_whitespace(text)) {
    bool is_word = std::any_of(token.begin(), token.end(), is_word_char);
    if (is_word) {
      ++report.words;
      report.syllables += count_syllables(token);
      open_sentence = true;
    }
    char last = token.back();
    if ((last == '.' || last == '!' || last == '?') && open_sentence) {
      ++report.sentences;
      open_sentence = false;
    }
  }
  if (open_sentence) ++report.sentences;
  if (report.words == 0) throw MetricError(MetricErrc::EmptyText, "fkgl");
  const double words = static_cast<double>(report.words);
  report.fkgl = 0.39 * (words / static_cast<double>(report.sentences)) +
                11.8 * (static_cast<double>(report.syllables) / words) - 15.59;
  return report;
}

// Reference-less similarity

size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<char32_t> x = utf8_code_points(a);
  std::vector<char32_t> y = utf8_code_points(b);
  std::vector<size_t> row(y.size() + 1);
  for (size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= x.size(); ++i) {
    size_t diagonal = row[0];
    row[0] = i;
    for (size_t j = 1; j <= y.size(); ++j) {
      size_t above = row[j];
      size_t substitution = diagonal + (x[i - 1] == y[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitution});
      diagonal = above;
    }
  }
  return row[y.size()];
}

double lev_similarity(std::string_view a, std::string_view b) {
  size_t longest = std::max(utf8_length(a), utf8_length(b));
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) /
                   static_cast<double>(longest);
}

double compression_ratio(std::string_view expert, std::string_view simple) {
  size_t expert_len = utf8_length(normalize_whitespace(expert));
  if (expert_len == 0) throw MetricError(MetricErrc::EmptyExpert, "");
  return static_cast<double>(utf8_length(normalize_whitespace(simple))) /
         static_cast<double>(expert_len);
}

size_t lcs_length(std::span<const std::string> a,
                  std::span<const std::string> b) {
  std::vector<size_t> row(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diagonal = 0;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t above = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diagonal + 1 : std::max(above, row[j - 1]);
      diagonal = above;
    }
  }
  return row[b.size()];
}

RougeL rouge_l(std::string_view candidate, std::string_view reference,
               const MetricOptions &options) {
  std::vector<std::string> cand = metric_tokens(candidate, options);
  std::vector<std::string> ref = metric_tokens(reference, options);
  if (ref.empty()) throw MetricError(MetricErrc::EmptyReference, "rouge_l");
  RougeL score;
  score.lcs = lcs_length(cand, ref);
  score.recall =
      static_cast<double>(score.lcs) / static_cast<double>(ref.size());
  if (!cand.empty()) {
    score.precision =
        static_cast<double>(score.lcs) / static_cast<double>(cand.size());
  }
  if (score.precision + score.recall > 0) {
    score.f1 = 2 * score.precision * score.recall /
               (score.precision + score.recall);
  }
  return score;
}

std::map<std::string, std::string> metric_metadata() {
  return {
      {"sari.del", "precision-only"},
      {"sari.add_keep", "f1"},
      {"sari.keep_recall", "total good / total keepable"},
      {"sari.references", "pooled counts"},
      {"sari.orders", "1-4, orders without candidates skipped"},
      {"sari.empty_operation", "del=100 add=0 keep=0"},
      {"altdel.combination", "f1, reported x100"},
      {"altdel.empty_recall_denominator", "recall=0, degenerate"},
      {"fkgl.coefficients", "0.39 11.8 -15.59"},
      {"fkgl.corpus", "per-text mean"},
      {"tokenizer", "lowercase, punctuation split"},
  };
}

}  // namespace simpkit
