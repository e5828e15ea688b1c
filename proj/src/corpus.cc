#include "simpkit/corpus.hh"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "simpkit/diff.hh"
#include "simpkit/markup.hh"
#include "simpkit/parallel.hh"
#include "simpkit/text.hh"

namespace simpkit {

using nlohmann::json;

std::string_view to_string(CorpusSource source) {
  switch (source) {
    case CorpusSource::SimpWiki: return "SIMPWIKI";
    case CorpusSource::Msd: return "MSD";
    case CorpusSource::Other: return "other";
  }
  return "other";
}

std::optional<CorpusSource> corpus_source_from(std::string_view name) {
  std::string lower = ascii_lower(name);
  if (lower == "simpwiki") return CorpusSource::SimpWiki;
  if (lower == "msd") return CorpusSource::Msd;
  if (lower == "other") return CorpusSource::Other;
  return std::nullopt;
}

CorpusFormat format_for_path(std::string_view path) {
  return path.ends_with(".tsv") ? CorpusFormat::Tsv : CorpusFormat::Jsonl;
}

CorpusError::CorpusError(CorpusErrc code, const std::string &what, size_t line,
                         std::vector<std::string> pair_ids)
    : std::runtime_error(what),
      code_(code),
      line_(line),
      pair_ids_(std::move(pair_ids)) {}

namespace {

CorpusError parse_error(size_t line, const std::string &what) {
  return CorpusError(CorpusErrc::Parse,
                     "line " + std::to_string(line) + ": " + what, line);
}

std::vector<std::string_view> lines_of(std::string_view content) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= content.size()) {
    size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    if (line.ends_with('\r')) line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string tsv_escape(std::string_view field) {
  std::string out;
  for (char c : field) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string tsv_unescape(std::string_view field, size_t line) {
  std::string out;
  for (size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out.push_back(field[i]);
      continue;
    }
    if (++i == field.size()) throw parse_error(line, "dangling backslash");
    switch (field[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default:
        throw parse_error(line, std::string("unknown escape \\") + field[i]);
    }
  }
  return out;
}

CorpusSource source_field(std::string_view name, size_t line) {
  if (auto source = corpus_source_from(name)) return *source;
  throw parse_error(line, "unknown source '" + std::string(name) + "'");
}

std::vector<CorpusRecord> parse_tsv(std::string_view content) {
  std::vector<CorpusRecord> records;
  bool first = true;
  size_t line_no = 0;
  for (std::string_view line : lines_of(content)) {
    ++line_no;
    if (normalize_whitespace(line).empty()) continue;
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string_view::npos
                                              ? std::string_view::npos
                                              : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (first && fields[0] == "pair_id") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 4 && fields.size() != 5) {
      throw parse_error(line_no, "expected 4 or 5 tab-separated fields, got " +
                                     std::to_string(fields.size()));
    }
    CorpusRecord r;
    r.pair_id = tsv_unescape(fields[0], line_no);
    r.source = source_field(tsv_unescape(fields[1], line_no), line_no);
    r.expert = tsv_unescape(fields[2], line_no);
    r.simple = tsv_unescape(fields[3], line_no);
    if (fields.size() == 5 && !fields[4].empty()) {
      r.annotated = tsv_unescape(fields[4], line_no);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string required_string(const json &object, const char *key, size_t line) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw parse_error(line, std::string("missing \"") + key + "\"");
  }
  if (!it->is_string()) {
    throw parse_error(line, std::string("\"") + key + "\" is not a string");
  }
  return it->get<std::string>();
}

std::vector<CorpusRecord> parse_jsonl(std::string_view content) {
  std::vector<CorpusRecord> records;
  size_t line_no = 0;
  for (std::string_view line : lines_of(content)) {
    ++line_no;
    if (normalize_whitespace(line).empty()) continue;
    json object;
    try {
      object = json::parse(line);
    } catch (const json::parse_error &e) {
      throw parse_error(line_no, e.what());
    }
    if (!object.is_object()) throw parse_error(line_no, "not a JSON object");
    CorpusRecord r;
    r.pair_id = required_string(object, "pair_id", line_no);
    r.expert = required_string(object, "expert", line_no);
    r.simple = required_string(object, "simple", line_no);
    if (object.contains("source")) {
      r.source = source_field(required_string(object, "source", line_no),
                              line_no);
    }
    if (object.contains("annotated") && !object["annotated"].is_null()) {
      r.annotated = required_string(object, "annotated", line_no);
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace

std::vector<CorpusRecord> parse_corpus(std::string_view content,
                                       CorpusFormat format) {
  return format == CorpusFormat::Tsv ? parse_tsv(content) : parse_jsonl(content);
}

std::string format_corpus(const std::vector<CorpusRecord> &records,
                          CorpusFormat format) {
  std::string out;
  if (format == CorpusFormat::Tsv) {
    out = "pair_id\tsource\texpert\tsimple\tannotated\n";
    for (const CorpusRecord &r : records) {
      out += tsv_escape(r.pair_id) + '\t' + std::string(to_string(r.source)) +
             '\t' + tsv_escape(r.expert) + '\t' + tsv_escape(r.simple) + '\t' +
             (r.annotated ? tsv_escape(*r.annotated) : "") + '\n';
    }
    return out;
  }
  for (const CorpusRecord &r : records) {
    json object = {{"pair_id", r.pair_id},
                   {"source", to_string(r.source)},
                   {"expert", r.expert},
                   {"simple", r.simple}};
    if (r.annotated) object["annotated"] = *r.annotated;
    out += object.dump() + '\n';
  }
  return out;
}

void validate_corpus(const std::vector<CorpusRecord> &records) {
  std::vector<std::string> failing;
  std::vector<std::string> reasons;
  std::set<std::string> seen;
  for (const CorpusRecord &r : records) {
    std::string reason;
    const std::string expert = normalize_whitespace(r.expert);
    const std::string simple = normalize_whitespace(r.simple);
    if (!seen.insert(r.pair_id).second) {
      reason = "duplicate pair_id";
    } else if (expert.empty() || simple.empty()) {
      reason = "blank expert or simple text";
    } else if (r.annotated) {
      try {
        AnnotatedText a =
            parse_annotated(*r.annotated, AnnotatedSide::SimpleAnnotated);
        if (extract(a, TextSide::Expert) != expert ||
            extract(a, TextSide::Simple) != simple) {
          reason = "annotation does not extract to the record texts";
        }
      } catch (const MarkupError &e) {
        reason = std::string("annotation: ") + e.what();
      }
    }
    if (!reason.empty()) {
      failing.push_back(r.pair_id);
      reasons.push_back(r.pair_id + " (" + reason + ")");
    }
  }
  if (!failing.empty()) {
    throw CorpusError(CorpusErrc::Validation,
                      "invalid records: " + join(reasons, ", "), 0,
                      std::move(failing));
  }
}

std::vector<CorpusRecord> load_corpus(const std::string &path,
                                      CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(CorpusErrc::Io, "cannot open " + path);
  std::ostringstream content;
  content << in.rdbuf();
  std::vector<CorpusRecord> records = parse_corpus(content.str(), format);
  validate_corpus(records);
  return records;
}

void save_corpus(const std::vector<CorpusRecord> &records,
                 const std::string &path, CorpusFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CorpusError(CorpusErrc::Io, "cannot write " + path);
  out << format_corpus(records, format);
  if (!out) throw CorpusError(CorpusErrc::Io, "write failed: " + path);
}

// Statistics

WordChanges word_changes(std::string_view expert, std::string_view simple,
                         const MetricOptions &options) {
  auto words = [&](std::string_view text) {
    std::vector<std::string> out;
    for (std::string &t : metric_tokens(text, options)) {
      bool punct = t.size() == 1 &&
                   static_cast<unsigned char>(t[0]) < 0x80 &&
                   std::ispunct(static_cast<unsigned char>(t[0]));
      if (!punct) out.push_back(std::move(t));
    }
    return out;
  };
  std::vector<std::string> a = words(expert);
  std::vector<std::string> b = words(simple);
  WordChanges changes;
  for (const EditOpcode &op : opcodes(a, b)) {
    switch (op.op) {
      case OpTag::Equal: changes.kept += op.a.size(); break;
      case OpTag::Delete: changes.deleted += op.a.size(); break;
      case OpTag::Insert: changes.added += op.b.size(); break;
      case OpTag::Replace:
        changes.deleted += op.a.size();
        changes.added += op.b.size();
        break;
    }
  }
  return changes;
}

PairStats pair_stats(const CorpusRecord &record, const MetricOptions &options) {
  const std::string expert = normalize_whitespace(record.expert);
  const std::string simple = normalize_whitespace(record.simple);
  PairStats s;
  s.lev_similarity = lev_similarity(expert, simple);
  s.compression = compression_ratio(expert, simple);
  s.fkgl_expert = fkgl(expert).fkgl;
  s.fkgl_simple = fkgl(simple).fkgl;
  s.words = word_changes(expert, simple, options);
  return s;
}

namespace {

template <class Get>
MeanStd mean_std(const std::vector<PairStats> &all, Get get) {
  MeanStd m;
  m.n = all.size();
  double sum = 0;
  for (const PairStats &s : all) sum += get(s);
  m.mean = sum / static_cast<double>(m.n);
  if (m.n > 1) {
    double ss = 0;
    for (const PairStats &s : all) {
      double d = get(s) - m.mean;
      ss += d * d;
    }
    m.std = std::sqrt(ss / static_cast<double>(m.n - 1));
  }
  return m;
}

std::string edit_label(EditKind kind) {
  switch (kind) {
    case EditKind::Elaborate: return "elaboration";
    case EditKind::Replace: return "replacement";
    case EditKind::Insert: return "insertion";
    case EditKind::Delete: return "deletion";
  }
  return "";
}

}  // namespace

CorpusStats corpus_stats(const std::vector<CorpusRecord> &records,
                         const MetricOptions &options, unsigned jobs) {
  if (records.empty()) throw CorpusError(CorpusErrc::EmptyCorpus, "empty corpus");
  std::vector<PairStats> all(records.size());
  parallel_for(records.size(), jobs,
               [&](size_t i) { all[i] = pair_stats(records[i], options); });

  CorpusStats stats;
  stats.records = records.size();
  stats.lev_similarity = mean_std(all, [](auto &s) { return s.lev_similarity; });
  stats.compression = mean_std(all, [](auto &s) { return s.compression; });
  stats.fkgl_expert = mean_std(all, [](auto &s) { return s.fkgl_expert; });
  stats.fkgl_simple = mean_std(all, [](auto &s) { return s.fkgl_simple; });
  stats.words_added = mean_std(
      all, [](auto &s) { return static_cast<double>(s.words.added); });
  stats.words_deleted = mean_std(
      all, [](auto &s) { return static_cast<double>(s.words.deleted); });
  stats.words_kept = mean_std(
      all, [](auto &s) { return static_cast<double>(s.words.kept); });

  for (EditKind kind : {EditKind::Elaborate, EditKind::Replace,
                        EditKind::Insert, EditKind::Delete}) {
    stats.edits[edit_label(kind)] = 0;
  }
  for (const CorpusRecord &r : records) {
    if (!r.annotated) continue;
    ++stats.annotated_records;
    AnnotatedText a;
    try {
      a = parse_annotated(*r.annotated, AnnotatedSide::SimpleAnnotated);
    } catch (const MarkupError &e) {
      throw CorpusError(CorpusErrc::Validation,
                        r.pair_id + ": annotation: " + e.what(), 0,
                        {r.pair_id});
    }
    for (const Segment &segment : a.segments) {
      if (const auto *edit = std::get_if<Edit>(&segment)) {
        ++stats.edits[edit_label(edit->kind)];
      }
    }
  }
  return stats;
}

// Splitting

size_t stratum_of(double lev_similarity) {
  size_t s = 0;
  while (s < kStratumEdges.size() && lev_similarity >= kStratumEdges[s]) ++s;
  return s;
}

namespace {

constexpr double kShareSlack = 1e-9;

void check_ratios(const std::array<double, 3> &ratios) {
  double sum = 0;
  for (double r : ratios) {
    if (!(r >= 0)) throw CorpusError(CorpusErrc::Ratio, "negative split ratio");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw CorpusError(CorpusErrc::Ratio, "split ratios must sum to 1");
  }
}

/// Unbiased draw from [0, bound) that does not depend on the standard
/// library's distribution implementation.
std::uint64_t draw_below(std::mt19937_64 &rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

void shuffle(std::vector<size_t> &v, std::mt19937_64 &rng) {
  for (size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[draw_below(rng, i)]);
  }
}

}  // namespace

std::array<size_t, 3> split_sizes(size_t n, const std::array<double, 3> &ratios) {
  check_ratios(ratios);
  std::array<size_t, 3> sizes{};
  std::array<double, 3> remainder{};
  size_t assigned = 0;
  for (size_t j = 0; j < 3; ++j) {
    double exact = static_cast<double>(n) * ratios[j];
    sizes[j] = static_cast<size_t>(std::floor(exact + kShareSlack));
    remainder[j] = exact - static_cast<double>(sizes[j]);
    assigned += sizes[j];
  }
  std::array<size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return remainder[x] > remainder[y];
  });
  for (size_t k = 0; assigned < n; k = (k + 1) % 3) {
    ++sizes[order[k]];
    ++assigned;
  }
  return sizes;
}

CorpusSplit split_corpus(const std::vector<CorpusRecord> &records,
                         const SplitOptions &options) {
  const std::array<size_t, 3> targets =
      split_sizes(records.size(), options.ratios);

  constexpr size_t kStrata = kStratumEdges.size() + 1;
  std::array<std::vector<size_t>, kStrata> members;
  for (size_t i = 0; i < records.size(); ++i) {
    size_t s = 0;
    if (options.stratify) {
      s = stratum_of(lev_similarity(normalize_whitespace(records[i].expert),
                                    normalize_whitespace(records[i].simple)));
    }
    members[s].push_back(i);
  }

  std::mt19937_64 rng(options.seed);
  std::array<std::array<size_t, 3>, kStrata> quota{};
  std::array<size_t, kStrata> leftover{};
  std::array<long, 3> deficit{};
  for (size_t j = 0; j < 3; ++j) deficit[j] = static_cast<long>(targets[j]);
  struct Fraction {
    double value;
    size_t stratum, part;
  };
  std::vector<Fraction> fractions;
  for (size_t s = 0; s < kStrata; ++s) {
    shuffle(members[s], rng);
    const size_t n = members[s].size();
    size_t floors = 0;
    for (size_t j = 0; j < 3; ++j) {
      double exact = static_cast<double>(n) * options.ratios[j];
      quota[s][j] = static_cast<size_t>(std::floor(exact + kShareSlack));
      floors += quota[s][j];
      deficit[j] -= static_cast<long>(quota[s][j]);
      double frac = exact - static_cast<double>(quota[s][j]);
      if (frac > kShareSlack) fractions.push_back({frac, s, j});
    }
    leftover[s] = n - floors;
  }
  std::stable_sort(fractions.begin(), fractions.end(),
                   [](const Fraction &x, const Fraction &y) {
                     return x.value > y.value;
                   });
  for (const Fraction &f : fractions) {
    if (leftover[f.stratum] > 0 && deficit[f.part] > 0) {
      ++quota[f.stratum][f.part];
      --leftover[f.stratum];
      --deficit[f.part];
    }
  }
  // Rare leftovers the one-per-part rule could not place.
  for (size_t s = 0; s < kStrata; ++s) {
    for (size_t j = 0; j < 3 && leftover[s] > 0; ++j) {
      while (leftover[s] > 0 && deficit[j] > 0) {
        ++quota[s][j];
        --leftover[s];
        --deficit[j];
      }
    }
  }

  CorpusSplit split;
  std::array<std::vector<size_t>, 3> picked;
  for (size_t s = 0; s < kStrata; ++s) {
    if (members[s].empty()) continue;
    size_t at = 0;
    for (size_t j = 0; j < 3; ++j) {
      for (size_t k = 0; k < quota[s][j]; ++k) {
        picked[j].push_back(members[s][at++]);
      }
    }
    split.strata.push_back({s, quota[s]});
  }
  for (size_t j = 0; j < 3; ++j) {
    std::sort(picked[j].begin(), picked[j].end());
    for (size_t i : picked[j]) split.parts[j].push_back(records[i]);
  }
  return split;
}

std::string split_manifest(const CorpusSplit &split,
                           const SplitOptions &options) {
  static const char *const kParts[] = {"train", "dev", "test"};
  json manifest;
  manifest["seed"] = options.seed;
  manifest["ratios"] = options.ratios;
  manifest["stratify"] = options.stratify;
  manifest["stratum_edges"] = kStratumEdges;
  for (size_t j = 0; j < 3; ++j) {
    manifest["sizes"][kParts[j]] = split.parts[j].size();
    json ids = json::array();
    for (const CorpusRecord &r : split.parts[j]) ids.push_back(r.pair_id);
    manifest["pair_ids"][kParts[j]] = ids;
  }
  manifest["strata"] = json::array();
  for (const SplitStratum &s : split.strata) {
    manifest["strata"].push_back({{"stratum", s.stratum},
                                  {"train", s.sizes[0]},
                                  {"dev", s.sizes[1]},
                                  {"test", s.sizes[2]}});
  }
  return manifest.dump(2) + "\n";
}

}  // namespace simpkit
