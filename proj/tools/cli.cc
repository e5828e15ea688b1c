#include "cli.hh"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "simpkit/aggregate.hh"
#include "simpkit/codec.hh"
#include "simpkit/config.hh"
#include "simpkit/corpus.hh"
#include "simpkit/diff.hh"
#include "simpkit/elab.hh"
#include "simpkit/markup.hh"
#include "simpkit/parallel.hh"
#include "simpkit/scoring.hh"
#include "simpkit/text.hh"

namespace simpkit::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

/// Bad invocation: missing files, bad config, bad flag values.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Io {
  std::ostream &out;
  std::ostream &err;
  int status = 0;

  void finding(const std::string &message) {
    err << message << '\n';
    status = 1;
  }
};

std::string read_text(const std::string &path) {
  std::ostringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
    return text.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  text << in.rdbuf();
  return text.str();
}

void write_text(const std::string &path, const std::string &content, Io &io) {
  if (path.empty() || path == "-") {
    io.out << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
}

struct JsonLine {
  size_t line = 0;
  json value;
};

std::vector<JsonLine> read_jsonl(const std::string &path) {
  std::vector<JsonLine> records;
  std::istringstream in(read_text(path));
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (normalize_whitespace(line).empty()) continue;
    try {
      records.push_back({line_no, json::parse(line)});
    } catch (const json::parse_error &e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return records;
}

std::string to_jsonl(const std::vector<ordered_json> &rows) {
  std::string out;
  for (const ordered_json &row : rows) out += row.dump() + '\n';
  return out;
}

std::string string_field(const json &object, const char *key) {
  if (!object.is_object() || !object.contains(key) ||
      !object[key].is_string()) {
    throw std::runtime_error(std::string("missing string field \"") + key +
                             "\"");
  }
  return object[key].get<std::string>();
}

std::string pair_id_of(const json &object) {
  if (object.is_object() && object.contains("pair_id") &&
      object["pair_id"].is_string()) {
    return object["pair_id"].get<std::string>();
  }
  return "";
}

// Slot values <-> JSON

SlotValue value_from_json(Slot slot, const json &v) {
  if (v.is_null()) return EmptyValue{};
  auto bad = [&] {
    return std::runtime_error("bad value for slot " +
                              std::string(abbreviation(slot)));
  };
  switch (shape_of(slot)) {
    case ValueShape::Text:
    case ValueShape::Markup: {
      if (!v.is_string()) throw bad();
      std::string text = v.get<std::string>();
      if (text.empty()) return EmptyValue{};
      return text;
    }
    case ValueShape::SpanList: {
      if (!v.is_array()) throw bad();
      SpanList items;
      for (const json &item : v) {
        if (!item.is_string()) throw bad();
        items.push_back(item.get<std::string>());
      }
      if (items.empty()) return EmptyValue{};
      return items;
    }
    case ValueShape::PairList: {
      if (!v.is_array()) throw bad();
      PairList pairs;
      for (const json &item : v) {
        if (item.is_array() && item.size() == 2 && item[0].is_string() &&
            item[1].is_string()) {
          pairs.push_back({item[0].get<std::string>(), item[1].get<std::string>()});
        } else if (item.is_object() && item.contains("pre") &&
                   item.contains("post")) {
          pairs.push_back({item["pre"].get<std::string>(),
                           item["post"].get<std::string>()});
        } else {
          throw bad();
        }
      }
      if (pairs.empty()) return EmptyValue{};
      return pairs;
    }
  }
  throw bad();
}

ordered_json value_to_json(const SlotValue &value) {
  if (std::holds_alternative<EmptyValue>(value)) return nullptr;
  if (const auto *text = std::get_if<std::string>(&value)) return *text;
  if (const auto *list = std::get_if<SpanList>(&value)) return *list;
  ordered_json pairs = ordered_json::array();
  for (const SpanPair &p : std::get<PairList>(value)) {
    pairs.push_back({p.pre, p.post});
  }
  return pairs;
}

Slot slot_from_key(const std::string &key, const SlotNames &names) {
  if (auto slot = slot_from_abbreviation(key)) return *slot;
  if (auto slot = names.slot(key)) return *slot;
  throw std::runtime_error("unknown slot \"" + key + "\"");
}

Angle angle_of(const json &record, const std::string &fallback) {
  std::string text = fallback;
  if (record.contains("angle") && record["angle"].is_string()) {
    text = record["angle"].get<std::string>();
  }
  if (text.empty()) throw std::runtime_error("record has no angle");
  return registered_angle(text);
}

Example example_from_json(const json &record, const std::string &angle,
                          const SlotNames &names) {
  Example ex;
  ex.pair_id = pair_id_of(record);
  ex.angle = angle_of(record, angle);
  if (record.contains("slots")) {
    if (!record["slots"].is_object()) {
      throw std::runtime_error("\"slots\" must be an object");
    }
    for (const auto &[key, value] : record["slots"].items()) {
      Slot slot = slot_from_key(key, names);
      ex.values[slot] = value_from_json(slot, value);
    }
  }
  return ex;
}

ordered_json slots_to_json(const Example &ex) {
  ordered_json slots = ordered_json::object();
  auto add = [&](Slot slot) {
    auto it = ex.values.find(slot);
    if (it != ex.values.end() && !slots.contains(abbreviation(slot))) {
      slots[std::string(abbreviation(slot))] = value_to_json(it->second);
    }
  };
  for (Slot s : ex.angle.sources) add(s);
  for (Slot s : ex.angle.targets) add(s);
  for (const auto &[slot, value] : ex.values) add(slot);
  return slots;
}

ordered_json segments_to_json(const AnnotatedText &annotated) {
  ordered_json segments = ordered_json::array();
  for (const Segment &segment : annotated.segments) {
    if (const auto *plain = std::get_if<Plain>(&segment)) {
      segments.push_back({{"plain", plain->text}});
      continue;
    }
    const Edit &edit = std::get<Edit>(segment);
    ordered_json e = {{"edit", to_string(edit.kind)},
                      {"source", edit.source},
                      {"target", edit.target}};
    if (edit.kind == EditKind::Elaborate) e["elab_type"] = to_string(edit.elab);
    segments.push_back(e);
  }
  return segments;
}

AnnotatedSide side_of(const json &record) {
  std::string side = string_field(record, "side");
  if (side == "Ea") return AnnotatedSide::ExpertAnnotated;
  if (side == "Sa") return AnnotatedSide::SimpleAnnotated;
  throw std::runtime_error("side must be \"Ea\" or \"Sa\"");
}

/// Runs `fn` over every record on `jobs` threads; a thrown error becomes an
/// {"pair_id", "error"} row and a finding.
template <class Fn>
std::vector<ordered_json> map_records(const std::vector<JsonLine> &records,
                                      unsigned jobs, Io &io, Fn fn) {
  std::vector<ordered_json> rows(records.size());
  std::vector<std::string> errors(records.size());
  parallel_for(records.size(), jobs, [&](size_t i) {
    try {
      rows[i] = fn(records[i].value);
    } catch (const std::exception &e) {
      errors[i] = e.what();
      rows[i] = {{"pair_id", pair_id_of(records[i].value)},
                 {"error", e.what()}};
    }
  });
  for (size_t i = 0; i < records.size(); ++i) {
    if (!errors[i].empty()) {
      io.finding("line " + std::to_string(records[i].line) + ": " + errors[i]);
    }
  }
  return rows;
}

// Links file for annotate

std::map<std::string, std::vector<CorefLink>> read_links(const std::string &path) {
  std::map<std::string, std::vector<CorefLink>> out;
  auto span = [](const json &v) {
    if (!v.is_array() || v.size() != 2) {
      throw std::runtime_error("link span must be [start, end]");
    }
    return CharSpan{v[0].get<size_t>(), v[1].get<size_t>()};
  };
  for (const JsonLine &rec : read_jsonl(path)) {
    try {
      std::string id = string_field(rec.value, "pair_id");
      auto &links = out[id];
      for (const json &link : rec.value.at("links")) {
        links.push_back({span(link.at("expert")), span(link.at("simple"))});
      }
    } catch (const std::exception &e) {
      throw std::runtime_error(path + ":" + std::to_string(rec.line) + ": " +
                               e.what());
    }
  }
  return out;
}

std::string csv_field(const std::string &field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string format_number(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

ordered_json mean_std_json(const MeanStd &m) {
  return {{"mean", m.mean}, {"std", m.std}, {"n", m.n}};
}

std::array<double, 3> parse_ratios(const std::string &text) {
  std::array<double, 3> ratios{};
  std::stringstream in(text);
  std::string part;
  size_t k = 0;
  while (std::getline(in, part, ',')) {
    if (k == 3) throw UsageError("--ratios takes three values");
    try {
      size_t used = 0;
      ratios[k] = std::stod(part, &used);
      if (normalize_whitespace(part.substr(used)) != "") throw UsageError("");
    } catch (const std::exception &) {
      throw UsageError("bad --ratios value '" + part + "'");
    }
    ++k;
  }
  if (k != 3) throw UsageError("--ratios takes three values");
  return ratios;
}

struct Shared {
  std::string config_path;
  unsigned jobs = 1;

  Config config() const {
    if (config_path.empty()) return Config{};
    try {
      return Config::load(config_path);
    } catch (const ConfigError &e) {
      throw UsageError(e.what());
    }
  }
};

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Edit annotation, slot encoding, metrics and corpus tools for "
               "text simplification",
               "simpkit"};
  app.fallthrough();
  app.require_subcommand(1);
  Shared shared;
  app.add_option("--config", shared.config_path, "JSON config file");
  app.add_option("--jobs", shared.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  std::string in_path, out_path = "-", links_path, angle, side = "both";
  std::string truth_path, pred_path, csv_path, summary_path = "-";
  std::string format, out_dir, ratios_text;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold, tol;
  std::optional<int> max_iters;
  bool no_stratify = false;

  auto *annotate = app.add_subcommand(
      "annotate", "Diff expert/simple pairs into edit markup");
  annotate->add_option("--in", in_path, "JSONL {pair_id, expert, simple}")
      ->required();
  annotate->add_option("--out", out_path, "Output JSONL");
  annotate->add_option("--links", links_path,
                       "JSONL coreference links {pair_id, links}");

  auto *parse = app.add_subcommand("parse", "Parse markup into segments");
  parse->add_option("--in", in_path, "JSONL {side: Ea|Sa, text}")->required();
  parse->add_option("--out", out_path, "Output JSONL");

  auto *extract_cmd =
      app.add_subcommand("extract", "Recover plain texts from markup");
  extract_cmd->add_option("--in", in_path, "JSONL {side: Ea|Sa, text}")
      ->required();
  extract_cmd->add_option("--out", out_path, "Output JSONL");
  extract_cmd->add_option("--side", side, "expert, simple or both")
      ->check(CLI::IsMember({"expert", "simple", "both"}));

  auto *encode = app.add_subcommand("encode", "Render slot records as model "
                                              "input and target strings");
  encode->add_option("--in", in_path, "JSONL {pair_id, angle, slots}")
      ->required();
  encode->add_option("--out", out_path, "Output JSONL");
  encode->add_option("--angle", angle, "Angle for records without one");

  auto *decode = app.add_subcommand(
      "decode", "Parse model input/target strings back into slots");
  decode->add_option("--in", in_path,
                     "JSONL {pair_id, angle, input?, target?|output?}")
      ->required();
  decode->add_option("--out", out_path, "Output JSONL");
  decode->add_option("--angle", angle, "Angle for records without one");

  auto *score = app.add_subcommand("score", "Slot-wise evaluation");
  score->add_option("--truth", truth_path, "JSONL {pair_id, angle, slots}")
      ->required();
  score->add_option("--pred", pred_path, "JSONL {pair_id, angle, slots}")
      ->required();
  score->add_option("--csv", csv_path, "Per-example CSV");
  score->add_option("--summary", summary_path, "Corpus summary JSON");

  auto *aggregate = app.add_subcommand(
      "aggregate", "Dawid-Skene aggregation of annotator labels");
  aggregate->add_option("--in", in_path, "CSV item_id,annotator_id,label")
      ->required();
  aggregate->add_option("--out", out_path, "Output JSON");
  aggregate->add_option("--threshold", threshold, "Routing confidence");
  aggregate->add_option("--max-iters", max_iters, "EM iteration cap");
  aggregate->add_option("--tol", tol, "EM convergence tolerance");

  auto *stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("--in", in_path, "Corpus (.tsv or .jsonl)")->required();
  stats->add_option("--out", out_path, "Output JSON");
  stats->add_option("--format", format, "tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));

  auto *split = app.add_subcommand("split", "Stratified train/dev/test split");
  split->add_option("--in", in_path, "Corpus (.tsv or .jsonl)")->required();
  split->add_option("--out-dir", out_dir, "Directory for the parts")
      ->required();
  split->add_option("--seed", seed, "Random seed");
  split->add_option("--ratios", ratios_text, "train,dev,test");
  split->add_flag("--no-stratify", no_stratify,
                  "Ignore Levenshtein-similarity strata");
  split->add_option("--format", format, "tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));

  std::vector<std::string> argv_storage{"simpkit"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const std::string &a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n";
    auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return 2;
  }

  Io io{out, err};
  try {
    const Config config = shared.config();
    const unsigned jobs = shared.jobs;
    auto corpus_format = [&] {
      if (format == "tsv") return CorpusFormat::Tsv;
      if (format == "jsonl") return CorpusFormat::Jsonl;
      return format_for_path(in_path);
    };

    if (annotate->parsed()) {
      std::optional<StopwordList> custom;
      if (config.stopwords_path) {
        custom = StopwordList::from_file(*config.stopwords_path);
      }
      const StopwordList &stopwords = custom ? *custom : StopwordList::builtin();
      std::map<std::string, std::vector<CorefLink>> links;
      if (!links_path.empty()) links = read_links(links_path);
      auto rows = map_records(read_jsonl(in_path), jobs, io, [&](const json &r) {
        std::string expert = string_field(r, "expert");
        std::string simple = string_field(r, "simple");
        AnnotatedText annotated = auto_annotate(expert, simple);
        std::string id = pair_id_of(r);
        auto found = links.find(id);
        ordered_json row;
        if (!id.empty()) row["pair_id"] = id;
        row["expert"] = expert;
        row["simple"] = simple;
        if (found != links.end()) {
          ElaborationResult result =
              detect_elaborations(annotated, found->second, stopwords);
          annotated = result.annotated;
          if (!result.warnings.empty()) {
            ordered_json w = ordered_json::array();
            for (const ElabWarning &warning : result.warnings) {
              w.push_back({{"link", warning.link_index},
                           {"message", warning.message}});
            }
            row["warnings"] = w;
          }
        }
        row["annotated"] = serialize(annotated);
        return row;
      });
      for (const ordered_json &row : rows) {
        if (!row.contains("warnings")) continue;
        for (const auto &w : row["warnings"]) {
          io.finding(row.value("pair_id", std::string()) + ": link " +
                     std::to_string(w["link"].get<size_t>()) + ": " +
                     w["message"].get<std::string>());
        }
      }
      write_text(out_path, to_jsonl(rows), io);
    } else if (parse->parsed()) {
      auto rows = map_records(read_jsonl(in_path), jobs, io, [](const json &r) {
        AnnotatedSide s = side_of(r);
        AnnotatedText annotated = parse_annotated(string_field(r, "text"), s);
        ordered_json row;
        if (!pair_id_of(r).empty()) row["pair_id"] = pair_id_of(r);
        row["side"] = r["side"];
        row["segments"] = segments_to_json(annotated);
        return row;
      });
      write_text(out_path, to_jsonl(rows), io);
    } else if (extract_cmd->parsed()) {
      auto rows =
          map_records(read_jsonl(in_path), jobs, io, [&](const json &r) {
            AnnotatedText annotated =
                parse_annotated(string_field(r, "text"), side_of(r));
            ordered_json row;
            if (!pair_id_of(r).empty()) row["pair_id"] = pair_id_of(r);
            if (side != "simple") {
              row["expert"] = extract(annotated, TextSide::Expert);
            }
            if (side != "expert") {
              row["simple"] = extract(annotated, TextSide::Simple);
            }
            return row;
          });
      write_text(out_path, to_jsonl(rows), io);
    } else if (encode->parsed()) {
      auto rows =
          map_records(read_jsonl(in_path), jobs, io, [&](const json &r) {
            Example ex = example_from_json(r, angle, config.slot_names);
            ordered_json row;
            row["pair_id"] = ex.pair_id;
            row["angle"] = ex.angle.name();
            row["input"] = encode_input(ex, config.slot_names);
            bool has_targets = true;
            for (Slot s : ex.angle.targets) {
              has_targets = has_targets && ex.values.count(s);
            }
            if (has_targets) {
              row["target"] = render_output(ex, config.slot_names);
            }
            return row;
          });
      write_text(out_path, to_jsonl(rows), io);
    } else if (decode->parsed()) {
      auto records = read_jsonl(in_path);
      auto rows = map_records(records, jobs, io, [&](const json &r) {
        Angle a = angle_of(r, angle);
        Example ex;
        ex.pair_id = pair_id_of(r);
        ex.angle = a;
        std::vector<DecodeFinding> findings;
        auto merge = [&](const DecodeResult &d) {
          for (const auto &[slot, value] : d.example.values) {
            ex.values[slot] = value;
          }
          findings.insert(findings.end(), d.findings.begin(), d.findings.end());
        };
        if (r.contains("input")) {
          merge(decode_input(string_field(r, "input"), a, config.slot_names));
        }
        const char *key = r.contains("output") ? "output" : "target";
        if (r.contains(key)) {
          merge(decode_output(string_field(r, key), a, config.slot_names));
        }
        ordered_json row;
        row["pair_id"] = ex.pair_id;
        row["angle"] = a.name();
        row["slots"] = slots_to_json(ex);
        ordered_json f = ordered_json::array();
        for (const DecodeFinding &d : findings) {
          ordered_json item = {{"kind", to_string(d.kind)}};
          if (d.slot) item["slot"] = abbreviation(*d.slot);
          if (!d.detail.empty()) item["detail"] = d.detail;
          f.push_back(item);
        }
        row["findings"] = f;
        return row;
      });
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].contains("findings") && !rows[i]["findings"].empty()) {
          io.finding("line " + std::to_string(records[i].line) + ": " +
                     rows[i]["findings"].dump());
        }
      }
      write_text(out_path, to_jsonl(rows), io);
    } else if (score->parsed()) {
      auto truth_records = read_jsonl(truth_path);
      std::map<std::string, json> predictions;
      for (const JsonLine &p : read_jsonl(pred_path)) {
        std::string id = pair_id_of(p.value);
        if (!predictions.emplace(id, p.value).second) {
          io.finding(pred_path + ":" + std::to_string(p.line) +
                     ": duplicate pair_id " + id);
        }
      }
      std::vector<std::optional<MetricReport>> reports(truth_records.size());
      std::vector<std::string> errors(truth_records.size());
      std::set<std::string> matched;
      for (const JsonLine &t : truth_records) {
        matched.insert(pair_id_of(t.value));
      }
      parallel_for(truth_records.size(), jobs, [&](size_t i) {
        try {
          Example truth =
              example_from_json(truth_records[i].value, "", config.slot_names);
          auto it = predictions.find(truth.pair_id);
          Example pred;
          pred.pair_id = truth.pair_id;
          pred.angle = truth.angle;
          if (it != predictions.end()) {
            pred = example_from_json(it->second, truth.angle.name(),
                                     config.slot_names);
          }
          reports[i] = score_slots(truth, pred, config.metric);
        } catch (const std::exception &e) {
          errors[i] = e.what();
        }
      });
      std::vector<MetricReport> scored;
      std::string csv = "pair_id,angle,slot,status,metric,value,reason\n";
      for (size_t i = 0; i < truth_records.size(); ++i) {
        if (!reports[i]) {
          io.finding(truth_path + ":" + std::to_string(truth_records[i].line) +
                     ": " + errors[i]);
          continue;
        }
        const MetricReport &report = *reports[i];
        for (const SlotScore &slot : report.slots) {
          std::string head = csv_field(report.pair_id) + "," + report.angle +
                             "," + slot.label + ",";
          if (slot.status == SlotStatus::Skipped) {
            csv += head + "skipped,,," + csv_field(slot.skip_reason) + "\n";
            continue;
          }
          for (const auto &[metric, value] : slot.metrics) {
            csv += head + "scored," + metric + "," + format_number(value) + "," +
                   csv_field(slot.skip_reason) + "\n";
          }
        }
        scored.push_back(report);
      }
      for (const auto &[id, p] : predictions) {
        if (!matched.count(id)) {
          io.finding(pred_path + ": prediction without truth: " + id);
        }
      }
      ordered_json summary;
      summary["examples"] = scored.size();
      ordered_json metrics = ordered_json::object();
      for (const auto &[key, s] : summarize(scored)) {
        metrics[key] = {{"mean", s.mean},
                        {"std", s.std},
                        {"n", s.n},
                        {"skipped", s.skipped}};
      }
      summary["metrics"] = metrics;
      summary["metadata"] = metric_metadata();
      summary["metadata"]["metric_lowercase"] = config.metric.lowercase;
      if (!csv_path.empty()) write_text(csv_path, csv, io);
      write_text(summary_path, summary.dump(2) + "\n", io);
    } else if (aggregate->parsed()) {
      std::istringstream csv(read_text(in_path));
      LabelMatrix matrix = LabelMatrix::from_triples(read_label_csv(csv));
      DawidSkeneOptions options = config.dawid_skene;
      if (max_iters) options.max_iters = *max_iters;
      if (tol) options.tol = *tol;
      double cutoff = threshold.value_or(config.route_threshold);
      Posterior post = dawid_skene(matrix, options);
      Routing routing = route(post, cutoff);
      std::vector<bool> escalated(matrix.items.size(), false);
      for (size_t i : routing.escalated) escalated[i] = true;
      ordered_json result = ordered_json::object();
      for (size_t i = 0; i < matrix.items.size(); ++i) {
        result[matrix.items[i]] = {
            {"label", matrix.categories[post.best(i)]},
            {"confidence", post.confidence(i)},
            {"routed", escalated[i]}};
      }
      write_text(out_path, result.dump(2) + "\n", io);
    } else if (stats->parsed()) {
      auto records = load_corpus(in_path, corpus_format());
      CorpusStats s = corpus_stats(records, config.metric, jobs);
      ordered_json j;
      j["records"] = s.records;
      j["lev_similarity"] = mean_std_json(s.lev_similarity);
      j["compression"] = mean_std_json(s.compression);
      j["fkgl_expert"] = mean_std_json(s.fkgl_expert);
      j["fkgl_simple"] = mean_std_json(s.fkgl_simple);
      j["words_added"] = mean_std_json(s.words_added);
      j["words_deleted"] = mean_std_json(s.words_deleted);
      j["words_kept"] = mean_std_json(s.words_kept);
      j["annotated_records"] = s.annotated_records;
      j["edits"] = s.edits;
      write_text(out_path, j.dump(2) + "\n", io);
    } else if (split->parsed()) {
      SplitOptions options;
      if (seed) {
        options.seed = *seed;
      } else if (config.split_seed) {
        options.seed = *config.split_seed;
      } else {
        throw UsageError("split needs --seed (or split.seed in the config)");
      }
      options.ratios = ratios_text.empty() ? config.split_ratios
                                           : parse_ratios(ratios_text);
      options.stratify = config.split_stratify && !no_stratify;
      CorpusFormat fmt = corpus_format();
      auto records = load_corpus(in_path, fmt);
      CorpusSplit parts = split_corpus(records, options);
      std::filesystem::create_directories(out_dir);
      const std::string ext = fmt == CorpusFormat::Tsv ? ".tsv" : ".jsonl";
      const char *const names[] = {"train", "dev", "test"};
      for (size_t j = 0; j < 3; ++j) {
        save_corpus(parts.parts[j], out_dir + "/" + names[j] + ext, fmt);
      }
      write_text(out_dir + "/manifest.json", split_manifest(parts, options), io);
    }
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return 2;
  } catch (const CorpusError &e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == CorpusErrc::Io || e.code() == CorpusErrc::Ratio) {
      err << '\n' << app.get_subcommands().front()->help();
      return 2;
    }
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return io.status;
}

}  // namespace simpkit::cli
