#include "simpkit/config.hh"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace simpkit {

using nlohmann::json;

namespace {

void reject_unknown(const json &object, std::initializer_list<const char *> known,
                    const std::string &where) {
  for (const auto &[key, value] : object.items()) {
    bool ok = false;
    for (const char *k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key: " + where + key);
  }
}

const json &typed(const json &object, const char *key, json::value_t type,
                  const std::string &where) {
  const json &value = object.at(key);
  bool ok = value.type() == type;
  if (type == json::value_t::number_float) ok = value.is_number();
  if (type == json::value_t::number_unsigned) ok = value.is_number_unsigned();
  if (!ok) throw ConfigError("wrong type for config key: " + where + key);
  return value;
}

}  // namespace

Config Config::parse(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(root, {"metric_lowercase", "slot_names", "stopwords", "split",
                        "aggregate"},
                 "");

  Config config;
  using T = json::value_t;
  if (root.contains("metric_lowercase")) {
    config.metric.lowercase =
        typed(root, "metric_lowercase", T::boolean, "").get<bool>();
  }
  if (root.contains("slot_names")) {
    const json &names = typed(root, "slot_names", T::object, "");
    for (const auto &[key, value] : names.items()) {
      auto slot = slot_from_abbreviation(key);
      if (!slot) throw ConfigError("unknown slot in slot_names: " + key);
      if (!value.is_string() || value.get<std::string>().empty() ||
          value.get<std::string>().find('$') != std::string::npos) {
        throw ConfigError("slot name for " + key +
                          " must be a non-empty string without '$'");
      }
      config.slot_names.set(*slot, value.get<std::string>());
    }
  }
  if (root.contains("stopwords")) {
    config.stopwords_path =
        typed(root, "stopwords", T::string, "").get<std::string>();
  }
  if (root.contains("split")) {
    const json &split = typed(root, "split", T::object, "");
    reject_unknown(split, {"ratios", "seed", "stratify"}, "split.");
    if (split.contains("ratios")) {
      const json &ratios = typed(split, "ratios", T::array, "split.");
      if (ratios.size() != 3) {
        throw ConfigError("split.ratios must have three entries");
      }
      for (size_t j = 0; j < 3; ++j) {
        if (!ratios[j].is_number()) {
          throw ConfigError("split.ratios entries must be numbers");
        }
        config.split_ratios[j] = ratios[j].get<double>();
      }
    }
    if (split.contains("seed")) {
      config.split_seed =
          typed(split, "seed", T::number_unsigned, "split.").get<std::uint64_t>();
    }
    if (split.contains("stratify")) {
      config.split_stratify =
          typed(split, "stratify", T::boolean, "split.").get<bool>();
    }
  }
  if (root.contains("aggregate")) {
    const json &agg = typed(root, "aggregate", T::object, "");
    reject_unknown(agg, {"max_iters", "tol", "threshold", "smoothing"},
                   "aggregate.");
    if (agg.contains("max_iters")) {
      config.dawid_skene.max_iters = static_cast<int>(
          typed(agg, "max_iters", T::number_unsigned, "aggregate.")
              .get<std::uint64_t>());
    }
    if (agg.contains("tol")) {
      config.dawid_skene.tol =
          typed(agg, "tol", T::number_float, "aggregate.").get<double>();
    }
    if (agg.contains("threshold")) {
      config.route_threshold =
          typed(agg, "threshold", T::number_float, "aggregate.").get<double>();
    }
    if (agg.contains("smoothing")) {
      config.dawid_skene.smoothing =
          typed(agg, "smoothing", T::number_float, "aggregate.").get<double>();
    }
  }
  return config;
}

Config Config::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

}  // namespace simpkit
