#include "simpkit/scoring.hh"

#include <cmath>
#include <optional>

#include "simpkit/markup.hh"
#include "simpkit/text.hh"

namespace simpkit {

namespace {

const SlotValue *find_value(const Example &example, Slot slot) {
  auto it = example.values.find(slot);
  return it == example.values.end() ? nullptr : &it->second;
}

std::string text_of(const SlotValue &value) {
  if (const auto *text = std::get_if<std::string>(&value)) return *text;
  return "";
}

SpanList spans_of(const SlotValue &value) {
  if (const auto *list = std::get_if<SpanList>(&value)) return *list;
  if (const auto *text = std::get_if<std::string>(&value)) return {*text};
  return {};
}

PairList pairs_of(const SlotValue &value) {
  if (const auto *pairs = std::get_if<PairList>(&value)) return *pairs;
  return {};
}

SpanList pres(const PairList &pairs) {
  SpanList out;
  for (const SpanPair &p : pairs) out.push_back(p.pre);
  return out;
}

SpanList posts(const PairList &pairs) {
  SpanList out;
  for (const SpanPair &p : pairs) out.push_back(p.post);
  return out;
}

bool blank(const SpanList &spans, const MetricOptions &options) {
  return to_pieces(spans, options).empty();
}

/// Everything a slot scorer may need besides the two slot values.
struct Context {
  std::optional<std::string> expert;
  std::optional<std::string> reference_simple;
  MetricOptions options;

  const std::string &require_expert() const {
    if (!expert) throw MetricError(MetricErrc::MissingExpert, "");
    return *expert;
  }
};

SlotScore skipped(std::string label, std::string reason) {
  return {std::move(label), SlotStatus::Skipped, std::move(reason), {}};
}

SlotScore score_simple(const std::string &label, const std::string &truth,
                       const std::string &pred, const Context &ctx) {
  if (normalize_whitespace(truth).empty()) {
    return skipped(label, "empty in truth");
  }
  if (normalize_whitespace(pred).empty()) {
    return skipped(label, "empty in prediction");
  }
  const std::string &expert = ctx.require_expert();
  SlotScore score{label, SlotStatus::Scored, "", {}};
  std::vector<std::string> refs{truth};
  SariScore s = sari(expert, pred, refs, ctx.options);
  score.metrics["sari"] = s.sari;
  score.metrics["add"] = s.add;
  score.metrics["keep"] = s.keep;
  score.metrics["del"] = s.del;
  // A prediction made only of punctuation has no readability grade.
  try {
    score.metrics["fkgl"] = fkgl(pred).fkgl;
  } catch (const MetricError &) {
  }
  RougeL r = rouge_l(pred, truth, ctx.options);
  score.metrics["rouge_l"] = r.recall;
  score.metrics["rouge_l_f1"] = r.f1;
  score.metrics["lev_similarity"] = lev_similarity(
      normalize_whitespace(expert), normalize_whitespace(pred));
  score.metrics["compression"] = compression_ratio(expert, pred);
  return score;
}

SariScore span_sari(const SpanList &truth, const SpanList &pred,
                    const Context &ctx) {
  std::string expert = ctx.require_expert();
  Pieces input = to_pieces(std::span<const std::string>(&expert, 1), ctx.options);
  std::vector<Pieces> refs{to_pieces(truth, ctx.options)};
  return sari(input, to_pieces(pred, ctx.options), refs);
}

void add_altdel(SlotScore &score, const SpanList &pred, const Context &ctx) {
  std::string expert = ctx.require_expert();
  Pieces input = to_pieces(std::span<const std::string>(&expert, 1), ctx.options);
  std::vector<Pieces> refs{
      to_pieces(std::span<const std::string>(&*ctx.reference_simple, 1),
                ctx.options)};
  AltDelScore a = altdel(input, to_pieces(pred, ctx.options), refs);
  score.metrics["altdel"] = 100 * a.f1;
  score.metrics["altdel_precision"] = a.precision;
  score.metrics["altdel_recall"] = a.recall;
  if (a.degenerate) score.metrics["altdel_degenerate"] = 1;
}

SlotScore score_spans(const std::string &label, Slot slot,
                      const SlotValue &truth, const SlotValue &pred,
                      const Context &ctx) {
  const bool pairs = shape_of(slot) == ValueShape::PairList;
  SpanList truth_out = pairs ? posts(pairs_of(truth)) : spans_of(truth);
  SpanList pred_out = pairs ? posts(pairs_of(pred)) : spans_of(pred);
  if (blank(truth_out, ctx.options)) return skipped(label, "empty in truth");
  if (blank(pred_out, ctx.options)) {
    return skipped(label, "empty in prediction");
  }

  SlotScore score{label, SlotStatus::Scored, "", {}};
  switch (slot) {
    case Slot::I: {
      score.metrics["add"] = span_sari(truth_out, pred_out, ctx).add;
      break;
    }
    case Slot::X: {
      SariScore s = span_sari(truth_out, pred_out, ctx);
      score.metrics["add"] = s.add;
      score.metrics["keep"] = s.keep;
      score.metrics["elaboration"] = (s.add + s.keep) / 2;
      break;
    }
    case Slot::R: {
      score.metrics["add"] = span_sari(truth_out, pred_out, ctx).add;
      SpanList pred_pre = pres(pairs_of(pred));
      if (!ctx.reference_simple) {
        score.skip_reason = "altdel: no reference simple text";
      } else if (!blank(pred_pre, ctx.options)) {
        add_altdel(score, pred_pre, ctx);
      }
      break;
    }
    case Slot::D: {
      if (!ctx.reference_simple) {
        return skipped(label, "no reference simple text");
      }
      add_altdel(score, pred_out, ctx);
      break;
    }
    default:
      return skipped(label, "slot is not scored");
  }
  return score;
}

struct EditSlots {
  PairList replace, elaborate;
  SpanList deleted, inserted;
};

EditSlots edit_slots(const AnnotatedText &annotated) {
  EditSlots out;
  for (const Segment &segment : annotated.segments) {
    const auto *edit = std::get_if<Edit>(&segment);
    if (!edit) continue;
    switch (edit->kind) {
      case EditKind::Replace:
        out.replace.push_back({edit->source, edit->target});
        break;
      case EditKind::Elaborate:
        out.elaborate.push_back({edit->source, edit->target});
        break;
      case EditKind::Delete: out.deleted.push_back(edit->source); break;
      case EditKind::Insert: out.inserted.push_back(edit->target); break;
    }
  }
  return out;
}

SlotValue as_value(const PairList &pairs) {
  if (pairs.empty()) return EmptyValue{};
  return pairs;
}

SlotValue as_value(const SpanList &spans) {
  if (spans.empty()) return EmptyValue{};
  return spans;
}

void score_annotated(const std::string &truth_text, const std::string &pred_text,
                     const Context &base, std::vector<SlotScore> &out) {
  AnnotatedText truth, pred;
  try {
    truth = parse_annotated(truth_text, AnnotatedSide::SimpleAnnotated);
  } catch (const MarkupError &e) {
    out.push_back(skipped("Sa", std::string("invalid truth annotation: ") +
                                    e.what()));
    return;
  }
  try {
    pred = parse_annotated(pred_text, AnnotatedSide::SimpleAnnotated);
  } catch (const MarkupError &e) {
    out.push_back(skipped("Sa", std::string("invalid annotation: ") + e.what()));
    return;
  }
  Context ctx = base;
  ctx.reference_simple = extract(truth, TextSide::Simple);
  out.push_back(score_simple("Sa", *ctx.reference_simple,
                             extract(pred, TextSide::Simple), ctx));
  EditSlots t = edit_slots(truth);
  EditSlots p = edit_slots(pred);
  out.push_back(score_spans("Sa.R", Slot::R, as_value(t.replace),
                            as_value(p.replace), ctx));
  out.push_back(score_spans("Sa.X", Slot::X, as_value(t.elaborate),
                            as_value(p.elaborate), ctx));
  out.push_back(score_spans("Sa.D", Slot::D, as_value(t.deleted),
                            as_value(p.deleted), ctx));
  out.push_back(score_spans("Sa.I", Slot::I, as_value(t.inserted),
                            as_value(p.inserted), ctx));
}

}  // namespace

MetricReport score_slots(const Example &truth, const Example &pred,
                         const MetricOptions &options) {
  if (!(truth.angle == pred.angle)) {
    throw MetricError(MetricErrc::AngleMismatch,
                      truth.angle.name() + " vs " + pred.angle.name());
  }
  MetricReport report{truth.pair_id, truth.angle.name(), {}};

  Context ctx;
  ctx.options = options;
  if (const SlotValue *e = find_value(truth, Slot::E); e && !is_empty(*e)) {
    ctx.expert = text_of(*e);
  } else if (const SlotValue *ea = find_value(truth, Slot::Ea);
             ea && !is_empty(*ea)) {
    try {
      ctx.expert = extract(
          parse_annotated(text_of(*ea), AnnotatedSide::ExpertAnnotated),
          TextSide::Expert);
    } catch (const MarkupError &) {
    }
  }
  if (const SlotValue *s = find_value(truth, Slot::S); s && !is_empty(*s)) {
    ctx.reference_simple = text_of(*s);
  } else if (const SlotValue *sa = find_value(truth, Slot::Sa);
             sa && !is_empty(*sa)) {
    try {
      ctx.reference_simple = extract(
          parse_annotated(text_of(*sa), AnnotatedSide::SimpleAnnotated),
          TextSide::Simple);
    } catch (const MarkupError &) {
    }
  }

  for (Slot slot : truth.angle.targets) {
    const std::string label(abbreviation(slot));
    const SlotValue *t = find_value(truth, slot);
    const SlotValue *p = find_value(pred, slot);
    if (!t || is_empty(*t)) {
      report.slots.push_back(skipped(label, "empty in truth"));
      continue;
    }
    if (!p) {
      report.slots.push_back(skipped(label, "missing in prediction"));
      continue;
    }
    if (is_empty(*p)) {
      report.slots.push_back(skipped(label, "empty in prediction"));
      continue;
    }
    switch (shape_of(slot)) {
      case ValueShape::Text:
        report.slots.push_back(
            score_simple(label, text_of(*t), text_of(*p), ctx));
        break;
      case ValueShape::Markup:
        score_annotated(text_of(*t), text_of(*p), ctx, report.slots);
        break;
      case ValueShape::SpanList:
      case ValueShape::PairList:
        report.slots.push_back(score_spans(label, slot, *t, *p, ctx));
        break;
    }
  }
  return report;
}

std::map<std::string, MetricSummary> summarize(
    const std::vector<MetricReport> &reports) {
  std::map<std::string, std::vector<double>> values;
  std::map<std::string, size_t> skips;
  std::map<std::string, std::vector<std::string>> keys_of_label;
  for (const MetricReport &report : reports) {
    for (const SlotScore &slot : report.slots) {
      if (slot.status == SlotStatus::Skipped) {
        ++skips[slot.label];
        continue;
      }
      for (const auto &[metric, value] : slot.metrics) {
        std::string key = slot.label + "." + metric;
        auto [it, fresh] = values.try_emplace(key);
        if (fresh) keys_of_label[slot.label].push_back(key);
        it->second.push_back(value);
      }
    }
  }

  std::map<std::string, MetricSummary> out;
  for (const auto &[key, xs] : values) {
    MetricSummary s;
    s.n = xs.size();
    double sum = 0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
      double ss = 0;
      for (double x : xs) ss += (x - s.mean) * (x - s.mean);
      s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    out[key] = s;
  }
  for (const auto &[label, count] : skips) {
    auto it = keys_of_label.find(label);
    if (it == keys_of_label.end()) {
      out[label].skipped = count;
      continue;
    }
    for (const std::string &key : it->second) out[key].skipped = count;
  }
  return out;
}

}  // namespace simpkit
