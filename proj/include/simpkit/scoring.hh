#pragma once

#include <map>
#include <string>
#include <vector>

#include "simpkit/codec.hh"
#include "simpkit/metrics.hh"

namespace simpkit {

enum class SlotStatus { Scored, Skipped };

/// Scores for one target slot. Slots derived from annotated simple text are
/// labelled "Sa.R", "Sa.X", and so on.
struct SlotScore {
  std::string label;
  SlotStatus status = SlotStatus::Scored;
  std::string skip_reason;
  std::map<std::string, double> metrics;
};

struct MetricReport {
  std::string pair_id;
  std::string angle;
  std::vector<SlotScore> slots;
};

/// Slot-wise evaluation of a prediction against the truth for the same angle.
///
///   S   sari/add/keep/del, fkgl, rouge_l (recall) and rouge_l_f1 against the
///       truth S, lev_similarity and compression against E; fkgl is left out
///       when the prediction has no words
///   I   add
///   X   elaboration = mean of add and keep over the post spans
///   R   add over the post spans; altdel over the pre spans, with the truth
///       S as reference
///   D   altdel, with the truth S as reference
///   Sa  the S metrics on the extracted simple text, plus R/X/I/D from its
///       edits
///
/// A slot that is absent or empty on either side is Skipped, never scored as
/// zero. SARI-family values are in [0, 100]; altdel is reported x100 with
/// altdel_precision and altdel_recall alongside. E is taken from the truth's
/// E slot, or extracted from its Ea slot. Throws MetricError(AngleMismatch)
/// when the angles differ and MetricError(MissingExpert) when a scored slot
/// needs E and the truth has neither.
MetricReport score_slots(const Example &truth, const Example &pred,
                         const MetricOptions &options = {});

struct MetricSummary {
  double mean = 0;
  double std = 0;  // sample standard deviation; 0 when n < 2
  size_t n = 0;
  size_t skipped = 0;
};

/// Corpus summary keyed "slot.metric". A skipped slot counts once towards
/// `skipped` of each metric that slot reports elsewhere in the corpus.
std::map<std::string, MetricSummary> summarize(
    const std::vector<MetricReport> &reports);

}  // namespace simpkit
