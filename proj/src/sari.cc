#include "simpkit/metrics.hh"

#include <algorithm>

namespace simpkit {

namespace {

long count_of(const NgramCounts &counts, const std::string &key) {
  auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

NgramCounts scaled(const NgramCounts &counts, long factor) {
  NgramCounts out;
  for (const auto &[key, value] : counts) out[key] = value * factor;
  return out;
}

NgramCounts intersect(const NgramCounts &x, const NgramCounts &y) {
  NgramCounts out;
  for (const auto &[key, value] : x) {
    long m = std::min(value, count_of(y, key));
    if (m > 0) out[key] = m;
  }
  return out;
}

NgramCounts subtract(const NgramCounts &x, const NgramCounts &y) {
  NgramCounts out;
  for (const auto &[key, value] : x) {
    long d = value - count_of(y, key);
    if (d > 0) out[key] = d;
  }
  return out;
}

long total(const NgramCounts &counts) {
  long sum = 0;
  for (const auto &[key, value] : counts) sum += value;
  return sum;
}

double f1(double precision, double recall) {
  if (precision <= 0 && recall <= 0) return 0;
  return 2 * precision * recall / (precision + recall);
}

/// Accumulates an operation's per-order scores, skipping orders without
/// candidates.
struct OrderAverage {
  double sum = 0;
  int orders = 0;
  void add(double value) {
    sum += value;
    ++orders;
  }
  double mean(double if_empty) const {
    return orders == 0 ? if_empty : sum / orders;
  }
};

NgramCounts pooled(std::span<const Pieces> references, int n) {
  NgramCounts out;
  for (const Pieces &ref : references) {
    for (const auto &[key, value] : ngram_counts(ref, n)) out[key] += value;
  }
  return out;
}

bool has_tokens(const Pieces &pieces) {
  return std::any_of(pieces.begin(), pieces.end(),
                     [](const auto &p) { return !p.empty(); });
}

void require_references(std::span<const Pieces> references) {
  if (references.empty()) {
    throw MetricError(MetricErrc::EmptyReference, "no references");
  }
  for (const Pieces &ref : references) {
    if (!has_tokens(ref)) {
      throw MetricError(MetricErrc::EmptyReference, "blank reference");
    }
  }
}

std::vector<Pieces> pieces_of(std::span<const std::string> texts,
                              const MetricOptions &options) {
  std::vector<Pieces> out;
  for (const std::string &text : texts) {
    out.push_back(to_pieces(std::span<const std::string>(&text, 1), options));
  }
  return out;
}

Pieces single(std::string_view text, const MetricOptions &options) {
  std::string owned(text);
  return to_pieces(std::span<const std::string>(&owned, 1), options);
}

}  // namespace

SariScore sari(const Pieces &input, const Pieces &output,
               std::span<const Pieces> references) {
  if (!has_tokens(input)) throw MetricError(MetricErrc::EmptyInput, "sari");
  if (!has_tokens(output)) throw MetricError(MetricErrc::EmptyOutput, "sari");
  require_references(references);
  const long num_refs = static_cast<long>(references.size());

  OrderAverage keep_avg, del_avg, add_avg;
  for (int n = 1; n <= kMaxNgramOrder; ++n) {
    const NgramCounts source = ngram_counts(input, n);
    const NgramCounts candidate = ngram_counts(output, n);
    const NgramCounts reference = pooled(references, n);
    const NgramCounts source_rep = scaled(source, num_refs);
    const NgramCounts candidate_rep = scaled(candidate, num_refs);

    // KEEP
    const NgramCounts kept = intersect(source_rep, candidate_rep);
    const NgramCounts kept_good = intersect(kept, reference);
    const NgramCounts keep_all = intersect(source_rep, reference);
    if (!kept.empty() || !keep_all.empty()) {
      double precision = 0;
      for (const auto &[key, value] : kept) {
        precision += static_cast<double>(count_of(kept_good, key)) /
                     static_cast<double>(value);
      }
      if (!kept.empty()) precision /= static_cast<double>(kept.size());
      double recall = 0;
      if (!keep_all.empty()) {
        recall = static_cast<double>(total(kept_good)) /
                 static_cast<double>(total(keep_all));
      }
      keep_avg.add(f1(precision, recall));
    }

    // DEL (precision only)
    const NgramCounts deleted = subtract(source_rep, candidate_rep);
    if (!deleted.empty()) {
      const NgramCounts deleted_good = subtract(deleted, reference);
      double precision = 0;
      for (const auto &[key, value] : deleted) {
        precision += static_cast<double>(count_of(deleted_good, key)) /
                     static_cast<double>(value);
      }
      del_avg.add(precision / static_cast<double>(deleted.size()));
    }

    // ADD (set based)
    size_t added = 0, added_good = 0, add_all = 0;
    for (const auto &[key, value] : candidate) {
      if (source.count(key)) continue;
      ++added;
      if (reference.count(key)) ++added_good;
    }
    for (const auto &[key, value] : reference) {
      if (!source.count(key)) ++add_all;
    }
    if (added > 0 || add_all > 0) {
      double precision =
          added ? static_cast<double>(added_good) / static_cast<double>(added)
                : 0;
      double recall = add_all ? static_cast<double>(added_good) /
                                    static_cast<double>(add_all)
                              : 0;
      add_avg.add(f1(precision, recall));
    }
  }

  SariScore score;
  score.keep = 100 * keep_avg.mean(0);
  score.del = 100 * del_avg.mean(1);
  score.add = 100 * add_avg.mean(0);
  score.sari = (score.add + score.keep + score.del) / 3;
  return score;
}

SariScore sari(std::string_view input, std::string_view output,
               std::span<const std::string> references,
               const MetricOptions &options) {
  std::vector<Pieces> refs = pieces_of(references, options);
  return sari(single(input, options), single(output, options), refs);
}

AltDelScore altdel(const Pieces &input, const Pieces &output,
                   std::span<const Pieces> references) {
  if (!has_tokens(output)) throw MetricError(MetricErrc::EmptySlot, "altdel");
  if (!has_tokens(input)) throw MetricError(MetricErrc::EmptyInput, "altdel");
  if (references.empty()) {
    throw MetricError(MetricErrc::EmptyReference, "altdel");
  }

  AltDelScore score;
  OrderAverage precision_avg, recall_avg;
  for (int n = 1; n <= kMaxNgramOrder; ++n) {
    const NgramCounts in = ngram_counts(input, n);
    const NgramCounts out = ngram_counts(output, n);
    const NgramCounts ref = pooled(references, n);
    AltDelOrder &order = score.orders[n - 1];
    order.n = n;
    order.numerator = total(subtract(intersect(in, out), ref));
    order.output_total = total(out);
    order.deletable_total = total(subtract(in, ref));
    order.counted = order.output_total > 0;
    if (!order.counted) continue;
    precision_avg.add(static_cast<double>(order.numerator) /
                      static_cast<double>(order.output_total));
    if (order.deletable_total > 0) {
      recall_avg.add(static_cast<double>(order.numerator) /
                     static_cast<double>(order.deletable_total));
    } else {
      recall_avg.add(0);
      score.degenerate = true;
    }
  }
  score.precision = precision_avg.mean(0);
  score.recall = recall_avg.mean(0);
  score.f1 = f1(score.precision, score.recall);
  return score;
}

AltDelScore altdel(std::string_view input, std::string_view output_span,
                   std::span<const std::string> references,
                   const MetricOptions &options) {
  std::vector<Pieces> refs = pieces_of(references, options);
  return altdel(single(input, options), single(output_span, options), refs);
}

}  // namespace simpkit
