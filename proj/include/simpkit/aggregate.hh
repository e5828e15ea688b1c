#pragma once

#include <array>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace simpkit {

class AggregateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Items x annotators categorical labels, stored sparsely. Categories are kept
/// sorted so that index order is lexicographic order; items keep their first
/// appearance order and annotators are sorted.
struct LabelMatrix {
  struct Label {
    size_t item;
    size_t annotator;
    size_t category;
  };

  std::vector<std::string> items;
  std::vector<std::string> annotators;
  std::vector<std::string> categories;
  std::vector<Label> labels;

  /// Builds from (item, annotator, label) rows. Throws AggregateError on an
  /// empty input or an empty field.
  static LabelMatrix from_triples(
      const std::vector<std::array<std::string, 3>> &rows);
};

struct DawidSkeneOptions {
  int max_iters = 100;
  double tol = 1e-7;
  double smoothing = 1e-6;
};

struct Posterior {
  /// items x categories; each row sums to 1.
  std::vector<std::vector<double>> items;
  /// annotators x true category x observed category; rows sum to 1.
  std::vector<std::vector<std::vector<double>>> confusion;
  std::vector<double> priors;
  /// Smoothed log-likelihood after each iteration. The smoothing acts as a
  /// Dirichlet prior, so this is the quantity EM never decreases.
  std::vector<double> log_likelihood;
  int iterations = 0;
  bool converged = false;

  /// Most probable category; ties go to the smaller index.
  size_t best(size_t item) const;
  double confidence(size_t item) const { return items[item][best(item)]; }
};

/// Dawid-Skene EM. Starts from the majority vote (ties to the smallest
/// category), then alternates M and E steps until the log-likelihood moves by
/// less than `tol` or `max_iters` iterations have run.
Posterior dawid_skene(const LabelMatrix &matrix,
                      const DawidSkeneOptions &options = {});

/// Per-item majority vote, ties to the smallest category.
std::vector<size_t> majority_vote(const LabelMatrix &matrix);

struct Routing {
  std::vector<size_t> accepted;
  std::vector<size_t> escalated;
};

/// Items whose best posterior reaches `threshold` are accepted; the others go
/// to an expert. Throws AggregateError unless 0 < threshold <= 1.
Routing route(const Posterior &posterior, double threshold);

/// Reads item_id,annotator_id,label rows. A first row reading
/// item_id,annotator_id,label is taken as a header. Fields may be quoted with
/// doubled quotes inside.
std::vector<std::array<std::string, 3>> read_label_csv(std::istream &in);

}  // namespace simpkit
