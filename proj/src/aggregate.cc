#include "simpkit/aggregate.hh"

#include <algorithm>
#include <cmath>
#include <map>

#include "simpkit/text.hh"

namespace simpkit {

LabelMatrix LabelMatrix::from_triples(
    const std::vector<std::array<std::string, 3>> &rows) {
  if (rows.empty()) throw AggregateError("no labels");
  LabelMatrix m;
  std::map<std::string, size_t> item_index;
  std::vector<std::string> annotators, categories;
  for (const auto &row : rows) {
    for (const std::string &field : row) {
      if (field.empty()) throw AggregateError("empty field in label row");
    }
    if (item_index.emplace(row[0], m.items.size()).second) {
      m.items.push_back(row[0]);
    }
    annotators.push_back(row[1]);
    categories.push_back(row[2]);
  }
  auto unique_sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  m.annotators = unique_sorted(std::move(annotators));
  m.categories = unique_sorted(std::move(categories));
  auto index_of = [](const std::vector<std::string> &v, const std::string &x) {
    return static_cast<size_t>(std::lower_bound(v.begin(), v.end(), x) -
                               v.begin());
  };
  for (const auto &row : rows) {
    m.labels.push_back({item_index.at(row[0]), index_of(m.annotators, row[1]),
                        index_of(m.categories, row[2])});
  }
  return m;
}

size_t Posterior::best(size_t item) const {
  const auto &row = items[item];
  return static_cast<size_t>(std::max_element(row.begin(), row.end()) -
                             row.begin());
}

std::vector<size_t> majority_vote(const LabelMatrix &matrix) {
  const size_t K = matrix.categories.size();
  std::vector<std::vector<size_t>> votes(matrix.items.size(),
                                         std::vector<size_t>(K, 0));
  for (const auto &l : matrix.labels) ++votes[l.item][l.category];
  std::vector<size_t> out;
  for (const auto &v : votes) {
    out.push_back(static_cast<size_t>(std::max_element(v.begin(), v.end()) -
                                      v.begin()));
  }
  return out;
}

Posterior dawid_skene(const LabelMatrix &matrix,
                      const DawidSkeneOptions &options) {
  const size_t N = matrix.items.size();
  const size_t J = matrix.annotators.size();
  const size_t K = matrix.categories.size();
  const double eps = options.smoothing;
  if (N == 0 || K == 0) throw AggregateError("empty label matrix");
  if (eps <= 0) throw AggregateError("smoothing must be positive");

  std::vector<std::vector<size_t>> labels_of(N);
  for (size_t k = 0; k < matrix.labels.size(); ++k) {
    labels_of[matrix.labels[k].item].push_back(k);
  }
  for (size_t i = 0; i < N; ++i) {
    if (labels_of[i].empty()) {
      throw AggregateError("item without labels: " + matrix.items[i]);
    }
  }

  Posterior post;
  post.items.assign(N, std::vector<double>(K, 0.0));
  std::vector<size_t> init = majority_vote(matrix);
  for (size_t i = 0; i < N; ++i) post.items[i][init[i]] = 1.0;
  post.priors.assign(K, 0.0);
  post.confusion.assign(J, std::vector<std::vector<double>>(
                               K, std::vector<double>(K, 0.0)));

  double previous = 0;
  for (int iter = 1; iter <= std::max(options.max_iters, 1); ++iter) {
    // M step: smoothed counts under the current item posteriors.
    for (size_t k = 0; k < K; ++k) {
      double mass = 0;
      for (size_t i = 0; i < N; ++i) mass += post.items[i][k];
      post.priors[k] =
          (mass + eps) / (static_cast<double>(N) + static_cast<double>(K) * eps);
    }
    for (auto &per_annotator : post.confusion) {
      for (auto &row : per_annotator) std::fill(row.begin(), row.end(), eps);
    }
    for (const auto &l : matrix.labels) {
      for (size_t k = 0; k < K; ++k) {
        post.confusion[l.annotator][k][l.category] += post.items[l.item][k];
      }
    }
    for (auto &per_annotator : post.confusion) {
      for (auto &row : per_annotator) {
        double total = 0;
        for (double x : row) total += x;
        for (double &x : row) x /= total;
      }
    }

    // E step, accumulating the log-likelihood of the new parameters.
    double ll = 0;
    std::vector<double> logp(K);
    for (size_t i = 0; i < N; ++i) {
      for (size_t k = 0; k < K; ++k) {
        logp[k] = std::log(post.priors[k]);
        for (size_t idx : labels_of[i]) {
          const auto &l = matrix.labels[idx];
          logp[k] += std::log(post.confusion[l.annotator][k][l.category]);
        }
      }
      double top = *std::max_element(logp.begin(), logp.end());
      double z = 0;
      for (size_t k = 0; k < K; ++k) z += std::exp(logp[k] - top);
      for (size_t k = 0; k < K; ++k) {
        post.items[i][k] = std::exp(logp[k] - top) / z;
      }
      ll += top + std::log(z);
    }
    for (size_t k = 0; k < K; ++k) ll += eps * std::log(post.priors[k]);
    for (const auto &per_annotator : post.confusion) {
      for (const auto &row : per_annotator) {
        for (double x : row) ll += eps * std::log(x);
      }
    }

    post.log_likelihood.push_back(ll);
    post.iterations = iter;
    if (iter > 1 && std::abs(ll - previous) < options.tol) {
      post.converged = true;
      break;
    }
    previous = ll;
  }
  return post;
}

Routing route(const Posterior &posterior, double threshold) {
  if (!(threshold > 0 && threshold <= 1)) {
    throw AggregateError("threshold must be in (0, 1]");
  }
  Routing out;
  for (size_t i = 0; i < posterior.items.size(); ++i) {
    (posterior.confidence(i) >= threshold ? out.accepted : out.escalated)
        .push_back(i);
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string &line,
                                        size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"' && fields.back().empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (quoted) {
    throw AggregateError("line " + std::to_string(line_no) +
                         ": unterminated quote");
  }
  return fields;
}

}  // namespace

std::vector<std::array<std::string, 3>> read_label_csv(std::istream &in) {
  std::vector<std::array<std::string, 3>> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (normalize_whitespace(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line, line_no);
    if (fields.size() != 3) {
      throw AggregateError("line " + std::to_string(line_no) +
                           ": expected 3 fields, got " +
                           std::to_string(fields.size()));
    }
    for (std::string &f : fields) f = normalize_whitespace(f);
    if (rows.empty() && line_no == 1 && fields[0] == "item_id" &&
        fields[1] == "annotator_id" && fields[2] == "label") {
      continue;
    }
    rows.push_back({fields[0], fields[1], fields[2]});
  }
  return rows;
}

}  // namespace simpkit
