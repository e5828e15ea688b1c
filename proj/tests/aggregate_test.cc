#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "simpkit/aggregate.hh"
#include "synthetic.hh"

using namespace simpkit;

namespace {

double recovery(const Posterior &post, const synthetic::Crowd &crowd) {
  size_t hits = 0;
  for (size_t i = 0; i < crowd.truth.size(); ++i) hits += post.best(i) == crowd.truth[i];
  return static_cast<double>(hits) / static_cast<double>(crowd.truth.size());
}

}  // namespace

TEST_CASE("label matrix") {
  LabelMatrix m = LabelMatrix::from_triples(
      {{"i2", "bob", "B"}, {"i1", "amy", "A"}, {"i2", "amy", "A"}});
  CHECK(m.items == std::vector<std::string>{"i2", "i1"});
  CHECK(m.annotators == std::vector<std::string>{"amy", "bob"});
  CHECK(m.categories == std::vector<std::string>{"A", "B"});
  REQUIRE(m.labels.size() == 3);
  CHECK(m.labels[0].item == 0);
  CHECK(m.labels[0].annotator == 1);
  CHECK(m.labels[0].category == 1);
  CHECK_THROWS_AS(LabelMatrix::from_triples({}), AggregateError);
  CHECK_THROWS_AS(LabelMatrix::from_triples({{"i", "", "A"}}), AggregateError);
}

TEST_CASE("majority vote breaks ties toward the smallest category") {
  LabelMatrix m = LabelMatrix::from_triples(
      {{"i", "a", "B"}, {"i", "b", "A"}, {"j", "a", "B"}, {"j", "b", "B"}});
  CHECK(majority_vote(m) == std::vector<size_t>{0, 1});
}

TEST_CASE("unanimous annotators") {
  std::vector<std::array<std::string, 3>> rows;
  for (int i = 0; i < 20; ++i) {
    std::string label = synthetic::category(static_cast<size_t>(i % 3));
    for (const char *a : {"x", "y", "z"}) rows.push_back({std::to_string(i), a, label});
  }
  LabelMatrix m = LabelMatrix::from_triples(rows);
  Posterior post = dawid_skene(m);
  std::vector<size_t> mv = majority_vote(m);
  for (size_t i = 0; i < m.items.size(); ++i) {
    CHECK(post.best(i) == mv[i]);
    CHECK(post.confidence(i) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(post.converged);
}

TEST_CASE("one iteration has a closed form") {
  const double eps = 1e-6;
  LabelMatrix single = LabelMatrix::from_triples({{"i", "a", "yes"}});
  Posterior p = dawid_skene(single, {.max_iters = 1, .tol = 1e-7, .smoothing = eps});
  CHECK(p.items[0][0] == 1.0);
  CHECK(p.iterations == 1);

  // Two items, one annotator, two categories: the confusion row for the
  // observed category is (1+eps, eps)/(1+2eps) and the priors are equal.
  LabelMatrix two = LabelMatrix::from_triples({{"i", "a", "A"}, {"j", "a", "B"}});
  p = dawid_skene(two, {.max_iters = 1, .tol = 1e-7, .smoothing = eps});
  double expected = (1 + eps) / (1 + 2 * eps);
  CHECK(std::abs(p.items[0][0] - expected) < 1e-12);
  CHECK(std::abs(p.items[1][1] - expected) < 1e-12);
  CHECK(std::abs(p.priors[0] - 0.5) < 1e-12);
}

TEST_CASE("planted labels are recovered") {
  synthetic::Crowd crowd =
      synthetic::crowd(200, {0.9, 0.8, 0.6}, synthetic::Noise::Cyclic, 20240611);
  LabelMatrix m = LabelMatrix::from_triples(crowd.rows);
  Posterior post = dawid_skene(m);
  CHECK(recovery(post, crowd) >= 0.95);
  for (const auto &row : post.items) {
    double sum = 0;
    for (double x : row) {
      CHECK(x >= 0);
      sum += x;
    }
    CHECK(std::abs(sum - 1) < 1e-9);
  }
  for (const auto &annotator : post.confusion) {
    for (const auto &row : annotator) {
      double sum = 0;
      for (double x : row) sum += x;
      CHECK(std::abs(sum - 1) < 1e-9);
    }
  }
  for (size_t k = 1; k < post.log_likelihood.size(); ++k) {
    CHECK(post.log_likelihood[k] >= post.log_likelihood[k - 1] - 1e-9);
  }
}

TEST_CASE("uniform noise: at least as good as majority vote on average") {
  double ds_total = 0, mv_total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    synthetic::Crowd crowd =
        synthetic::crowd(200, {0.9, 0.8, 0.6}, synthetic::Noise::Uniform, seed);
    LabelMatrix m = LabelMatrix::from_triples(crowd.rows);
    Posterior post = dawid_skene(m);
    std::vector<size_t> mv = majority_vote(m);
    size_t mv_hits = 0;
    for (size_t i = 0; i < mv.size(); ++i) mv_hits += mv[i] == crowd.truth[i];
    ds_total += recovery(post, crowd);
    mv_total += static_cast<double>(mv_hits) / 200.0;
    // Every item keeps some doubt, so almost nothing passes a threshold of 1.
    Routing strict = route(post, 1.0);
    CHECK(strict.escalated.size() > strict.accepted.size());
  }
  CHECK(ds_total >= mv_total);
}

TEST_CASE("annotator order does not matter") {
  synthetic::Crowd crowd =
      synthetic::crowd(60, {0.9, 0.7, 0.6, 0.8}, synthetic::Noise::Uniform, 7);
  Posterior a = dawid_skene(LabelMatrix::from_triples(crowd.rows));
  auto renamed = crowd.rows;
  for (auto &row : renamed) row[1] = "z" + std::string(1, static_cast<char>('9' - row[1].back()));
  std::stable_sort(renamed.begin(), renamed.end(),
                   [](const auto &x, const auto &y) {
                     return x[0] == y[0] ? false : x[0] < y[0];
                   });
  std::reverse(renamed.begin(), renamed.end());
  LabelMatrix m = LabelMatrix::from_triples(renamed);
  Posterior b = dawid_skene(m);
  for (size_t i = 0; i < m.items.size(); ++i) {
    size_t original = static_cast<size_t>(std::stoi(m.items[i].substr(4)));
    for (size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(b.items[i][k] - a.items[original][k]) < 1e-9);
    }
  }
}

TEST_CASE("routing") {
  Posterior p;
  p.items = {{0.95, 0.05}, {0.89, 0.11}, {0.1, 0.9}};
  Routing r = route(p, 0.9);
  CHECK(r.accepted == std::vector<size_t>{0, 2});
  CHECK(r.escalated == std::vector<size_t>{1});
  CHECK_THROWS_AS(route(p, 0.0), AggregateError);
  CHECK_THROWS_AS(route(p, 1.5), AggregateError);
  CHECK(route(p, 1.0).accepted.empty());
}

TEST_CASE("label csv") {
  std::istringstream in(
      "item_id,annotator_id,label\n"
      "p1,w1,A\n"
      "\"p,2\",w2,\"say \"\"B\"\"\"\n"
      "\n");
  auto rows = read_label_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "p,2");
  CHECK(rows[1][2] == "say \"B\"");
  std::istringstream bad("p1,w1\n");
  CHECK_THROWS_AS(read_label_csv(bad), AggregateError);
  std::istringstream open_quote("\"p1,w1,A\n");
  CHECK_THROWS_AS(read_label_csv(open_quote), AggregateError);
}
