#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "rhsa/error.hpp"
#include "rhsa/rng.hpp"
#include "rhsa/topics.hpp"

using namespace rhsa;

namespace {

// Two groups with disjoint vocabularies.
std::vector<Document> two_group_corpus() {
  const std::vector<std::string> sky{"galaxy", "stellar", "nebula", "comet", "orbit", "quasar"};
  const std::vector<std::string> bio{"protein", "enzyme", "genome", "ribosome", "peptide", "lipid"};
  Rng rng(1, "test/two-groups");
  std::vector<Document> corpus;
  for (int d = 0; d < 20; ++d) {
    const auto& words = d < 10 ? sky : bio;
    Document doc{"d" + std::to_string(d), {}};
    for (int i = 0; i < 40; ++i) doc.tokens.push_back(words[rng.index(words.size())]);
    corpus.push_back(doc);
  }
  return corpus;
}

}  // namespace

TEST_CASE("Gibbs trainer separates disjoint groups") {
  auto corpus = two_group_corpus();
  auto vocab = build_vocabulary(corpus, {1, 0, 4});
  GibbsParams params;
  params.topics = 2;
  params.iterations = 200;
  params.seed = 99;
  auto result = train_topics_gibbs(corpus, vocab, params);
  REQUIRE(result.thetas.size() == corpus.size());
  CHECK(result.degenerate_docs.empty());

  double within = 0, cross = 0;
  int n_within = 0, n_cross = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      double js = js_divergence(result.thetas[i], result.thetas[j]);
      if ((i < 10) == (j < 10)) {
        within += js;
        ++n_within;
      } else {
        cross += js;
        ++n_cross;
      }
    }
  }
  CHECK(within / n_within < cross / n_cross);

  auto again = train_topics_gibbs(corpus, vocab, params);
  for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(again.thetas[i].theta == result.thetas[i].theta);
}

TEST_CASE("theta rows lie on the simplex above the smoothing floor") {
  auto corpus = two_group_corpus();
  corpus.push_back({"empty", {"zz", "x9"}});
  auto vocab = build_vocabulary(corpus, {1, 0, 4});
  for (std::size_t topics : {2u, 3u, 7u}) {
    GibbsParams params;
    params.topics = topics;
    params.iterations = 30;
    params.seed = topics;
    auto result = train_topics_gibbs(corpus, vocab, params);
    const double alpha = 50.0 / topics;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
      const auto& theta = result.thetas[d].theta;
      REQUIRE(theta.size() == topics);
      CHECK(std::accumulate(theta.begin(), theta.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
      const double n_d = static_cast<double>(vocab_indices(corpus[d], vocab).size());
      const double floor = alpha / (n_d + topics * alpha);
      for (double x : theta) CHECK(x >= floor - 1e-15);
    }
    REQUIRE(result.degenerate_docs == std::vector<std::string>{"empty"});
    for (double x : result.thetas.back().theta) CHECK(x == doctest::Approx(1.0 / topics).epsilon(1e-15));
  }
}

TEST_CASE("Gibbs parameter errors") {
  auto corpus = two_group_corpus();
  auto vocab = build_vocabulary(corpus, {1, 0, 4});
  GibbsParams params;
  params.topics = 1;
  CHECK_THROWS_AS(train_topics_gibbs(corpus, vocab, params), Error);
  std::vector<Document> none;
  params.topics = 2;
  CHECK_THROWS_AS(train_topics_gibbs(none, vocab, params), Error);
}

TEST_CASE("load_topic_distributions") {
  std::istringstream ok("A\t0.5\t0.5\n");
  auto rows = load_topic_distributions(ok);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].source_doc == "A");
  CHECK(rows[0].theta == std::vector<double>{0.5, 0.5});

  std::istringstream near("A\t0.5000004\t0.5\n");
  auto renorm = load_topic_distributions(near);
  CHECK(renorm[0].theta[0] + renorm[0].theta[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(renorm[0].theta[0] == doctest::Approx(0.5000004 / 1.0000004).epsilon(1e-15));

  std::istringstream far("B\t0.7\t0.7\n");
  CHECK_THROWS_AS(load_topic_distributions(far), Error);
  std::istringstream negative("B\t1.5\t-0.5\n");
  CHECK_THROWS_AS(load_topic_distributions(negative), Error);
  std::istringstream mismatch("A\t0.5\t0.5\nB\t0.2\t0.3\t0.5\n");
  CHECK_THROWS_AS(load_topic_distributions(mismatch), Error);
  std::istringstream single("A\t1.0\n");
  CHECK_THROWS_AS(load_topic_distributions(single), Error);

  std::vector<TopicDistribution> thetas{{"x", {0.25, 0.75}}, {"y", {0.1, 0.9}}};
  std::istringstream round(topic_distributions_to_tsv(thetas));
  auto back = load_topic_distributions(round);
  REQUIRE(back.size() == 2);
  CHECK(back[0].theta == thetas[0].theta);
  CHECK(back[1].source_doc == "y");
}
