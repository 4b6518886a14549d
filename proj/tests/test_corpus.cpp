#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "rhsa/corpus.hpp"
#include "rhsa/error.hpp"
#include "rhsa/rng.hpp"

using namespace rhsa;

namespace {

Document doc(std::string id, std::vector<std::string> tokens) {
  return Document{std::move(id), std::move(tokens)};
}

std::vector<std::string> repeat(const std::string& token, std::size_t n) {
  return std::vector<std::string>(n, token);
}

}  // namespace

TEST_CASE("tokenize lowercases and splits on non-alphanumeric runs") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("Dark Matter, dark-matter!") ==
        std::vector<std::string>{"dark", "matter", "dark", "matter"});
  CHECK(tokenize("H2O flux") == std::vector<std::string>{"h2o", "flux"});
  CHECK(tokenize("  --  ").empty());
}

TEST_CASE("load_corpus_jsonl reads records and rejects duplicate ids") {
  std::istringstream in(R"({"id":"a","text":"Galaxy rotation"}
{"id":"b","text":"star"}
)");
  auto corpus = load_corpus_jsonl(in);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].id == "a");
  CHECK(corpus[0].tokens == std::vector<std::string>{"galaxy", "rotation"});

  std::istringstream dup(R"({"id":"a","text":"x"}
{"id":"a","text":"y"}
)");
  CHECK_THROWS_AS(load_corpus_jsonl(dup), Error);

  std::istringstream bad("{not json}\n");
  CHECK_THROWS_AS(load_corpus_jsonl(bad), Error);
}

TEST_CASE("a token below the collection-frequency threshold is excluded") {
  std::vector<Document> corpus{doc("d1", repeat("flux", 9)), doc("d2", repeat("star", 10))};
  auto vocab = build_vocabulary(corpus, {10, 0, 4});
  CHECK(vocab.index_of("flux") == Vocabulary::npos);
  CHECK(vocab.index_of("star") != Vocabulary::npos);
}

TEST_CASE("drop_top removes the most frequent token, ties lexicographically") {
  auto tokens = repeat("galaxy", 10);
  auto stars = repeat("star", 10);
  tokens.insert(tokens.end(), stars.begin(), stars.end());
  std::vector<Document> corpus{doc("d", tokens)};

  auto all = build_vocabulary(corpus, {10, 0, 4});
  CHECK(all.size() == 2);

  auto dropped = build_vocabulary(corpus, {10, 1, 4});
  REQUIRE(dropped.size() == 1);
  CHECK(dropped.entry(0).token == "star");
}

TEST_CASE("build_vocabulary errors") {
  std::vector<Document> empty;
  CHECK_THROWS_AS(build_vocabulary(empty), Error);
  std::vector<Document> tiny{doc("d", {"ab", "cd"})};
  CHECK_THROWS_AS(build_vocabulary(tiny, {1, 0, 4}), Error);
}

TEST_CASE("tf-idf weight is raw count times ln(N/df)") {
  std::vector<Document> corpus{
      doc("q", {"nova", "nova", "nova", "pulsar"}),
      doc("b", {"nova", "pulsar"}),
      doc("c", {"pulsar"}),
      doc("d", {"pulsar", "quasar"}),
  };
  auto vocab = build_vocabulary(corpus, {1, 0, 4});
  auto v = doc_tfidf(corpus[0], vocab);
  // pulsar is in every document: idf 0, not stored.
  REQUIRE(v.entries.size() == 1);
  CHECK(v.entries[0].first == vocab.index_of("nova"));
  CHECK(v.entries[0].second == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(v.entries[0].second == doctest::Approx(2.0794).epsilon(1e-4));

  auto none = doc_tfidf(doc("z", {"unknown", "words"}), vocab);
  CHECK(none.empty());
}

TEST_CASE("vocabulary invariants hold on random corpora") {
  const std::vector<std::string> pool{"alpha", "beta", "gamma", "delta", "epsilon", "zeta",
                                      "eta",   "theta", "iota", "kappa", "x1y",    "lambda",
                                      "mu",    "omicron"};
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Rng rng(trial, "test/vocab");
    std::vector<Document> corpus;
    std::size_t n_docs = 1 + rng.index(20);
    for (std::size_t d = 0; d < n_docs; ++d) {
      std::vector<std::string> tokens;
      std::size_t len = rng.index(40);
      for (std::size_t i = 0; i < len; ++i) tokens.push_back(pool[rng.index(pool.size())]);
      corpus.push_back(doc("d" + std::to_string(d), tokens));
    }
    VocabularyParams params{1 + rng.index(5), rng.index(4), 3 + rng.index(3)};

    // Oracle: count everything, then filter in the stated order.
    std::map<std::string, std::size_t> cf, df;
    for (const auto& d : corpus) {
      std::set<std::string> seen(d.tokens.begin(), d.tokens.end());
      for (const auto& t : d.tokens) ++cf[t];
      for (const auto& t : seen) ++df[t];
    }
    std::vector<std::pair<std::size_t, std::string>> kept;
    for (const auto& [t, c] : cf) {
      bool alpha = std::all_of(t.begin(), t.end(), [](char ch) { return ch >= 'a' && ch <= 'z'; });
      if (t.size() < params.min_len || !alpha || c < params.min_collection_freq) continue;
      kept.emplace_back(c, t);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::set<std::string> expected;
    for (std::size_t i = std::min(params.drop_top, kept.size()); i < kept.size(); ++i)
      expected.insert(kept[i].second);

    if (expected.empty()) {
      CHECK_THROWS_AS(build_vocabulary(corpus, params), Error);
      continue;
    }
    auto vocab = build_vocabulary(corpus, params);
    REQUIRE(vocab.size() == expected.size());
    std::size_t i = 0;
    for (const auto& token : expected) {
      const auto& e = vocab.entry(i);
      CHECK(e.token == token);
      CHECK(vocab.index_of(token) == i);
      CHECK(e.collection_freq == cf[token]);
      CHECK(e.doc_freq == df[token]);
      CHECK(e.doc_freq >= 1);
      CHECK(e.doc_freq <= vocab.n_docs());
      ++i;
    }

    for (const auto& d : corpus) {
      auto v = doc_tfidf(d, vocab);
      auto present = vocab_indices(d, vocab);
      std::set<std::size_t> present_set(present.begin(), present.end());
      for (std::size_t k = 0; k < v.entries.size(); ++k) {
        CHECK(v.entries[k].first < vocab.size());
        CHECK(v.entries[k].second > 0.0);
        CHECK(present_set.count(v.entries[k].first) == 1);
        if (k > 0) CHECK(v.entries[k - 1].first < v.entries[k].first);
      }
      auto shuffled = d;
      std::reverse(shuffled.tokens.begin(), shuffled.tokens.end());
      CHECK(doc_tfidf(shuffled, vocab).entries == v.entries);
    }
  }
}

TEST_CASE("vocabulary TSV export") {
  std::vector<Document> corpus{doc("a", {"star", "star", "nova"}), doc("b", {"star"})};
  auto vocab = build_vocabulary(corpus, {1, 0, 4});
  CHECK(vocab.to_tsv() == "nova\t0\t1\t1\nstar\t1\t2\t3\n");
}
