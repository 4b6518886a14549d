#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rhsa/error.hpp"
#include "rhsa/logmining.hpp"
#include "rhsa/synth.hpp"

using namespace rhsa;

namespace {

std::vector<DownloadEvent> session(const std::string& id,
                                   std::vector<std::pair<std::string, std::int64_t>> hits) {
  std::vector<DownloadEvent> out;
  for (auto& [doc, ts] : hits) out.push_back({id, doc, ts});
  return out;
}

std::vector<DownloadPair> repeated(const std::string& a, const std::string& b, std::size_t n) {
  return std::vector<DownloadPair>(n, DownloadPair{a, b, 60});
}

}  // namespace

TEST_CASE("parse_log") {
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_log(empty), Error);

  std::istringstream two("160\ts1\tB\n100\ts1\tA");
  auto log = parse_log(two);
  REQUIRE(log.events.size() == 2);
  CHECK(log.events[0] == DownloadEvent{"s1", "A", 100});
  CHECK(log.events[1] == DownloadEvent{"s1", "B", 160});
  CHECK(log.skipped_lines == 0);

  std::ifstream fixture(RHSA_FIXTURE_DIR "/malformed_log.tsv");
  REQUIRE(fixture);
  auto partial = parse_log(fixture);
  CHECK(partial.events.size() == 3);
  CHECK(partial.skipped_lines == 2);
  CHECK(partial.skipped_line_numbers == std::vector<std::size_t>{2, 4});

  std::istringstream negative("-5\ts1\tA\n");
  CHECK_THROWS_AS(parse_log(negative), Error);
}

TEST_CASE("window and identity rules") {
  CHECK(extract_consecutive_pairs(session("s", {{"A", 0}, {"B", 5}})).empty());
  auto inside = extract_consecutive_pairs(session("s", {{"A", 0}, {"B", 60}}));
  REQUIRE(inside.size() == 1);
  CHECK(inside[0] == DownloadPair{"A", "B", 60});
  CHECK(extract_consecutive_pairs(session("s", {{"A", 0}, {"B", 4000}})).empty());
  CHECK(extract_consecutive_pairs(session("s", {{"A", 0}, {"A", 60}})).empty());
  // Both bounds are strict.
  CHECK(extract_consecutive_pairs(session("s", {{"A", 0}, {"B", 10}})).empty());
  CHECK(extract_consecutive_pairs(session("s", {{"A", 0}, {"B", 3600}})).empty());
  CHECK(extract_consecutive_pairs(session("s", {{"A", 0}, {"B", 11}})).size() == 1);
  CHECK(extract_consecutive_pairs(session("s", {{"A", 0}, {"B", 3599}})).size() == 1);
}

TEST_CASE("golden fixture log yields the hand-traced pairs") {
  std::ifstream log_in(RHSA_FIXTURE_DIR "/golden_log.tsv");
  std::ifstream pairs_in(RHSA_FIXTURE_DIR "/golden_pairs.tsv");
  REQUIRE(log_in);
  REQUIRE(pairs_in);
  auto log = parse_log(log_in);
  auto pairs = extract_consecutive_pairs(log.events);
  CHECK(pairs == parse_pairs_tsv(pairs_in));
}

TEST_CASE("pairs never cross sessions and respect the window") {
  SynthParams p;
  p.n_topics = 4;
  p.docs_per_topic = 10;
  p.n_sessions = 300;
  p.gap_mean = 600;
  p.p_short_gap = 0.2;
  p.p_long_gap = 0.2;
  auto events = generate_synthetic_log(p, 3);
  std::stringstream tsv(events_to_tsv(events));
  auto log = parse_log(tsv);
  TimeWindow window{30, 900};
  auto pairs = extract_consecutive_pairs(log.events, window);
  REQUIRE(!pairs.empty());

  // Oracle: walk each session separately.
  std::map<std::string, std::vector<DownloadEvent>> by_session;
  for (const auto& e : log.events) by_session[e.session_id].push_back(e);
  std::vector<DownloadPair> expected;
  for (auto& [id, evs] : by_session) {
    for (std::size_t i = 1; i < evs.size(); ++i) {
      auto gap = evs[i].timestamp - evs[i - 1].timestamp;
      if (gap > 30 && gap < 900 && evs[i].doc_id != evs[i - 1].doc_id)
        expected.push_back({evs[i - 1].doc_id, evs[i].doc_id, gap});
    }
  }
  CHECK(pairs == expected);
  for (const auto& pr : pairs) {
    CHECK(pr.gap > 30);
    CHECK(pr.gap < 900);
    CHECK(pr.first_doc != pr.second_doc);
  }
}

TEST_CASE("sample_pairs") {
  std::vector<DownloadPair> pairs;
  for (int i = 0; i < 10; ++i) pairs.push_back({"a" + std::to_string(i), "b", 20 + i});

  CHECK(sample_pairs(pairs, 0, 1).empty());
  CHECK_THROWS_AS(sample_pairs(pairs, 11, 1), Error);

  auto all = sample_pairs(pairs, 10, 1);
  auto key = [](const DownloadPair& p) { return p.first_doc; };
  std::multiset<std::string> a, b;
  for (const auto& p : all) a.insert(key(p));
  for (const auto& p : pairs) b.insert(key(p));
  CHECK(a == b);

  auto first = sample_pairs(pairs, 5, 42);
  CHECK(first.size() == 5);
  CHECK(first == sample_pairs(pairs, 5, 42));
  std::set<std::string> distinct;
  for (const auto& p : first) distinct.insert(key(p));
  CHECK(distinct.size() == 5);
}

TEST_CASE("generate_random_pairs") {
  std::vector<std::string> two{"A", "B"};
  for (const auto& [x, y] : generate_random_pairs(two, 4, 9)) {
    bool ok = (x == "A" && y == "B") || (x == "B" && y == "A");
    CHECK(ok);
  }
  CHECK(generate_random_pairs(two, 0, 9).empty());
  std::vector<std::string> one{"A"};
  CHECK_THROWS_AS(generate_random_pairs(one, 3, 9), Error);

  std::vector<std::string> docs;
  for (int i = 0; i < 100; ++i) docs.push_back("d" + std::to_string(i));
  auto pairs = generate_random_pairs(docs, 1000, 5);
  REQUIRE(pairs.size() == 1000);
  std::size_t self = 0;
  for (const auto& [x, y] : pairs) self += x == y;
  CHECK(self == 0);
  CHECK(pairs == generate_random_pairs(docs, 1000, 5));
  CHECK(pairs != generate_random_pairs(docs, 1000, 6));
}

TEST_CASE("build_pair_collection samples equal-sized sets over seen docs") {
  std::vector<DownloadPair> pairs{{"A", "B", 20}, {"B", "C", 30}, {"C", "A", 40}, {"A", "B", 50}};
  auto pc = build_pair_collection(pairs, 3, 1, 2);
  CHECK(pc.consecutive.size() == 3);
  CHECK(pc.random.size() == 3);
  CHECK(pc.unique_docs == std::vector<std::string>{"A", "B", "C"});
  for (const auto& [x, y] : pc.random) {
    CHECK(x != y);
    CHECK(std::binary_search(pc.unique_docs.begin(), pc.unique_docs.end(), x));
    CHECK(std::binary_search(pc.unique_docs.begin(), pc.unique_docs.end(), y));
  }
}

TEST_CASE("query set thresholds are strict") {
  std::vector<DownloadPair> pairs = repeated("q", "d1", 11);
  auto d2 = repeated("q", "d2", 10);
  pairs.insert(pairs.end(), d2.begin(), d2.end());
  for (int i = 0; i < 99; ++i) pairs.push_back({"q", "x" + std::to_string(i), 60});
  // 101 distinct successors.
  auto qs = build_query_set(pairs, 100, 10);
  REQUIRE(qs.queries.size() == 1);
  CHECK(qs.queries[0] == Query{"q", {"d1"}});

  pairs.pop_back();  // 100 distinct successors: no longer a query
  CHECK(build_query_set(pairs, 100, 10).queries.empty());
  CHECK(build_query_set({}, 100, 10).queries.empty());
}

TEST_CASE("relevant sets agree with a recount of the input pairs") {
  SynthParams p;
  p.n_topics = 3;
  p.docs_per_topic = 15;
  p.n_sessions = 400;
  p.popularity_exponent = 1.0;
  auto events = generate_synthetic_log(p, 11);
  auto pairs = extract_consecutive_pairs(events);
  auto qs = build_query_set(pairs, 5, 2);
  REQUIRE(!qs.queries.empty());

  std::map<std::pair<std::string, std::string>, std::size_t> count;
  std::map<std::string, std::set<std::string>> successors;
  for (const auto& pr : pairs) {
    ++count[{pr.first_doc, pr.second_doc}];
    successors[pr.first_doc].insert(pr.second_doc);
  }
  std::size_t expected_queries = 0;
  for (const auto& [q, succ] : successors) {
    if (succ.size() <= 5) continue;
    bool any = false;
    for (const auto& d : succ) any = any || count[{q, d}] > 2;
    expected_queries += any;
  }
  CHECK(qs.queries.size() == expected_queries);
  for (const auto& q : qs.queries) {
    CHECK(successors[q.id].size() > 5);
    CHECK(!q.relevant.empty());
    CHECK(std::is_sorted(q.relevant.begin(), q.relevant.end()));
    std::size_t n_expected = 0;
    for (const auto& d : successors[q.id]) n_expected += count[{q.id, d}] > 2;
    CHECK(q.relevant.size() == n_expected);
    for (const auto& d : q.relevant) {
      CHECK(d != q.id);
      CHECK(count[{q.id, d}] > 2);
    }
  }
}

TEST_CASE("exports round-trip") {
  std::vector<DownloadPair> pairs{{"A", "B", 20}, {"C", "D", 3599}};
  std::istringstream pin(pairs_to_tsv(pairs));
  CHECK(parse_pairs_tsv(pin) == pairs);

  std::vector<DocPair> docs{{"A", "B"}, {"B", "A"}};
  std::istringstream din(doc_pairs_to_tsv(docs));
  CHECK(parse_doc_pairs_tsv(din) == docs);

  QuerySet qs{{Query{"q1", {"a", "b"}}, Query{"q2", {"c"}}}};
  std::istringstream qin(query_set_to_jsonl(qs));
  CHECK(parse_query_set_jsonl(qin) == qs);

  std::istringstream bad("A\tB\tnot-a-gap\n");
  CHECK_THROWS_AS(parse_pairs_tsv(bad), Error);
}

TEST_CASE("synthetic log topic structure") {
  SynthParams p;
  p.n_topics = 10;
  p.docs_per_topic = 20;
  p.n_sessions = 1500;
  p.session_len = 10;

  auto same_topic_fraction = [&](double p_same) {
    p.p_same_topic = p_same;
    auto pairs = extract_consecutive_pairs(generate_synthetic_log(p, 17));
    std::size_t same = 0;
    for (const auto& pr : pairs)
      same += synth_topic_of(p, synth_doc_index(pr.first_doc)) ==
              synth_topic_of(p, synth_doc_index(pr.second_doc));
    return std::pair{static_cast<double>(same) / pairs.size(), pairs.size()};
  };

  auto [forced, n_forced] = same_topic_fraction(1.0);
  CHECK(n_forced > 0);
  CHECK(forced == 1.0);

  auto [uniform, n] = same_topic_fraction(0.0);
  REQUIRE(n >= 10000);
  // Uniform jumps; self repeats are dropped by the identity rule, so 19 of
  // the 199 other docs share the topic.
  double expected = 19.0 / 199.0;
  double sd = std::sqrt(expected * (1 - expected) / n);
  CHECK(std::abs(uniform - expected) < 5 * sd);
  CHECK(std::abs(uniform - 0.1) < 0.02);

  p.n_sessions = 0;
  CHECK(generate_synthetic_log(p, 1).empty());

  p.n_sessions = 50;
  CHECK(generate_synthetic_log(p, 1) == generate_synthetic_log(p, 1));
  p.p_same_topic = 1.5;
  CHECK_THROWS_AS(validate(p), Error);
}
