#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rhsa {

struct DownloadEvent {
  std::string session_id;
  std::string doc_id;
  std::int64_t timestamp = 0;

  friend bool operator==(const DownloadEvent&, const DownloadEvent&) = default;
};

struct ParsedLog {
  std::vector<DownloadEvent> events;  // sorted by (session_id, timestamp)
  std::size_t skipped_lines = 0;
  std::vector<std::size_t> skipped_line_numbers;
};

// timestamp<TAB>session_id<TAB>doc_id per line. Malformed lines are
// counted and skipped; a log without any well-formed line is an error.
ParsedLog parse_log(std::istream& in);

struct DownloadPair {
  std::string first_doc;
  std::string second_doc;
  std::int64_t gap = 0;

  friend bool operator==(const DownloadPair&, const DownloadPair&) = default;
};

// Both bounds are exclusive.
struct TimeWindow {
  std::int64_t min_gap = 10;
  std::int64_t max_gap = 3600;

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

std::vector<DownloadPair> extract_consecutive_pairs(std::span<const DownloadEvent> events,
                                                    const TimeWindow& window = {});

// Uniform sample without replacement.
std::vector<DownloadPair> sample_pairs(std::span<const DownloadPair> pairs, std::size_t n,
                                       std::uint64_t seed);

using DocPair = std::pair<std::string, std::string>;

// Ordered pairs drawn with replacement across pairs; self-pairs are redrawn.
std::vector<DocPair> generate_random_pairs(std::span<const std::string> unique_docs, std::size_t n,
                                           std::uint64_t seed);

// Sorted, deduplicated ids appearing in any pair.
std::vector<std::string> unique_docs(std::span<const DownloadPair> pairs);

struct PairCollection {
  std::vector<DocPair> consecutive;
  std::vector<DocPair> random;
  std::vector<std::string> unique_docs;
};

// Samples `n` consecutive pairs (all of them when n is unset) and the same
// number of random pairs over the documents seen in `pairs`.
PairCollection build_pair_collection(std::span<const DownloadPair> pairs, std::size_t n,
                                     std::uint64_t sample_seed, std::uint64_t random_seed);

struct Query {
  std::string id;
  std::vector<std::string> relevant;  // sorted

  friend bool operator==(const Query&, const Query&) = default;
};

struct QuerySet {
  std::vector<Query> queries;  // sorted by id

  friend bool operator==(const QuerySet&, const QuerySet&) = default;
};

// A document is a query when strictly more than `min_successors` distinct
// documents were downloaded right after it; its relevant set is every
// successor seen strictly more than `min_pair_count` times.
QuerySet build_query_set(std::span<const DownloadPair> pairs, std::size_t min_successors = 100,
                         std::size_t min_pair_count = 10);

std::string pairs_to_tsv(std::span<const DownloadPair> pairs);
std::vector<DownloadPair> parse_pairs_tsv(std::istream& in);

std::string doc_pairs_to_tsv(std::span<const DocPair> pairs);
std::vector<DocPair> parse_doc_pairs_tsv(std::istream& in);

std::string query_set_to_jsonl(const QuerySet& qs);
QuerySet parse_query_set_jsonl(std::istream& in);

std::string events_to_tsv(std::span<const DownloadEvent> events);

}  // namespace rhsa
