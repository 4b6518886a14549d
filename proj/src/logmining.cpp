#include "rhsa/logmining.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rhsa/error.hpp"
#include "rhsa/io.hpp"
#include "rhsa/rng.hpp"

namespace rhsa {
namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

ParsedLog parse_log(std::istream& in) {
  ParsedLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    const auto fields = split(line, '\t');
    bool ok = fields.size() == 3 && !fields[1].empty() && !fields[2].empty();
    std::int64_t ts = 0;
    if (ok) {
      try {
        ts = parse_int(fields[0]);
        ok = ts >= 0;
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) {
      ++log.skipped_lines;
      log.skipped_line_numbers.push_back(line_no);
      continue;
    }
    log.events.push_back({std::string(fields[1]), std::string(fields[2]), ts});
  }
  if (log.events.empty()) {
    throw Error(ErrorKind::EmptyInput, "empty log: no well-formed lines (" +
                                           std::to_string(log.skipped_lines) + " malformed)");
  }
  std::stable_sort(log.events.begin(), log.events.end(), [](const auto& a, const auto& b) {
    return a.session_id != b.session_id ? a.session_id < b.session_id : a.timestamp < b.timestamp;
  });
  return log;
}

std::vector<DownloadPair> extract_consecutive_pairs(std::span<const DownloadEvent> events,
                                                    const TimeWindow& window) {
  std::vector<DownloadPair> pairs;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const auto& a = events[i];
    const auto& b = events[i + 1];
    if (a.session_id != b.session_id) continue;
    if (b.timestamp < a.timestamp) {
      throw Error(ErrorKind::InvalidArgument, "events are not sorted within session " + a.session_id);
    }
    const auto gap = b.timestamp - a.timestamp;
    if (gap <= window.min_gap || gap >= window.max_gap) continue;
    if (a.doc_id == b.doc_id) continue;
    pairs.push_back({a.doc_id, b.doc_id, gap});
  }
  return pairs;
}

std::vector<DownloadPair> sample_pairs(std::span<const DownloadPair> pairs, std::size_t n,
                                       std::uint64_t seed) {
  if (n > pairs.size()) {
    throw Error(ErrorKind::InvalidArgument, "cannot sample " + std::to_string(n) + " pairs from " +
                                                std::to_string(pairs.size()));
  }
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  // Partial Fisher-Yates: the first n slots end up a uniform sample.
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + rng.index(order.size() - i);
    std::swap(order[i], order[j]);
  }
  std::vector<DownloadPair> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(pairs[order[i]]);
  return out;
}

std::vector<DocPair> generate_random_pairs(std::span<const std::string> docs, std::size_t n,
                                           std::uint64_t seed) {
  if (docs.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "random pairs need at least 2 unique documents");
  }
  Rng rng(seed);
  std::vector<DocPair> out;
  out.reserve(n);
  while (out.size() < n) {
    const auto a = rng.index(docs.size());
    const auto b = rng.index(docs.size());
    if (a == b) continue;
    out.emplace_back(docs[a], docs[b]);
  }
  return out;
}

std::vector<std::string> unique_docs(std::span<const DownloadPair> pairs) {
  std::set<std::string> ids;
  for (const auto& p : pairs) {
    ids.insert(p.first_doc);
    ids.insert(p.second_doc);
  }
  return {ids.begin(), ids.end()};
}

PairCollection build_pair_collection(std::span<const DownloadPair> pairs, std::size_t n,
                                     std::uint64_t sample_seed, std::uint64_t random_seed) {
  PairCollection pc;
  pc.unique_docs = unique_docs(pairs);
  for (auto& p : sample_pairs(pairs, n, sample_seed)) {
    pc.consecutive.emplace_back(std::move(p.first_doc), std::move(p.second_doc));
  }
  pc.random = generate_random_pairs(pc.unique_docs, pc.consecutive.size(), random_seed);
  return pc;
}

QuerySet build_query_set(std::span<const DownloadPair> pairs, std::size_t min_successors,
                         std::size_t min_pair_count) {
  std::map<std::string, std::map<std::string, std::size_t>> successors;
  for (const auto& p : pairs) ++successors[p.first_doc][p.second_doc];

  QuerySet qs;
  for (const auto& [q, next] : successors) {
    if (next.size() <= min_successors) continue;
    Query query{q, {}};
    for (const auto& [d, count] : next) {
      if (count > min_pair_count && d != q) query.relevant.push_back(d);
    }
    if (!query.relevant.empty()) qs.queries.push_back(std::move(query));
  }
  return qs;
}

std::string pairs_to_tsv(std::span<const DownloadPair> pairs) {
  std::ostringstream out;
  for (const auto& p : pairs) out << p.first_doc << '\t' << p.second_doc << '\t' << p.gap << '\n';
  return out.str();
}

std::vector<DownloadPair> parse_pairs_tsv(std::istream& in) {
  std::vector<DownloadPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    if (f.size() != 3) {
      throw Error(ErrorKind::Parse, "pair line " + std::to_string(line_no) + ": expected 3 fields");
    }
    pairs.push_back({std::string(f[0]), std::string(f[1]), parse_int(f[2])});
  }
  return pairs;
}

std::string doc_pairs_to_tsv(std::span<const DocPair> pairs) {
  std::ostringstream out;
  for (const auto& [a, b] : pairs) out << a << '\t' << b << '\n';
  return out.str();
}

std::vector<DocPair> parse_doc_pairs_tsv(std::istream& in) {
  std::vector<DocPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    if (f.size() < 2) {
      throw Error(ErrorKind::Parse, "pair line " + std::to_string(line_no) + ": expected 2 fields");
    }
    pairs.emplace_back(std::string(f[0]), std::string(f[1]));
  }
  return pairs;
}

std::string query_set_to_jsonl(const QuerySet& qs) {
  std::string out;
  for (const auto& q : qs.queries) {
    nlohmann::json j{{"query", q.id}, {"relevant", q.relevant}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

QuerySet parse_query_set_jsonl(std::istream& in) {
  QuerySet qs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Query q{j.at("query").get<std::string>(), j.at("relevant").get<std::vector<std::string>>()};
      std::sort(q.relevant.begin(), q.relevant.end());
      if (q.relevant.empty()) throw Error(ErrorKind::Parse, "empty relevant set");
      qs.queries.push_back(std::move(q));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, "query line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::sort(qs.queries.begin(), qs.queries.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return qs;
}

std::string events_to_tsv(std::span<const DownloadEvent> events) {
  std::ostringstream out;
  for (const auto& e : events) out << e.timestamp << '\t' << e.session_id << '\t' << e.doc_id << '\n';
  return out.str();
}

}  // namespace rhsa
