#include "rhsa/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rhsa/error.hpp"

namespace rhsa {
namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_alphabetic(std::string_view token) {
  return std::all_of(token.begin(), token.end(),
                     [](unsigned char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_ascii_alnum(c)) {
      current.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<Document> load_corpus_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, "corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!record.is_object() || !record.contains("id") || !record.contains("text") ||
        !record["id"].is_string() || !record["text"].is_string()) {
      throw Error(ErrorKind::Parse,
                  "corpus line " + std::to_string(line_no) + ": expected {\"id\", \"text\"} strings");
    }
    Document doc;
    doc.id = record["id"].get<std::string>();
    if (!seen.insert(doc.id).second) {
      throw Error(ErrorKind::Parse,
                  "corpus line " + std::to_string(line_no) + ": duplicate id '" + doc.id + "'");
    }
    doc.tokens = tokenize(record["text"].get<std::string>());
    docs.push_back(std::move(doc));
  }
  return docs;
}

Vocabulary::Vocabulary(std::vector<Entry> entries, std::size_t n_docs)
    : entries_(std::move(entries)), n_docs_(n_docs) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].token, i).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate vocabulary token '" + entries_[i].token + "'");
    }
  }
}

std::size_t Vocabulary::index_of(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? npos : it->second;
}

double Vocabulary::idf(std::size_t index) const {
  const auto& e = entries_.at(index);
  return std::log(static_cast<double>(n_docs_) / static_cast<double>(e.doc_freq));
}

std::string Vocabulary::to_tsv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    out << e.token << '\t' << i << '\t' << e.doc_freq << '\t' << e.collection_freq << '\n';
  }
  return out.str();
}

Vocabulary build_vocabulary(std::span<const Document> corpus, const VocabularyParams& params) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyInput, "cannot build a vocabulary from an empty corpus");

  struct Counts {
    std::size_t doc_freq = 0;
    std::size_t collection_freq = 0;
  };
  std::map<std::string, Counts, std::less<>> counts;
  for (const auto& doc : corpus) {
    std::set<std::string_view> in_doc;
    for (const auto& token : doc.tokens) {
      auto& c = counts[token];
      ++c.collection_freq;
      if (in_doc.insert(token).second) ++c.doc_freq;
    }
  }

  std::vector<Vocabulary::Entry> kept;
  for (const auto& [token, c] : counts) {
    if (token.size() < params.min_len || !is_alphabetic(token)) continue;
    if (c.collection_freq < params.min_collection_freq) continue;
    kept.push_back({token, c.doc_freq, c.collection_freq});
  }

  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.collection_freq != b.collection_freq ? a.collection_freq > b.collection_freq
                                                  : a.token < b.token;
  });
  kept.erase(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(std::min(params.drop_top, kept.size())));
  if (kept.empty()) throw Error(ErrorKind::Degenerate, "vocabulary filters removed every token");

  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.token < b.token; });
  return Vocabulary(std::move(kept), corpus.size());
}

std::vector<std::size_t> vocab_indices(const Document& doc, const Vocabulary& vocab) {
  std::vector<std::size_t> out;
  out.reserve(doc.tokens.size());
  for (const auto& token : doc.tokens) {
    const auto idx = vocab.index_of(token);
    if (idx != Vocabulary::npos) out.push_back(idx);
  }
  return out;
}

TfIdfVector doc_tfidf(const Document& doc, const Vocabulary& vocab) {
  std::map<std::size_t, std::size_t> tf;
  for (const auto idx : vocab_indices(doc, vocab)) ++tf[idx];

  TfIdfVector vec;
  vec.source_doc = doc.id;
  for (const auto& [idx, count] : tf) {
    const double w = static_cast<double>(count) * vocab.idf(idx);
    if (w > 0.0) vec.entries.emplace_back(idx, w);
  }
  return vec;
}

}  // namespace rhsa
