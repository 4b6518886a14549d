#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rhsa {

struct Document {
  std::string id;
  std::vector<std::string> tokens;
};

// Lowercased alphanumeric runs, in order.
std::vector<std::string> tokenize(std::string_view text);

// Reads {"id", "text"} JSONL records. Duplicate ids are an error.
std::vector<Document> load_corpus_jsonl(std::istream& in);

struct VocabularyParams {
  std::size_t min_collection_freq = 10;
  std::size_t drop_top = 50;
  std::size_t min_len = 4;

  friend bool operator==(const VocabularyParams&, const VocabularyParams&) = default;
};

// The effective vocabulary: tokens that survive the length/alphabetic,
// minimum-frequency and drop-most-frequent filters, densely indexed.
class Vocabulary {
 public:
  struct Entry {
    std::string token;
    std::size_t doc_freq = 0;
    std::size_t collection_freq = 0;
  };

  Vocabulary(std::vector<Entry> entries, std::size_t n_docs);

  std::size_t size() const { return entries_.size(); }
  std::size_t n_docs() const { return n_docs_; }
  const Entry& entry(std::size_t index) const { return entries_.at(index); }
  std::span<const Entry> entries() const { return entries_; }

  // Index of a token, or npos when out of vocabulary.
  std::size_t index_of(std::string_view token) const;
  double idf(std::size_t index) const;

  // token<TAB>index<TAB>doc_freq<TAB>collection_freq
  std::string to_tsv() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t n_docs_;
};

Vocabulary build_vocabulary(std::span<const Document> corpus, const VocabularyParams& params = {});

// Sparse nonnegative vector with strictly increasing indices and no zeros.
struct TfIdfVector {
  std::string source_doc;
  std::vector<std::pair<std::size_t, double>> entries;

  bool empty() const { return entries.empty(); }
  friend bool operator==(const TfIdfVector&, const TfIdfVector&) = default;
};

// Raw term frequency times ln(n_docs / doc_freq).
TfIdfVector doc_tfidf(const Document& doc, const Vocabulary& vocab);

// Vocabulary indices of the in-vocabulary tokens of a document, in order.
std::vector<std::size_t> vocab_indices(const Document& doc, const Vocabulary& vocab);

}  // namespace rhsa
