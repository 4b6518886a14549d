#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rhsa/corpus.hpp"
#include "rhsa/logmining.hpp"

namespace rhsa {

struct TopicDistribution {
  std::string source_doc;
  std::vector<double> theta;
};

enum class Family { VectorSpace, TopicSpace };

// tf-idf with top-n query truncation (top_n unset = all terms), or a topic
// model with `topics` topics.
struct ModelConfig {
  Family family = Family::VectorSpace;
  std::optional<std::size_t> top_n;
  std::size_t topics = 0;

  static ModelConfig tfidf(std::optional<std::size_t> top_n);
  static ModelConfig topic_model(std::size_t topics);

  // "tfidf:50", "tfidf:all", "lda:20"
  std::string label() const;
  static ModelConfig parse(const std::string& label);
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

std::string family_name(Family family);
// Parameter column of the report: "50", "all", "20".
std::string param_name(const ModelConfig& config);

// Keeps the top_n entries by weight; ties go to the lower index. The
// result keeps increasing index order.
TfIdfVector truncate_top_n(const TfIdfVector& vec, std::optional<std::size_t> top_n);
TfIdfVector represent_query_tfidf(const Document& doc, const Vocabulary& vocab,
                                  std::optional<std::size_t> top_n);

// 1 - cos(a, b). Throws Error{Degenerate} if either vector is empty.
double cosine_distance(const TfIdfVector& a, const TfIdfVector& b);

// Divides every value by (max - min) of the batch.
std::vector<double> normalize_cosine(std::span<const double> values);

// Base-2 Jensen-Shannon divergence, in [0, 1].
double js_divergence(std::span<const double> p, std::span<const double> q);
double js_divergence(const TopicDistribution& p, const TopicDistribution& q);

enum class Distance { Cosine, JsDivergence };

using Representation = std::variant<TfIdfVector, TopicDistribution>;

bool is_degenerate(const Representation& rep);
double distance(const Representation& a, const Representation& b, Distance metric);

using RepresentationTable = std::map<std::string, Representation>;

// A model as seen by evaluation: how a document is represented when it
// plays the query role and when it is a ranked/compared document.
struct ModelTables {
  RepresentationTable queries;
  RepresentationTable docs;
  Distance metric = Distance::Cosine;
};

struct ScoredPairs {
  std::vector<double> values;             // one per kept pair, input order
  std::vector<std::size_t> kept;          // indices into the input pairs
  std::vector<std::string> skipped;       // one report line per skipped pair
};

// The first document of each pair takes the query role. Pairs touching a
// degenerate representation are skipped with a report line; a missing
// representation is an error naming the document.
ScoredPairs score_pairs(std::span<const DocPair> pairs, const ModelTables& model);

ModelTables build_tfidf_tables(std::span<const Document> corpus, const Vocabulary& vocab,
                               std::optional<std::size_t> top_n);
ModelTables build_topic_tables(std::span<const TopicDistribution> thetas);

// doc_id<TAB>index:weight ...
std::string tfidf_to_tsv(std::span<const TfIdfVector> vectors);

}  // namespace rhsa
