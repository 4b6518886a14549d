#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rhsa/hsa.hpp"
#include "rhsa/logmining.hpp"
#include "rhsa/models.hpp"

namespace rhsa {

struct RankedList {
  std::string query;
  std::vector<std::string> ranked;  // best first
  std::vector<double> scores;       // ascending distances
};

// Ranks every document of `collection` except the query by ascending
// distance, ties by id. Degenerate collection documents rank at distance 1.
RankedList rank_collection(const std::string& query_id, const Representation& query,
                           const RepresentationTable& collection, Distance metric);

double average_precision(const RankedList& ranked, std::span<const std::string> relevant);
double map_score(std::span<const double> average_precisions);

double pearson(std::span<const double> xs, std::span<const double> ys);
// Pearson coefficient of average (fractional) ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);
std::vector<double> fractional_ranks(std::span<const double> values);

// Pairs for the query-set rHSA: each query against each of its relevant
// documents, and against as many sampled non-relevant documents.
struct QuerySetPairs {
  std::vector<DocPair> relevant;
  std::vector<DocPair> non_relevant;
};

QuerySetPairs build_query_set_pairs(const QuerySet& queries, std::span<const std::string> collection,
                                    std::uint64_t seed);

struct EvalOptions {
  std::size_t n_bins = 50;
};

// Scores both pair lists and runs rHSA. JS divergence uses the fixed range
// [0, 1]; cosine distances are normalized over the combined batch and
// binned over its [min, max].
RhsaAnalysis rhsa_for_model(const ModelTables& model, std::span<const DocPair> consecutive,
                            std::span<const DocPair> random, std::size_t n_bins,
                            std::vector<std::string>* notes = nullptr);

struct MapResult {
  double map = 0.0;
  std::vector<double> average_precisions;
  std::vector<std::string> notes;
};

// MAP over the query set; queries with a degenerate representation are
// skipped with a note.
MapResult map_for_model(const ModelTables& model, const QuerySet& queries);

struct EvalRow {
  ModelConfig config;
  std::optional<double> map;
  std::optional<double> rhsa_queryset;
  std::optional<double> rhsa_pairs;
  std::optional<RhsaAnalysis> queryset_analysis;
  std::optional<RhsaAnalysis> pairs_analysis;
  std::vector<std::string> notes;
  std::string error;  // non-empty when the config failed
};

struct CorrelationRow {
  Family family = Family::VectorSpace;
  std::string collection;  // "queryset" or "pairs"
  std::size_t n_models = 0;
  double pearson = 0.0;
  double spearman = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<CorrelationRow> correlations;
  std::vector<std::string> notes;

  // model,param,map,rhsa_queryset,rhsa_pairs
  std::string rows_csv() const;
  // family,collection,pearson,spearman
  std::string correlations_csv() const;
  std::string to_json() const;
};

using ModelBuilder = std::function<ModelTables(const ModelConfig&)>;

struct EvalInputs {
  const PairCollection* pairs = nullptr;
  const QuerySet* queries = nullptr;
  const QuerySetPairs* query_pairs = nullptr;
};

// One row per config; a failing config keeps its row with an error and is
// left out of the correlations. Correlations need at least 2 rows per family.
EvalReport compare_models(std::span<const ModelConfig> configs, const ModelBuilder& build,
                          const EvalInputs& inputs, const EvalOptions& options = {});

}  // namespace rhsa
