#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rhsa/config.hpp"
#include "rhsa/ireval.hpp"

namespace rhsa {

// Each command reads its inputs from the paths in the config, writes its
// outputs under config.out, and returns a JSON summary for stdout.

// corpus.jsonl and log.tsv from the planted-topic generator.
std::string cmd_synth(const RunConfig& config);

// pairs.tsv (every extracted pair), pairs_consecutive.tsv, pairs_random.tsv,
// queries.jsonl and mine_stats.json.
std::string cmd_mine(const RunConfig& config);

// vocab.tsv
std::string cmd_vocab(const RunConfig& config);

// Topic distributions for `topics` topics, written to the topic_file pattern.
std::string cmd_train_topics(const RunConfig& config, std::size_t topics);

// report.csv, correlations.csv, report.json and per-model curves/.
std::string cmd_evaluate(const RunConfig& config);

// rHSA of one model over both collections; writes its curves.
std::string cmd_rhsa(const RunConfig& config, const ModelConfig& model);

// MAP of one model over the query set.
std::string cmd_map(const RunConfig& config, const ModelConfig& model);

// Loaded corpus and mined artifacts, filtered to documents of the corpus.
struct EvalContext {
  std::vector<Document> corpus;
  Vocabulary vocab;
  PairCollection pairs;
  QuerySet queries;
  QuerySetPairs query_pairs;
  std::vector<std::string> notes;
};

EvalContext load_eval_context(const RunConfig& config);
ModelTables build_model(const RunConfig& config, const EvalContext& context, const ModelConfig& model);
EvalReport evaluate(const RunConfig& config, const EvalContext& context);

std::filesystem::path topic_file_path(const RunConfig& config, std::size_t topics);

}  // namespace rhsa
