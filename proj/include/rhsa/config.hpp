#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhsa/corpus.hpp"
#include "rhsa/logmining.hpp"
#include "rhsa/models.hpp"
#include "rhsa/synth.hpp"

namespace rhsa {

// Everything a run depends on. Stored as a flat `key = value` file; the
// CLI can override any key.
struct RunConfig {
  std::string corpus = "corpus.jsonl";
  std::string log = "log.tsv";
  std::string out = "out";
  std::uint64_t seed = 1;

  VocabularyParams vocab;
  TimeWindow window;
  std::optional<std::size_t> pair_sample_size;  // unset: every extracted pair
  std::size_t min_successors = 100;
  std::size_t min_pair_count = 10;

  std::vector<ModelConfig> models = default_models();
  std::string topic_source = "gibbs";  // or "file"
  std::string topic_file = "topics_T{T}.tsv";
  double gibbs_alpha = 0.0;  // 0 selects 50 / T
  double gibbs_beta = 0.01;
  std::size_t gibbs_iterations = 500;

  std::size_t n_bins = 50;

  SynthParams synth;

  static std::vector<ModelConfig> default_models();
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text);
std::string render_config(const RunConfig& config);
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);
std::vector<std::string> config_keys();

}  // namespace rhsa
