#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rhsa/logmining.hpp"

namespace rhsa {

// A planted-topic world: documents belong to topics in equal-sized blocks,
// their text is drawn from per-topic word distributions, and download
// sessions are random walks that stay inside the current topic with
// probability p_same_topic.
//
// Inside a topic, words and documents sit on a circle. A document's topic
// words concentrate around its position (Gaussian bump of width
// word_spread), and a within-topic step prefers nearby documents with
// weight exp(-locality * circular distance). locality = 0 makes the
// within-topic step depend on popularity only.
struct SynthParams {
  std::size_t n_topics = 20;
  std::size_t docs_per_topic = 100;
  std::size_t n_sessions = 2000;
  std::size_t session_len = 10;
  double p_same_topic = 0.85;
  // Zipf exponent of within-topic document popularity; 0 is uniform.
  double popularity_exponent = 0.0;
  double locality = 0.0;

  // Gaps are exponential with this mean, except for a small share of
  // machine-speed (1-10 s) and stale (1-2 h) gaps.
  double gap_mean = 300.0;
  double p_short_gap = 0.02;
  double p_long_gap = 0.02;

  std::size_t doc_length = 150;
  std::size_t words_per_topic = 80;
  std::size_t background_words = 300;
  double word_spread = 0.0;  // 0: Zipf over the topic's words, no position
  double topic_word_share = 0.6;
  double secondary_share = 0.15;
  // Ambiguous words: a pool shared by overlapping windows of topics.
  // Topic k uses pool words [k * shared_stride, k * shared_stride +
  // shared_per_topic) modulo the pool size; shared_share of each document's
  // tokens come from its topic's window.
  std::size_t shared_words = 0;
  std::size_t shared_per_topic = 6;
  std::size_t shared_stride = 2;
  double shared_share = 0.0;

  friend bool operator==(const SynthParams&, const SynthParams&) = default;
};

void validate(const SynthParams& params);

std::string synth_doc_id(std::size_t index);
std::size_t synth_topic_of(const SynthParams& params, std::size_t doc_index);
// Position in [0, 1) of a document on its topic circle.
double synth_position(const SynthParams& params, std::size_t doc_index);
// Inverse of synth_doc_id; throws for ids it did not produce.
std::size_t synth_doc_index(const std::string& id);

std::vector<DownloadEvent> generate_synthetic_log(const SynthParams& params, std::uint64_t seed);

struct SynthDocument {
  std::string id;
  std::string text;
};

std::vector<SynthDocument> generate_synthetic_corpus(const SynthParams& params, std::uint64_t seed);
std::string synthetic_corpus_to_jsonl(const std::vector<SynthDocument>& docs);

}  // namespace rhsa
