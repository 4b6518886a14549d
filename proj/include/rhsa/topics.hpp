#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rhsa/corpus.hpp"
#include "rhsa/models.hpp"

namespace rhsa {

struct GibbsParams {
  std::size_t topics = 20;
  double alpha = 0.0;  // <= 0 selects 50 / topics
  double beta = 0.01;
  std::size_t iterations = 500;
  std::uint64_t seed = 0;
};

struct TopicModelResult {
  std::vector<TopicDistribution> thetas;  // corpus order
  // Documents with no in-vocabulary token; they get the uniform distribution.
  std::vector<std::string> degenerate_docs;
};

// Collapsed Gibbs sampling for LDA. theta is read off the final assignment:
// (n_dt + alpha) / (N_d + T alpha).
TopicModelResult train_topics_gibbs(std::span<const Document> corpus, const Vocabulary& vocab,
                                    const GibbsParams& params);

// doc_id<TAB>p_1<TAB>...<TAB>p_T. Rows within 1e-6 of summing to one are
// renormalized; anything else is rejected.
std::vector<TopicDistribution> load_topic_distributions(std::istream& in);
std::string topic_distributions_to_tsv(std::span<const TopicDistribution> thetas);

}  // namespace rhsa
