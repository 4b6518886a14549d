#include "rhsa/topics.hpp"

#include <cmath>
#include <istream>
#include <set>
#include <sstream>

#include "rhsa/error.hpp"
#include "rhsa/io.hpp"
#include "rhsa/rng.hpp"

namespace rhsa {

TopicModelResult train_topics_gibbs(std::span<const Document> corpus, const Vocabulary& vocab,
                                    const GibbsParams& params) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyInput, "cannot train topics on an empty corpus");
  if (params.topics < 2) throw Error(ErrorKind::InvalidArgument, "topic models need at least 2 topics");
  if (!(params.beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");

  const std::size_t n_topics = params.topics;
  const std::size_t n_words = vocab.size();
  const double alpha = params.alpha > 0.0 ? params.alpha : 50.0 / static_cast<double>(n_topics);
  const double beta = params.beta;
  const double vbeta = static_cast<double>(n_words) * beta;

  std::vector<std::vector<std::size_t>> words(corpus.size());
  std::vector<std::vector<std::size_t>> assignment(corpus.size());
  std::vector<std::size_t> doc_topic(corpus.size() * n_topics, 0);
  std::vector<std::size_t> word_topic(n_words * n_topics, 0);
  std::vector<std::size_t> topic_total(n_topics, 0);

  Rng rng(params.seed);
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    words[d] = vocab_indices(corpus[d], vocab);
    assignment[d].resize(words[d].size());
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const auto t = rng.index(n_topics);
      assignment[d][i] = t;
      ++doc_topic[d * n_topics + t];
      ++word_topic[words[d][i] * n_topics + t];
      ++topic_total[t];
    }
  }

  std::vector<double> cumulative(n_topics);
  for (std::size_t it = 0; it < params.iterations; ++it) {
    for (std::size_t d = 0; d < corpus.size(); ++d) {
      std::size_t* nd = &doc_topic[d * n_topics];
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const auto w = words[d][i];
        std::size_t* nw = &word_topic[w * n_topics];
        auto t = assignment[d][i];
        --nd[t];
        --nw[t];
        --topic_total[t];

        double total = 0.0;
        for (std::size_t k = 0; k < n_topics; ++k) {
          total += (static_cast<double>(nd[k]) + alpha) * (static_cast<double>(nw[k]) + beta) /
                   (static_cast<double>(topic_total[k]) + vbeta);
          cumulative[k] = total;
        }
        const double u = rng.uniform() * total;
        t = 0;
        while (t + 1 < n_topics && cumulative[t] <= u) ++t;

        assignment[d][i] = t;
        ++nd[t];
        ++nw[t];
        ++topic_total[t];
      }
    }
  }

  TopicModelResult result;
  result.thetas.reserve(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    TopicDistribution theta{corpus[d].id, std::vector<double>(n_topics)};
    const double denom = static_cast<double>(words[d].size()) + static_cast<double>(n_topics) * alpha;
    for (std::size_t k = 0; k < n_topics; ++k) {
      theta.theta[k] = (static_cast<double>(doc_topic[d * n_topics + k]) + alpha) / denom;
    }
    if (words[d].empty()) result.degenerate_docs.push_back(corpus[d].id);
    result.thetas.push_back(std::move(theta));
  }
  return result;
}

std::vector<TopicDistribution> load_topic_distributions(std::istream& in) {
  std::vector<TopicDistribution> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dims = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = "topic line " + std::to_string(line_no) + ": ";
    const auto fields = split(line, '\t');
    if (fields.size() < 3) throw Error(ErrorKind::Parse, where + "expected an id and at least 2 probabilities");
    TopicDistribution t{std::string(fields[0]), {}};
    if (!seen.insert(t.source_doc).second) throw Error(ErrorKind::Parse, where + "duplicate id '" + t.source_doc + "'");
    double sum = 0.0;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const double p = parse_real(fields[k]);
      if (p < 0.0) throw Error(ErrorKind::Parse, where + "negative probability");
      t.theta.push_back(p);
      sum += p;
    }
    if (dims == 0) dims = t.theta.size();
    if (t.theta.size() != dims) {
      throw Error(ErrorKind::Parse, where + "dimension " + std::to_string(t.theta.size()) +
                                        " differs from " + std::to_string(dims));
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw Error(ErrorKind::Parse, where + "probabilities sum to " + format_real(sum));
    }
    for (auto& p : t.theta) p /= sum;
    out.push_back(std::move(t));
  }
  return out;
}

std::string topic_distributions_to_tsv(std::span<const TopicDistribution> thetas) {
  std::string out;
  for (const auto& t : thetas) {
    out += t.source_doc;
    for (const double p : t.theta) {
      out += '\t';
      out += format_real(p);
    }
    out += '\n';
  }
  return out;
}

}  // namespace rhsa
