#include "rhsa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "rhsa/error.hpp"
#include "rhsa/rng.hpp"

namespace rhsa {
namespace {

constexpr std::string_view kConsonants = "bcdfghjklmnprstvwxz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::string_view kFillers[] = {"the", "of", "and", "in", "a", "with", "from", "that", "2016", "x1"};

std::string syllable(std::size_t i) {
  std::string s;
  s += kConsonants[i % kConsonants.size()];
  s += kVowels[(i / kConsonants.size()) % kVowels.size()];
  return s;
}

// Distinct purely alphabetic six-letter pseudo-word per index.
std::string pseudo_word(std::size_t i) {
  const std::size_t base = kConsonants.size() * kVowels.size();
  return syllable(i % base) + syllable((i / base) % base) + syllable((i / (base * base)) % base);
}

// Cumulative weights for a Zipf law over n ranks.
std::vector<double> zipf_cdf(std::size_t n, double exponent) {
  std::vector<double> cdf(n);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    cdf[r] = total;
  }
  for (auto& c : cdf) c /= total;
  return cdf;
}

std::vector<double> to_cdf(std::vector<double> weights) {
  double total = 0.0;
  for (auto& w : weights) {
    total += w;
    w = total;
  }
  for (auto& w : weights) w /= total;
  return weights;
}

double circular_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

// Topic-word distribution concentrated around `center` on the topic circle.
std::vector<double> bump_cdf(std::size_t n_words, double center, double spread) {
  std::vector<double> w(n_words);
  for (std::size_t k = 0; k < n_words; ++k) {
    const double d = circular_distance(static_cast<double>(k) / static_cast<double>(n_words), center);
    w[k] = std::exp(-0.5 * d * d / (spread * spread));
  }
  return to_cdf(std::move(w));
}

std::size_t draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::int64_t draw_gap(const SynthParams& p, Rng& rng) {
  const double u = rng.uniform();
  if (u < p.p_short_gap) return 1 + static_cast<std::int64_t>(rng.index(10));
  if (u < p.p_short_gap + p.p_long_gap) return 3600 + static_cast<std::int64_t>(rng.index(3600));
  const double g = -p.gap_mean * std::log1p(-rng.uniform());
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(g)));
}

}  // namespace

void validate(const SynthParams& p) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, "synth: " + what); };
  if (p.n_topics == 0) fail("n_topics must be positive");
  if (p.docs_per_topic == 0) fail("docs_per_topic must be positive");
  if (p.n_topics * p.docs_per_topic < 2) fail("need at least 2 documents");
  if (!(p.p_same_topic >= 0.0 && p.p_same_topic <= 1.0)) fail("p_same_topic must be in [0, 1]");
  if (p.popularity_exponent < 0.0) fail("popularity_exponent must be >= 0");
  if (p.locality < 0.0) fail("locality must be >= 0");
  if (p.word_spread < 0.0) fail("word_spread must be >= 0");
  if (!(p.gap_mean > 0.0)) fail("gap_mean must be positive");
  if (p.p_short_gap < 0.0 || p.p_long_gap < 0.0 || p.p_short_gap + p.p_long_gap > 1.0) {
    fail("short/long gap probabilities must be nonnegative and sum to at most 1");
  }
  if (p.doc_length == 0 || p.words_per_topic == 0 || p.background_words == 0) {
    fail("document length and word counts must be positive");
  }
  if (p.topic_word_share < 0.0 || p.secondary_share < 0.0 || p.shared_share < 0.0 ||
      p.topic_word_share + p.secondary_share + p.shared_share > 1.0) {
    fail("word shares must be nonnegative and sum to at most 1");
  }
  if (p.shared_share > 0.0 && (p.shared_words == 0 || p.shared_per_topic == 0)) {
    fail("shared_share needs a nonempty shared word pool");
  }
}

std::string synth_doc_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "doc%05zu", index);
  return buf;
}

std::size_t synth_topic_of(const SynthParams& params, std::size_t doc_index) {
  return doc_index / params.docs_per_topic;
}

double synth_position(const SynthParams& params, std::size_t doc_index) {
  const double r = static_cast<double>(doc_index % params.docs_per_topic);
  const double x = r * 0.6180339887498949;
  return x - std::floor(x);
}

std::size_t synth_doc_index(const std::string& id) {
  if (id.size() < 4 || id.compare(0, 3, "doc") != 0 ||
      !std::all_of(id.begin() + 3, id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::InvalidArgument, "not a synthetic document id: " + id);
  }
  return std::stoul(id.substr(3));
}

std::vector<DownloadEvent> generate_synthetic_log(const SynthParams& p, std::uint64_t seed) {
  validate(p);
  Rng rng(seed);
  const std::size_t n_docs = p.n_topics * p.docs_per_topic;
  const auto popularity = zipf_cdf(p.docs_per_topic, p.popularity_exponent);
  std::vector<double> pop_weight(p.docs_per_topic);
  for (std::size_t r = 0; r < p.docs_per_topic; ++r) {
    pop_weight[r] = 1.0 / std::pow(static_cast<double>(r + 1), p.popularity_exponent);
  }
  auto within_topic = [&](std::size_t current) {
    const auto base = synth_topic_of(p, current) * p.docs_per_topic;
    if (p.locality == 0.0) return base + draw(popularity, rng);
    const double here = synth_position(p, current);
    std::vector<double> w(p.docs_per_topic);
    for (std::size_t r = 0; r < p.docs_per_topic; ++r) {
      w[r] = pop_weight[r] * std::exp(-p.locality * circular_distance(here, synth_position(p, base + r)));
    }
    return base + draw(to_cdf(std::move(w)), rng);
  };
  constexpr std::int64_t kYear = 365LL * 86400;

  std::vector<DownloadEvent> events;
  events.reserve(p.n_sessions * p.session_len);
  for (std::size_t s = 0; s < p.n_sessions; ++s) {
    char sid[32];
    std::snprintf(sid, sizeof sid, "s%06zu", s);
    std::int64_t t = static_cast<std::int64_t>(rng.index(kYear));
    std::size_t doc = rng.index(p.n_topics) * p.docs_per_topic + draw(popularity, rng);
    for (std::size_t k = 0; k < p.session_len; ++k) {
      if (k > 0) {
        t += draw_gap(p, rng);
        if (rng.uniform() < p.p_same_topic) {
          doc = within_topic(doc);
        } else {
          doc = rng.index(n_docs);
        }
      }
      events.push_back({sid, synth_doc_id(doc), t});
    }
  }
  return events;
}

std::vector<SynthDocument> generate_synthetic_corpus(const SynthParams& p, std::uint64_t seed) {
  validate(p);
  Rng rng(seed);
  const std::size_t n_docs = p.n_topics * p.docs_per_topic;
  const auto topic_words = zipf_cdf(p.words_per_topic, 1.0);
  const auto background = zipf_cdf(p.background_words, 1.0);
  auto topic_word = [&](std::size_t topic, std::size_t rank) {
    return pseudo_word(p.background_words + topic * p.words_per_topic + rank);
  };
  const std::size_t shared_base = p.background_words + p.n_topics * p.words_per_topic;
  auto shared_word = [&](std::size_t topic, std::size_t j) {
    return pseudo_word(shared_base + (topic * p.shared_stride + j) % p.shared_words);
  };

  std::vector<SynthDocument> docs;
  docs.reserve(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) {
    const auto topic = synth_topic_of(p, d);
    std::size_t secondary = topic;
    if (p.n_topics > 1) {
      secondary = rng.index(p.n_topics - 1);
      if (secondary >= topic) ++secondary;
    }
    const bool local = p.word_spread > 0.0;
    const auto own_words = local ? bump_cdf(p.words_per_topic, synth_position(p, d), p.word_spread) : topic_words;
    const auto secondary_words = local ? bump_cdf(p.words_per_topic, rng.uniform(), p.word_spread) : topic_words;
    std::string text;
    for (std::size_t k = 0; k < p.doc_length; ++k) {
      const double u = rng.uniform();
      std::string word;
      if (u < p.topic_word_share) {
        word = topic_word(topic, draw(own_words, rng));
      } else if (u < p.topic_word_share + p.secondary_share) {
        word = topic_word(secondary, draw(secondary_words, rng));
      } else if (u < p.topic_word_share + p.secondary_share + p.shared_share) {
        word = shared_word(topic, rng.index(p.shared_per_topic));
      } else {
        word = pseudo_word(draw(background, rng));
      }
      if (!text.empty()) text += ' ';
      text += word;
      if (rng.index(8) == 0) {
        text += ' ';
        text += kFillers[rng.index(std::size(kFillers))];
      }
    }
    docs.push_back({synth_doc_id(d), std::move(text)});
  }
  return docs;
}

std::string synthetic_corpus_to_jsonl(const std::vector<SynthDocument>& docs) {
  std::string out;
  for (const auto& d : docs) {
    out += nlohmann::json{{"id", d.id}, {"text", d.text}}.dump();
    out += '\n';
  }
  return out;
}

}  // namespace rhsa
