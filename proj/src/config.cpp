#include "rhsa/config.hpp"

#include <charconv>
#include <functional>
#include <sstream>

#include "rhsa/error.hpp"
#include "rhsa/io.hpp"

namespace rhsa {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t to_count(std::string_view v) {
  const auto n = parse_int(v);
  if (n < 0) throw Error(ErrorKind::Parse, "expected a nonnegative count, got '" + std::string(v) + "'");
  return static_cast<std::size_t>(n);
}

std::uint64_t to_u64(std::string_view v) {
  std::uint64_t n = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    throw Error(ErrorKind::Parse, "expected an unsigned integer, got '" + std::string(v) + "'");
  }
  return n;
}

struct Field {
  std::string name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

template <typename Get, typename Set>
Field field(std::string name, Get get, Set set) {
  return {std::move(name), get, set};
}

#define RHSA_COUNT(key, expr)                                                         \
  field(key, [](const RunConfig& c) { return std::to_string(c.expr); },               \
        [](RunConfig& c, std::string_view v) { c.expr = to_count(v); })
#define RHSA_REAL(key, expr)                                                          \
  field(key, [](const RunConfig& c) { return format_real(c.expr); },                  \
        [](RunConfig& c, std::string_view v) { c.expr = parse_real(v); })
#define RHSA_TEXT(key, expr)                                                          \
  field(key, [](const RunConfig& c) { return c.expr; },                               \
        [](RunConfig& c, std::string_view v) { c.expr = std::string(v); })

const std::vector<Field>& fields() {
  static const std::vector<Field> all = {
      RHSA_TEXT("corpus", corpus),
      RHSA_TEXT("log", log),
      RHSA_TEXT("out", out),
      field("seed", [](const RunConfig& c) { return std::to_string(c.seed); },
            [](RunConfig& c, std::string_view v) { c.seed = to_u64(v); }),
      RHSA_COUNT("min_collection_freq", vocab.min_collection_freq),
      RHSA_COUNT("drop_top", vocab.drop_top),
      RHSA_COUNT("min_len", vocab.min_len),
      field("min_gap", [](const RunConfig& c) { return std::to_string(c.window.min_gap); },
            [](RunConfig& c, std::string_view v) { c.window.min_gap = parse_int(v); }),
      field("max_gap", [](const RunConfig& c) { return std::to_string(c.window.max_gap); },
            [](RunConfig& c, std::string_view v) { c.window.max_gap = parse_int(v); }),
      field("pair_sample_size",
            [](const RunConfig& c) { return c.pair_sample_size ? std::to_string(*c.pair_sample_size) : "all"; },
            [](RunConfig& c, std::string_view v) {
              if (v == "all") {
                c.pair_sample_size.reset();
              } else {
                c.pair_sample_size = to_count(v);
              }
            }),
      RHSA_COUNT("min_successors", min_successors),
      RHSA_COUNT("min_pair_count", min_pair_count),
      field("models",
            [](const RunConfig& c) {
              std::string s;
              for (const auto& m : c.models) s += (s.empty() ? "" : ",") + m.label();
              return s;
            },
            [](RunConfig& c, std::string_view v) {
              c.models.clear();
              for (const auto part : split(v, ',')) {
                const auto label = trim(part);
                if (!label.empty()) c.models.push_back(ModelConfig::parse(std::string(label)));
              }
            }),
      RHSA_TEXT("topic_source", topic_source),
      RHSA_TEXT("topic_file", topic_file),
      RHSA_REAL("gibbs_alpha", gibbs_alpha),
      RHSA_REAL("gibbs_beta", gibbs_beta),
      RHSA_COUNT("gibbs_iterations", gibbs_iterations),
      RHSA_COUNT("n_bins", n_bins),
      RHSA_COUNT("synth.n_topics", synth.n_topics),
      RHSA_COUNT("synth.docs_per_topic", synth.docs_per_topic),
      RHSA_COUNT("synth.n_sessions", synth.n_sessions),
      RHSA_COUNT("synth.session_len", synth.session_len),
      RHSA_REAL("synth.p_same_topic", synth.p_same_topic),
      RHSA_REAL("synth.popularity_exponent", synth.popularity_exponent),
      RHSA_REAL("synth.locality", synth.locality),
      RHSA_REAL("synth.gap_mean", synth.gap_mean),
      RHSA_REAL("synth.p_short_gap", synth.p_short_gap),
      RHSA_REAL("synth.p_long_gap", synth.p_long_gap),
      RHSA_COUNT("synth.doc_length", synth.doc_length),
      RHSA_COUNT("synth.words_per_topic", synth.words_per_topic),
      RHSA_COUNT("synth.background_words", synth.background_words),
      RHSA_REAL("synth.word_spread", synth.word_spread),
      RHSA_REAL("synth.topic_word_share", synth.topic_word_share),
      RHSA_REAL("synth.secondary_share", synth.secondary_share),
      RHSA_COUNT("synth.shared_words", synth.shared_words),
      RHSA_COUNT("synth.shared_per_topic", synth.shared_per_topic),
      RHSA_COUNT("synth.shared_stride", synth.shared_stride),
      RHSA_REAL("synth.shared_share", synth.shared_share),
  };
  return all;
}

#undef RHSA_COUNT
#undef RHSA_REAL
#undef RHSA_TEXT

}  // namespace

std::vector<ModelConfig> RunConfig::default_models() {
  return {ModelConfig::tfidf(50),         ModelConfig::tfidf(100),        ModelConfig::tfidf(500),
          ModelConfig::tfidf(std::nullopt), ModelConfig::topic_model(50), ModelConfig::topic_model(100),
          ModelConfig::topic_model(500)};
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, "config: " + what); };
  if (window.min_gap < 0 || window.min_gap >= window.max_gap) fail("need 0 <= min_gap < max_gap");
  if (vocab.min_len == 0) fail("min_len must be positive");
  if (pair_sample_size && *pair_sample_size == 0) fail("pair_sample_size must be positive or 'all'");
  if (models.empty()) fail("models must list at least one model");
  for (const auto& m : models) m.validate();
  if (topic_source != "gibbs" && topic_source != "file") fail("topic_source must be 'gibbs' or 'file'");
  if (gibbs_alpha < 0.0) fail("gibbs_alpha must be >= 0");
  if (!(gibbs_beta > 0.0)) fail("gibbs_beta must be positive");
  if (gibbs_iterations == 0) fail("gibbs_iterations must be positive");
  if (n_bins < 2) fail("n_bins must be at least 2");
  rhsa::validate(synth);
}

void set_config_value(RunConfig& config, std::string_view key, std::string_view value) {
  for (const auto& f : fields()) {
    if (f.name == key) {
      try {
        f.set(config, trim(value));
      } catch (const Error& e) {
        throw Error(e.kind(), "config key '" + std::string(key) + "': " + e.what());
      }
      return;
    }
  }
  throw Error(ErrorKind::Parse, "unknown config key '" + std::string(key) + "'");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(f.name);
  return keys;
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  for (const auto raw : split(text, '\n')) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Parse, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    auto value = trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '"') {
      const auto close = value.find('"', 1);
      const auto rest = close == std::string_view::npos ? value : trim(value.substr(close + 1));
      if (close == std::string_view::npos || !(rest.empty() || rest.front() == '#')) {
        throw Error(ErrorKind::Parse, "config line " + std::to_string(line_no) + ": unterminated quote");
      }
      value = value.substr(1, close - 1);
    } else if (const auto hash = value.find('#'); hash != std::string_view::npos) {
      value = trim(value.substr(0, hash));
    }
    try {
      set_config_value(config, trim(line.substr(0, eq)), value);
    } catch (const Error& e) {
      throw Error(e.kind(), "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

std::string render_config(const RunConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    auto value = f.get(config);
    if (value.find('#') != std::string::npos || trim(value) != value) value = '"' + value + '"';
    out += f.name + " = " + value + "\n";
  }
  return out;
}

}  // namespace rhsa
