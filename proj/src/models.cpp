#include "rhsa/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rhsa/error.hpp"
#include "rhsa/io.hpp"

namespace rhsa {

ModelConfig ModelConfig::tfidf(std::optional<std::size_t> top_n) {
  ModelConfig c;
  c.family = Family::VectorSpace;
  c.top_n = top_n;
  c.validate();
  return c;
}

ModelConfig ModelConfig::topic_model(std::size_t topics) {
  ModelConfig c;
  c.family = Family::TopicSpace;
  c.topics = topics;
  c.validate();
  return c;
}

void ModelConfig::validate() const {
  if (family == Family::VectorSpace && top_n && *top_n == 0) {
    throw Error(ErrorKind::InvalidArgument, "tf-idf top_n must be >= 1 or 'all'");
  }
  if (family == Family::TopicSpace && topics < 2) {
    throw Error(ErrorKind::InvalidArgument, "topic models need at least 2 topics");
  }
}

std::string family_name(Family family) {
  return family == Family::VectorSpace ? "tfidf" : "lda";
}

std::string param_name(const ModelConfig& config) {
  if (config.family == Family::TopicSpace) return std::to_string(config.topics);
  return config.top_n ? std::to_string(*config.top_n) : "all";
}

std::string ModelConfig::label() const { return family_name(family) + ":" + param_name(*this); }

ModelConfig ModelConfig::parse(const std::string& label) {
  const auto colon = label.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::Parse, "model '" + label + "': expected family:parameter");
  }
  const auto family = label.substr(0, colon);
  const auto param = label.substr(colon + 1);
  try {
    if (family == "tfidf") {
      if (param == "all") return tfidf(std::nullopt);
      const auto n = parse_int(param);
      if (n < 1) throw Error(ErrorKind::InvalidArgument, "tf-idf top_n must be >= 1 or 'all'");
      return tfidf(static_cast<std::size_t>(n));
    }
    if (family == "lda") {
      const auto t = parse_int(param);
      if (t < 2) throw Error(ErrorKind::InvalidArgument, "topic models need at least 2 topics");
      return topic_model(static_cast<std::size_t>(t));
    }
  } catch (const Error& e) {
    throw Error(e.kind(), "model '" + label + "': " + e.what());
  }
  throw Error(ErrorKind::Parse, "model '" + label + "': unknown family '" + family + "'");
}

TfIdfVector truncate_top_n(const TfIdfVector& vec, std::optional<std::size_t> top_n) {
  if (!top_n || *top_n >= vec.entries.size()) return vec;
  TfIdfVector out;
  out.source_doc = vec.source_doc;
  out.entries = vec.entries;
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  out.entries.resize(*top_n);
  std::sort(out.entries.begin(), out.entries.end());
  return out;
}

TfIdfVector represent_query_tfidf(const Document& doc, const Vocabulary& vocab,
                                  std::optional<std::size_t> top_n) {
  return truncate_top_n(doc_tfidf(doc, vocab), top_n);
}

double cosine_distance(const TfIdfVector& a, const TfIdfVector& b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorKind::Degenerate, "cosine distance of a zero vector ('" +
                                           (a.empty() ? a.source_doc : b.source_doc) + "')");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [i, w] : a.entries) na += w * w;
  for (const auto& [i, w] : b.entries) nb += w * w;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  const double d = 1.0 - dot / std::sqrt(na * nb);
  return std::clamp(d, 0.0, 1.0);
}

std::vector<double> normalize_cosine(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "normalize_cosine: no values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw Error(ErrorKind::Degenerate, "normalize_cosine: zero range");
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [range](double v) { return v / range; });
  return out;
}

double js_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::InvalidArgument, "js_divergence: dimension mismatch (" +
                                                std::to_string(p.size()) + " vs " +
                                                std::to_string(q.size()) + ")");
  }
  auto half_kl = [](double a, double b) { return a > 0.0 ? a * std::log2(2.0 * a / (a + b)) : 0.0; };
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += half_kl(p[i], q[i]) + half_kl(q[i], p[i]);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double js_divergence(const TopicDistribution& p, const TopicDistribution& q) {
  return js_divergence(std::span<const double>(p.theta), std::span<const double>(q.theta));
}

bool is_degenerate(const Representation& rep) {
  if (const auto* v = std::get_if<TfIdfVector>(&rep)) return v->empty();
  return std::get<TopicDistribution>(rep).theta.empty();
}

double distance(const Representation& a, const Representation& b, Distance metric) {
  if (metric == Distance::Cosine) {
    const auto* va = std::get_if<TfIdfVector>(&a);
    const auto* vb = std::get_if<TfIdfVector>(&b);
    if (!va || !vb) throw Error(ErrorKind::InvalidArgument, "cosine distance needs tf-idf vectors");
    return cosine_distance(*va, *vb);
  }
  const auto* pa = std::get_if<TopicDistribution>(&a);
  const auto* pb = std::get_if<TopicDistribution>(&b);
  if (!pa || !pb) throw Error(ErrorKind::InvalidArgument, "JS divergence needs topic distributions");
  return js_divergence(*pa, *pb);
}

ScoredPairs score_pairs(std::span<const DocPair> pairs, const ModelTables& model) {
  auto lookup = [](const RepresentationTable& table, const std::string& id) -> const Representation& {
    const auto it = table.find(id);
    if (it == table.end()) throw Error(ErrorKind::Missing, "no representation for document '" + id + "'");
    return it->second;
  };
  ScoredPairs out;
  out.values.reserve(pairs.size());
  out.kept.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [first, second] = pairs[i];
    const auto& a = lookup(model.queries, first);
    const auto& b = lookup(model.docs, second);
    if (is_degenerate(a) || is_degenerate(b)) {
      out.skipped.push_back("pair " + std::to_string(i) + " (" + first + ", " + second +
                            "): degenerate representation of '" +
                            (is_degenerate(a) ? first : second) + "'");
      continue;
    }
    out.values.push_back(distance(a, b, model.metric));
    out.kept.push_back(i);
  }
  return out;
}

ModelTables build_tfidf_tables(std::span<const Document> corpus, const Vocabulary& vocab,
                               std::optional<std::size_t> top_n) {
  ModelTables tables;
  tables.metric = Distance::Cosine;
  for (const auto& doc : corpus) {
    auto full = doc_tfidf(doc, vocab);
    tables.queries.emplace(doc.id, truncate_top_n(full, top_n));
    tables.docs.emplace(doc.id, std::move(full));
  }
  return tables;
}

ModelTables build_topic_tables(std::span<const TopicDistribution> thetas) {
  ModelTables tables;
  tables.metric = Distance::JsDivergence;
  for (const auto& t : thetas) {
    tables.queries.emplace(t.source_doc, t);
    tables.docs.emplace(t.source_doc, t);
  }
  return tables;
}

std::string tfidf_to_tsv(std::span<const TfIdfVector> vectors) {
  std::ostringstream out;
  for (const auto& v : vectors) {
    out << v.source_doc;
    for (std::size_t k = 0; k < v.entries.size(); ++k) {
      out << (k == 0 ? '\t' : ' ') << v.entries[k].first << ':' << format_real(v.entries[k].second);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rhsa
