#include "rhsa/ireval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

#include "rhsa/error.hpp"
#include "rhsa/io.hpp"
#include "rhsa/rng.hpp"

namespace rhsa {

RankedList rank_collection(const std::string& query_id, const Representation& query,
                           const RepresentationTable& collection, Distance metric) {
  if (is_degenerate(query)) {
    throw Error(ErrorKind::Degenerate, "query '" + query_id + "' has a degenerate representation");
  }
  std::vector<std::pair<double, const std::string*>> scored;
  scored.reserve(collection.size());
  for (const auto& [id, rep] : collection) {
    if (id == query_id) continue;
    const double d = is_degenerate(rep) ? 1.0 : distance(query, rep, metric);
    scored.emplace_back(d, &id);
  }
  if (scored.empty()) throw Error(ErrorKind::EmptyInput, "nothing to rank for query '" + query_id + "'");
  // The table is ordered by id, so a stable sort breaks ties by id.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  RankedList list;
  list.query = query_id;
  list.ranked.reserve(scored.size());
  list.scores.reserve(scored.size());
  for (const auto& [d, id] : scored) {
    list.ranked.push_back(*id);
    list.scores.push_back(d);
  }
  return list;
}

double average_precision(const RankedList& ranked, std::span<const std::string> relevant) {
  if (relevant.empty()) throw Error(ErrorKind::EmptyInput, "average precision needs relevant documents");
  const std::set<std::string_view> rel(relevant.begin(), relevant.end());
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < ranked.ranked.size(); ++k) {
    if (rel.count(ranked.ranked[k])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  return sum / static_cast<double>(rel.size());
}

double map_score(std::span<const double> aps) {
  if (aps.empty()) throw Error(ErrorKind::EmptyInput, "MAP of no queries");
  return std::accumulate(aps.begin(), aps.end(), 0.0) / static_cast<double>(aps.size());
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::InvalidArgument, "pearson: length mismatch");
  if (xs.size() < 2) throw Error(ErrorKind::InvalidArgument, "pearson: need at least 2 points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorKind::Degenerate, "pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::InvalidArgument, "spearman: length mismatch");
  if (xs.size() < 2) throw Error(ErrorKind::InvalidArgument, "spearman: need at least 2 points");
  auto all_equal = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
  };
  if (all_equal(xs) || all_equal(ys)) throw Error(ErrorKind::Degenerate, "spearman: all-equal input");
  const auto rx = fractional_ranks(xs);
  const auto ry = fractional_ranks(ys);
  return pearson(rx, ry);
}

QuerySetPairs build_query_set_pairs(const QuerySet& queries, std::span<const std::string> collection,
                                    std::uint64_t seed) {
  Rng rng(seed);
  QuerySetPairs out;
  for (const auto& q : queries.queries) {
    const std::set<std::string_view> excluded = [&] {
      std::set<std::string_view> s(q.relevant.begin(), q.relevant.end());
      s.insert(q.id);
      return s;
    }();
    std::vector<const std::string*> candidates;
    for (const auto& id : collection) {
      if (!excluded.count(id)) candidates.push_back(&id);
    }
    for (const auto& d : q.relevant) out.relevant.emplace_back(q.id, d);
    const auto n = std::min(q.relevant.size(), candidates.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = i + rng.index(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
      out.non_relevant.emplace_back(q.id, *candidates[i]);
    }
  }
  return out;
}

namespace {

void note_skipped(const ScoredPairs& scored, const std::string& what, std::vector<std::string>* notes) {
  if (!notes || scored.skipped.empty()) return;
  notes->push_back(what + ": skipped " + std::to_string(scored.skipped.size()) +
                   " pairs with degenerate representations, first " + scored.skipped.front());
}

RhsaAnalysis degenerate_analysis() {
  RhsaAnalysis a;
  a.rhsa = 0.0;
  return a;
}

}  // namespace

RhsaAnalysis rhsa_for_model(const ModelTables& model, std::span<const DocPair> consecutive,
                            std::span<const DocPair> random, std::size_t n_bins,
                            std::vector<std::string>* notes) {
  const auto c = score_pairs(consecutive, model);
  const auto r = score_pairs(random, model);
  note_skipped(c, "consecutive pairs", notes);
  note_skipped(r, "random pairs", notes);
  if (c.values.empty() || r.values.empty()) {
    throw Error(ErrorKind::EmptyInput, "rHSA needs scored pairs in both sets");
  }
  if (model.metric == Distance::JsDivergence) {
    return analyze_rhsa(c.values, r.values, n_bins, 0.0, 1.0);
  }

  std::vector<double> combined = c.values;
  combined.insert(combined.end(), r.values.begin(), r.values.end());
  std::vector<double> normalized;
  try {
    normalized = normalize_cosine(combined);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Degenerate) throw;
    if (notes) notes->push_back(std::string("normalized cosine: ") + e.what() + ", rHSA set to 0");
    return degenerate_analysis();
  }
  const auto split_at = normalized.begin() + static_cast<std::ptrdiff_t>(c.values.size());
  const std::vector<double> nc(normalized.begin(), split_at);
  const std::vector<double> nr(split_at, normalized.end());
  const auto [lo, hi] = std::minmax_element(normalized.begin(), normalized.end());
  return analyze_rhsa(nc, nr, n_bins, *lo, *hi);
}

MapResult map_for_model(const ModelTables& model, const QuerySet& queries) {
  MapResult result;
  for (const auto& q : queries.queries) {
    const auto it = model.queries.find(q.id);
    if (it == model.queries.end()) throw Error(ErrorKind::Missing, "no representation for query '" + q.id + "'");
    if (is_degenerate(it->second)) {
      result.notes.push_back("query '" + q.id + "' skipped: degenerate representation");
      continue;
    }
    const auto ranked = rank_collection(q.id, it->second, model.docs, model.metric);
    result.average_precisions.push_back(average_precision(ranked, q.relevant));
  }
  result.map = map_score(result.average_precisions);
  return result;
}

EvalReport compare_models(std::span<const ModelConfig> configs, const ModelBuilder& build,
                          const EvalInputs& inputs, const EvalOptions& options) {
  if (!inputs.pairs || !inputs.queries || !inputs.query_pairs) {
    throw Error(ErrorKind::InvalidArgument, "compare_models: missing evaluation inputs");
  }
  EvalReport report;
  for (const auto& config : configs) {
    EvalRow row;
    row.config = config;
    auto fail = [&](const std::string& stage, const std::exception& e) {
      if (!row.error.empty()) row.error += "; ";
      row.error += stage + ": " + e.what();
    };
    std::optional<ModelTables> model;
    try {
      model = build(config);
    } catch (const std::exception& e) {
      fail("build", e);
    }
    if (model) {
      try {
        auto m = map_for_model(*model, *inputs.queries);
        row.map = m.map;
        row.notes.insert(row.notes.end(), m.notes.begin(), m.notes.end());
      } catch (const std::exception& e) {
        fail("map", e);
      }
      try {
        auto a = rhsa_for_model(*model, inputs.query_pairs->relevant, inputs.query_pairs->non_relevant,
                                options.n_bins, &row.notes);
        row.rhsa_queryset = a.rhsa;
        row.queryset_analysis = std::move(a);
      } catch (const std::exception& e) {
        fail("rhsa_queryset", e);
      }
      try {
        auto a = rhsa_for_model(*model, inputs.pairs->consecutive, inputs.pairs->random, options.n_bins,
                                &row.notes);
        row.rhsa_pairs = a.rhsa;
        row.pairs_analysis = std::move(a);
      } catch (const std::exception& e) {
        fail("rhsa_pairs", e);
      }
    }
    report.rows.push_back(std::move(row));
  }

  for (const auto family : {Family::VectorSpace, Family::TopicSpace}) {
    for (const std::string collection : {"queryset", "pairs"}) {
      std::vector<double> maps, scores;
      for (const auto& row : report.rows) {
        const auto& r = collection == "queryset" ? row.rhsa_queryset : row.rhsa_pairs;
        if (row.config.family != family || !row.map || !r) continue;
        maps.push_back(*row.map);
        scores.push_back(*r);
      }
      if (maps.size() < 2) continue;
      const auto tag = family_name(family) + "/" + collection;
      try {
        report.correlations.push_back({family, collection, maps.size(), pearson(scores, maps),
                                       spearman(scores, maps)});
      } catch (const Error& e) {
        report.notes.push_back(tag + " correlation undefined: " + e.what());
      }
    }
  }
  return report;
}

namespace {

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json fit_json(const std::optional<RhsaAnalysis>& a) {
  if (!a) return nullptr;
  return nlohmann::ordered_json::parse(fit_to_json(*a));
}

}  // namespace

std::string EvalReport::rows_csv() const {
  std::string out = "model,param,map,rhsa_queryset,rhsa_pairs\n";
  for (const auto& row : rows) {
    out += family_name(row.config.family) + ',' + param_name(row.config) + ',' + opt_real(row.map) + ',' +
           opt_real(row.rhsa_queryset) + ',' + opt_real(row.rhsa_pairs) + '\n';
  }
  return out;
}

std::string EvalReport::correlations_csv() const {
  std::string out = "family,collection,pearson,spearman\n";
  for (const auto& c : correlations) {
    out += family_name(c.family) + ',' + c.collection + ',' + format_real(c.pearson) + ',' +
           format_real(c.spearman) + '\n';
  }
  return out;
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    r["model"] = family_name(row.config.family);
    r["param"] = param_name(row.config);
    r["map"] = opt_json(row.map);
    r["rhsa_queryset"] = opt_json(row.rhsa_queryset);
    r["rhsa_pairs"] = opt_json(row.rhsa_pairs);
    r["fit_queryset"] = fit_json(row.queryset_analysis);
    r["fit_pairs"] = fit_json(row.pairs_analysis);
    r["error"] = row.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.error);
    r["notes"] = row.notes;
    j["rows"].push_back(std::move(r));
  }
  j["correlations"] = nlohmann::ordered_json::array();
  for (const auto& c : correlations) {
    j["correlations"].push_back({{"family", family_name(c.family)},
                                 {"collection", c.collection},
                                 {"n_models", c.n_models},
                                 {"pearson", c.pearson},
                                 {"spearman", c.spearman}});
  }
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

}  // namespace rhsa
