#include "rhsa/pipeline.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rhsa/error.hpp"
#include "rhsa/io.hpp"
#include "rhsa/rng.hpp"
#include "rhsa/topics.hpp"

namespace rhsa {
namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

std::vector<Document> load_corpus(const RunConfig& config) {
  auto in = open_input(config.corpus);
  auto docs = load_corpus_jsonl(in);
  if (docs.empty()) throw Error(ErrorKind::EmptyInput, "corpus " + config.corpus + " has no documents");
  return docs;
}

std::string curve_stem(const ModelConfig& model) { return family_name(model.family) + "_" + param_name(model); }

void write_curves(const fs::path& dir, const ModelConfig& model, const std::string& collection,
                  const RhsaAnalysis& analysis) {
  const auto stem = curve_stem(model) + "_" + collection;
  write_file_atomic(dir / (stem + ".csv"), curve_to_csv(analysis.curve));
  write_file_atomic(dir / (stem + ".json"), fit_to_json(analysis));
}

}  // namespace

fs::path topic_file_path(const RunConfig& config, std::size_t topics) {
  auto name = config.topic_file;
  const auto pos = name.find("{T}");
  if (pos != std::string::npos) name.replace(pos, 3, std::to_string(topics));
  const fs::path p(name);
  return p.is_absolute() ? p : fs::path(config.out) / p;
}

std::string cmd_synth(const RunConfig& config) {
  const auto docs = generate_synthetic_corpus(config.synth, derive_seed(config.seed, "synth/corpus"));
  const auto events = generate_synthetic_log(config.synth, derive_seed(config.seed, "synth/log"));
  const fs::path out(config.out);
  write_file_atomic(out / "corpus.jsonl", synthetic_corpus_to_jsonl(docs));
  write_file_atomic(out / "log.tsv", events_to_tsv(events));
  nlohmann::ordered_json j{{"docs", docs.size()}, {"events", events.size()}};
  return j.dump() + "\n";
}

std::string cmd_mine(const RunConfig& config) {
  auto in = open_input(config.log);
  const auto log = parse_log(in);
  const auto pairs = extract_consecutive_pairs(log.events, config.window);
  if (pairs.empty()) throw Error(ErrorKind::EmptyInput, "no consecutive pairs inside the time window");
  const auto n = config.pair_sample_size.value_or(pairs.size());
  const auto collection = build_pair_collection(pairs, n, derive_seed(config.seed, "mining/sample"),
                                                derive_seed(config.seed, "mining/random-pairs"));
  const auto queries = build_query_set(pairs, config.min_successors, config.min_pair_count);

  const fs::path out(config.out);
  write_file_atomic(out / "pairs.tsv", pairs_to_tsv(pairs));
  write_file_atomic(out / "pairs_consecutive.tsv", doc_pairs_to_tsv(collection.consecutive));
  write_file_atomic(out / "pairs_random.tsv", doc_pairs_to_tsv(collection.random));
  write_file_atomic(out / "queries.jsonl", query_set_to_jsonl(queries));

  std::size_t relevant = 0;
  for (const auto& q : queries.queries) relevant += q.relevant.size();
  nlohmann::ordered_json stats{{"events", log.events.size()},
                               {"skipped_lines", log.skipped_lines},
                               {"total_pairs", pairs.size()},
                               {"unique_docs", collection.unique_docs.size()},
                               {"sampled_pairs", collection.consecutive.size()},
                               {"random_pairs", collection.random.size()},
                               {"queries", queries.queries.size()},
                               {"relevant_pairs", relevant}};
  write_file_atomic(out / "mine_stats.json", stats.dump(2) + "\n");
  return stats.dump() + "\n";
}

std::string cmd_vocab(const RunConfig& config) {
  const auto docs = load_corpus(config);
  const auto vocab = build_vocabulary(docs, config.vocab);
  write_file_atomic(fs::path(config.out) / "vocab.tsv", vocab.to_tsv());
  nlohmann::ordered_json j{{"size", vocab.size()}, {"n_docs", vocab.n_docs()}};
  return j.dump() + "\n";
}

namespace {

TopicModelResult train_for(const RunConfig& config, std::span<const Document> docs, const Vocabulary& vocab,
                           std::size_t topics) {
  GibbsParams params;
  params.topics = topics;
  params.alpha = config.gibbs_alpha;
  params.beta = config.gibbs_beta;
  params.iterations = config.gibbs_iterations;
  params.seed = derive_seed(config.seed, "gibbs/" + std::to_string(topics));
  return train_topics_gibbs(docs, vocab, params);
}

}  // namespace

std::string cmd_train_topics(const RunConfig& config, std::size_t topics) {
  const auto docs = load_corpus(config);
  const auto vocab = build_vocabulary(docs, config.vocab);
  const auto result = train_for(config, docs, vocab, topics);
  const auto path = topic_file_path(config, topics);
  write_file_atomic(path, topic_distributions_to_tsv(result.thetas));
  nlohmann::ordered_json j{{"topics", topics},
                           {"docs", result.thetas.size()},
                           {"degenerate_docs", result.degenerate_docs},
                           {"path", path.string()}};
  return j.dump() + "\n";
}

EvalContext load_eval_context(const RunConfig& config) {
  auto docs = load_corpus(config);
  auto vocab = build_vocabulary(docs, config.vocab);
  EvalContext ctx{std::move(docs), std::move(vocab), {}, {}, {}, {}};

  std::set<std::string> known;
  for (const auto& d : ctx.corpus) known.insert(d.id);
  const fs::path dir(config.out);

  auto load_pairs = [&](const std::string& name) {
    auto in = open_input(dir / name);
    auto raw = parse_doc_pairs_tsv(in);
    std::vector<DocPair> kept;
    for (auto& p : raw) {
      if (known.count(p.first) && known.count(p.second)) kept.push_back(std::move(p));
    }
    if (kept.size() != raw.size()) {
      ctx.notes.push_back(name + ": dropped " + std::to_string(raw.size() - kept.size()) +
                          " pairs with documents missing from the corpus");
    }
    return kept;
  };
  ctx.pairs.consecutive = load_pairs("pairs_consecutive.tsv");
  ctx.pairs.random = load_pairs("pairs_random.tsv");

  auto qin = open_input(dir / "queries.jsonl");
  const auto raw_queries = parse_query_set_jsonl(qin);
  for (const auto& q : raw_queries.queries) {
    if (!known.count(q.id)) continue;
    Query kept{q.id, {}};
    for (const auto& d : q.relevant) {
      if (known.count(d)) kept.relevant.push_back(d);
    }
    if (!kept.relevant.empty()) ctx.queries.queries.push_back(std::move(kept));
  }
  if (ctx.queries.queries.size() != raw_queries.queries.size()) {
    ctx.notes.push_back("queries.jsonl: dropped " +
                        std::to_string(raw_queries.queries.size() - ctx.queries.queries.size()) +
                        " queries not covered by the corpus");
  }

  const std::vector<std::string> ids(known.begin(), known.end());
  ctx.query_pairs = build_query_set_pairs(ctx.queries, ids, derive_seed(config.seed, "evaluate/queryset-random"));
  return ctx;
}

ModelTables build_model(const RunConfig& config, const EvalContext& ctx, const ModelConfig& model) {
  if (model.family == Family::VectorSpace) return build_tfidf_tables(ctx.corpus, ctx.vocab, model.top_n);
  if (config.topic_source == "file") {
    auto in = open_input(topic_file_path(config, model.topics));
    const auto thetas = load_topic_distributions(in);
    for (const auto& t : thetas) {
      if (t.theta.size() != model.topics) {
        throw Error(ErrorKind::InvalidArgument, "topic file for T=" + std::to_string(model.topics) +
                                                    " has rows of dimension " + std::to_string(t.theta.size()));
      }
    }
    return build_topic_tables(thetas);
  }
  return build_topic_tables(train_for(config, ctx.corpus, ctx.vocab, model.topics).thetas);
}

EvalReport evaluate(const RunConfig& config, const EvalContext& ctx) {
  const EvalInputs inputs{&ctx.pairs, &ctx.queries, &ctx.query_pairs};
  auto report = compare_models(
      config.models, [&](const ModelConfig& m) { return build_model(config, ctx, m); }, inputs,
      EvalOptions{config.n_bins});
  report.notes.insert(report.notes.begin(), ctx.notes.begin(), ctx.notes.end());
  return report;
}

std::string cmd_evaluate(const RunConfig& config) {
  const auto ctx = load_eval_context(config);
  const auto report = evaluate(config, ctx);
  const fs::path out(config.out);
  write_file_atomic(out / "report.csv", report.rows_csv());
  write_file_atomic(out / "correlations.csv", report.correlations_csv());
  write_file_atomic(out / "report.json", report.to_json());
  std::size_t failed = 0;
  for (const auto& row : report.rows) {
    if (!row.error.empty()) ++failed;
    if (row.pairs_analysis) write_curves(out / "curves", row.config, "pairs", *row.pairs_analysis);
    if (row.queryset_analysis) write_curves(out / "curves", row.config, "queryset", *row.queryset_analysis);
  }
  nlohmann::ordered_json j{{"models", report.rows.size()},
                           {"failed", failed},
                           {"correlations", report.correlations.size()}};
  return j.dump() + "\n";
}

std::string cmd_rhsa(const RunConfig& config, const ModelConfig& model) {
  const auto ctx = load_eval_context(config);
  const auto tables = build_model(config, ctx, model);
  const fs::path curves = fs::path(config.out) / "curves";
  const auto pairs = rhsa_for_model(tables, ctx.pairs.consecutive, ctx.pairs.random, config.n_bins);
  write_curves(curves, model, "pairs", pairs);
  nlohmann::ordered_json j{{"model", model.label()}, {"rhsa_pairs", pairs.rhsa}};
  if (!ctx.query_pairs.relevant.empty()) {
    const auto qs = rhsa_for_model(tables, ctx.query_pairs.relevant, ctx.query_pairs.non_relevant, config.n_bins);
    write_curves(curves, model, "queryset", qs);
    j["rhsa_queryset"] = qs.rhsa;
  }
  return j.dump() + "\n";
}

std::string cmd_map(const RunConfig& config, const ModelConfig& model) {
  const auto ctx = load_eval_context(config);
  const auto result = map_for_model(build_model(config, ctx, model), ctx.queries);
  nlohmann::ordered_json j{{"model", model.label()},
                           {"map", result.map},
                           {"queries", result.average_precisions.size()},
                           {"notes", result.notes}};
  return j.dump() + "\n";
}

}  // namespace rhsa
