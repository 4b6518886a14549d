#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rhsa/config.hpp"
#include "rhsa/error.hpp"
#include "rhsa/io.hpp"
#include "rhsa/pipeline.hpp"

namespace {

int report_error(const std::string& kind, const std::string& message) {
  nlohmann::ordered_json j{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rHSA: evaluate document similarity models from download logs"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Run config (key = value per line)");
  app.add_option("--seed", seed, "Root seed");
  app.add_option("--out", out, "Output directory");
  app.add_option("--set", overrides, "Override a config key: --set key=value")
      ->expected(1)
      ->take_all();

  auto* synth = app.add_subcommand("synth", "Generate a planted-topic corpus and download log");
  auto* mine = app.add_subcommand("mine", "Extract pairs and the query set from a download log");
  auto* vocab = app.add_subcommand("vocab", "Build and export the effective vocabulary");
  auto* train = app.add_subcommand("train-topics", "Train a topic model with collapsed Gibbs sampling");
  std::size_t topics = 0;
  train->add_option("--topics,-T", topics, "Number of topics")->required();
  auto* evaluate = app.add_subcommand("evaluate", "MAP, rHSA and correlations over the model grid");
  auto* rhsa = app.add_subcommand("rhsa", "rHSA of a single model");
  auto* map = app.add_subcommand("map", "MAP of a single model");
  std::string model_label;
  rhsa->add_option("--model", model_label, "Model, e.g. tfidf:50, tfidf:all, lda:20")->required();
  map->add_option("--model", model_label, "Model, e.g. tfidf:50, tfidf:all, lda:20")->required();
  auto* show = app.add_subcommand("config", "Print the effective config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what());
  }

  try {
    rhsa::RunConfig config = config_path.empty() ? rhsa::RunConfig{}
                                                 : rhsa::parse_config(rhsa::read_file(config_path));
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw rhsa::Error(rhsa::ErrorKind::InvalidArgument, "--set expects key=value, got '" + kv + "'");
      }
      rhsa::set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) config.seed = *seed;
    if (!out.empty()) config.out = out;
    config.validate();

    std::string summary;
    if (synth->parsed()) {
      summary = rhsa::cmd_synth(config);
    } else if (mine->parsed()) {
      summary = rhsa::cmd_mine(config);
    } else if (vocab->parsed()) {
      summary = rhsa::cmd_vocab(config);
    } else if (train->parsed()) {
      summary = rhsa::cmd_train_topics(config, topics);
    } else if (evaluate->parsed()) {
      summary = rhsa::cmd_evaluate(config);
    } else if (rhsa->parsed()) {
      summary = rhsa::cmd_rhsa(config, rhsa::ModelConfig::parse(model_label));
    } else if (map->parsed()) {
      summary = rhsa::cmd_map(config, rhsa::ModelConfig::parse(model_label));
    } else if (show->parsed()) {
      summary = rhsa::render_config(config);
    }
    std::cout << summary;
    return 0;
  } catch (const rhsa::Error& e) {
    return report_error(std::string(rhsa::to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
}
