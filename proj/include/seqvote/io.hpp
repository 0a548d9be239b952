#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqvote/axioms.hpp"
#include "seqvote/gen.hpp"
#include "seqvote/instance.hpp"
#include "seqvote/metrics.hpp"
#include "seqvote/rules.hpp"

namespace seqvote::io {

using Json = nlohmann::ordered_json;

// Instances and sequences

DecisionInstance instance_from_json(const Json& doc);
Json instance_to_json(const DecisionInstance& instance);
DecisionInstance read_instance(const std::filesystem::path& path);
/// Opens `path` for binary writing, creating missing parent directories.
std::ofstream open_output(const std::filesystem::path& path);

void write_instance(const std::filesystem::path& path, const DecisionInstance& instance);

/// A JSON integer array, or an object with "decisions" (indices) or "labels".
DecisionSequence sequence_from_json(const DecisionInstance& instance, const Json& doc);
DecisionSequence read_sequence(const DecisionInstance& instance, const std::filesystem::path& path);
/// Comma-separated labels, or indices when no label matches.
DecisionSequence parse_sequence_text(const DecisionInstance& instance, const std::string& text);

Json result_to_json(const DecisionInstance& instance, const RuleResult& result);
Json trace_to_json(const RuleTrace& trace);
Json report_to_json(const DecisionInstance& instance, const AxiomReport& report);

// Experiments

struct RuleSpec {
  std::string name;
  std::string label;
  MesConfig mes;
  PavOptions pav;
};

enum class GeneratorKind { Euclidean, Random };

struct ExperimentConfig {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::filesystem::path output;
  std::filesystem::path summary;
  std::optional<int> threads;

  GeneratorKind generator = GeneratorKind::Euclidean;
  EuclideanConfig euclidean;
  double p_approve = 0.5;  // random generator
  std::vector<RuleSpec> rules;
};

/// Relative output paths resolve against `base`.
ExperimentConfig parse_experiment(const std::string& toml_text, const std::filesystem::path& base = {});
ExperimentConfig read_experiment(const std::filesystem::path& path);

/// Instance of trial `trial`.
DecisionInstance trial_instance(const ExperimentConfig& config, std::size_t trial);
std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t trial);

/// Rows ordered by (rule as configured, trial ascending). Throws on the first failing (rule, trial).
std::vector<MetricsRow> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "rule,trial,avg_utility,p25_utility,gini";

std::string metrics_csv(const std::vector<MetricsRow>& rows);
/// Per rule label, per metric: median, p25, p75, mean.
Json metrics_summary(const std::vector<MetricsRow>& rows);

}  // namespace seqvote::io
