#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imbalmed/balance.hpp"
#include "imbalmed/config.hpp"
#include "imbalmed/dataset.hpp"
#include "imbalmed/error.hpp"
#include "imbalmed/report.hpp"
#include "imbalmed/synth.hpp"

namespace imbalmed::cli {

enum ExitCode : int { kOk = 0, kIoOrParse = 1, kInvalidParameters = 2, kExperimentFailure = 3 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io:
    case ErrorCode::parse:
    case ErrorCode::malformed_row:
    case ErrorCode::duplicate_sample_id:
    case ErrorCode::no_data_rows:
    case ErrorCode::missing_label_column:
    case ErrorCode::empty_intersection:
      return kIoOrParse;
    case ErrorCode::invalid_argument:
      return kInvalidParameters;
    default:
      return kExperimentFailure;
  }
}

struct ExperimentFlags {
  std::string config;
  std::string out;
  std::string fold_csv;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::optional<std::string> metric;
  std::optional<double> r;
  std::optional<std::size_t> folds;
};

inline std::string format_fixed(double v, int decimals = 2) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string format_g(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline int cmd_enumerate(std::size_t classes, double r, std::ostream& out) {
  require(classes >= 2, ErrorCode::invalid_argument, "--classes must be at least 2");
  const auto vectors = enumerate_representativeness(classes, r);
  csv::Row header{"j"};
  for (std::size_t k = 1; k <= classes; ++k) header.push_back("w_" + std::to_string(k));
  for (std::size_t k = 1; k <= classes; ++k) header.push_back("b_" + std::to_string(k));
  csv::write_record(out, header);
  for (const auto& v : vectors) {
    csv::Row row{std::to_string(v.index + 1)};
    for (int w : v.weights) row.push_back(std::to_string(w));
    for (double b : v.fractions) row.push_back(format_g(b));
    csv::write_record(out, row);
  }
  return kOk;
}

inline std::string selection_summary(const std::vector<FoldResult>& folds) {
  std::map<std::string, std::size_t> counts;
  for (const auto& f : folds) ++counts[f.selected];
  std::string out;
  for (const auto& [tag, n] : counts) out += (out.empty() ? "" : ", ") + tag + " x" + std::to_string(n);
  return out;
}

inline void print_summary(const ExperimentConfig& cfg, const ReportDocument& doc, const MultimodalDataset& ds,
                          std::ostream& out) {
  out << "task " << cfg.task << ": " << ds.size() << " samples, " << ds.modality_count() << " modalities, classes";
  const auto counts = class_counts(ds.labels(), ds.class_count());
  for (std::size_t k = 0; k < ds.class_count(); ++k) {
    out << (k ? ", " : " ") << ds.label_space().name(static_cast<ClassIndex>(k)) << "=" << counts[k];
  }
  out << "\nr=" << format_g(doc.r) << " (" << doc.subsets << " subsets), " << cfg.folds << " folds, metric "
      << variant_name(cfg.metric) << "\n\n";

  char line[256];
  std::snprintf(line, sizeof line, "%-22s %8s %8s  %s\n", "method", "G-mean", "std", "selected classifiers");
  out << line;
  for (const auto& m : doc.methods) {
    const MethodSummary s = summarize(m.folds);
    std::snprintf(line, sizeof line, "%-22s %8s %8s  ", std::string(mode_name(m.mode)).c_str(),
                  format_fixed(s.mean).c_str(), format_fixed(s.std).c_str());
    out << line << selection_summary(m.folds) << "\n";
  }
  if (doc.comparison) {
    const auto& c = *doc.comparison;
    out << "\npaired t-test: t=" << format_fixed(c.ttest.t, 4) << " p=" << format_g(c.ttest.p, 4)
        << "  W-T-L " << format_g(c.wtl.win) << "-" << format_g(c.wtl.tie) << "-" << format_g(c.wtl.loss) << " ("
        << c.annotation << ")\n";
  }
}

/// Loads the config, runs it and writes the report. `force_compare` runs
/// both modes regardless of the config's mode list.
inline int cmd_experiment(const ExperimentFlags& flags, bool force_compare, std::ostream& out, std::ostream& err) {
  const char* stage = "config";
  try {
    ExperimentConfig cfg = load_config(flags.config);
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.metric) cfg.metric = parse_variant(*flags.metric);
    if (flags.r) cfg.r = *flags.r;
    if (flags.folds) cfg.folds = *flags.folds;
    if (!flags.out.empty()) cfg.output = flags.out;
    if (!flags.fold_csv.empty()) cfg.fold_csv = flags.fold_csv;
    if (force_compare) cfg.modes = {EnsembleMode::imbalmed, EnsembleMode::unbalanced_baseline};
    cfg.validate();
    require(!cfg.output.empty(), ErrorCode::invalid_argument, "no output path; set 'output' or pass --out");
    require(flags.threads >= 1, ErrorCode::invalid_argument, "--threads must be at least 1");

    stage = "load";
    const MultimodalDataset ds = load_dataset(cfg);

    stage = "experiment";
    const ReportDocument doc = run_experiment(cfg, ds, flags.threads);

    stage = "report";
    const std::string output = cfg.output;
    write_text_file(output, render(doc));
    if (!cfg.fold_csv.empty()) {
      std::ostringstream table;
      write_fold_csv(doc, table);
      write_text_file(cfg.fold_csv, table.str());
    }
    print_summary(cfg, doc, ds, out);
    out << "\nreport written to " << output << "\n";
    return kOk;
  } catch (const Error& e) {
    err << "imbalmed: " << stage << " failed: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

inline int cmd_gen_synth(const std::string& preset_name, const std::string& config_path,
                         std::optional<std::uint64_t> seed, const std::string& out_dir, std::ostream& out,
                         std::ostream& err) {
  const char* stage = "config";
  try {
    synth::SynthConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw Error(ErrorCode::io, "cannot open synth config '" + config_path + "'");
      try {
        cfg = synth::config_from_json(nlohmann::json::parse(in));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, "synth config '" + config_path + "': " + e.what());
      }
    } else {
      cfg = synth::preset(preset_name);
    }
    if (seed) cfg.seed = *seed;
    for (const auto& m : cfg.modalities) {
      require(m.name != "labels", ErrorCode::invalid_argument, "a modality may not be named 'labels'");
    }

    stage = "generate";
    const MultimodalDataset ds = synth::generate(cfg);

    stage = "write";
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create '" + out_dir + "': " + ec.message());
    const std::filesystem::path dir(out_dir);
    for (const auto& table : ds.modalities()) {
      const std::string path = (dir / (table.name() + ".csv")).string();
      write_modality_csv(table, path);
      out << path << "\n";
    }
    const std::string labels = (dir / "labels.csv").string();
    write_labels_csv(ds, labels);
    out << labels << "\n";
    return kOk;
  } catch (const Error& e) {
    err << "imbalmed: gen-synth " << stage << " failed: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

inline void add_experiment_flags(CLI::App& cmd, ExperimentFlags& flags) {
  cmd.add_option("--config", flags.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  cmd.add_option("--out", flags.out, "Report path (overrides 'output')");
  cmd.add_option("--fold-csv", flags.fold_csv, "Also write per-fold G-means as CSV");
  cmd.add_option("--seed", flags.seed, "RNG seed (overrides 'seed')");
  cmd.add_option("--threads", flags.threads, "Worker threads; output does not depend on it")->capture_default_str();
  cmd.add_option("--metric", flags.metric, "G-mean variant")
      ->check(CLI::IsMember({"recall-geomean", "paper-literal"}));
  cmd.add_option("--r", flags.r, "Representativeness granularity (overrides 'r')");
  cmd.add_option("--folds", flags.folds, "Cross-validation folds (overrides 'folds')");
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Multimodal imbalanced classification with representativeness-enumerated undersampling"};
  app.name("imbalmed");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::size_t classes = 2;
  double r = 0.1;
  auto* enumerate = app.add_subcommand("enumerate", "Print every representativeness vector as CSV");
  enumerate->add_option("--classes", classes, "Number of classes")->required();
  enumerate->add_option("--r", r, "Granularity r in (0, 1)")->required();

  ExperimentFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Run the configured modes and write a report");
  add_experiment_flags(*run_cmd, run_flags);

  ExperimentFlags compare_flags;
  auto* compare = app.add_subcommand("compare", "Compare IMBALMED with the unbalanced baseline on shared folds");
  add_experiment_flags(*compare, compare_flags);

  std::string preset = "binary";
  std::string synth_config;
  std::optional<std::uint64_t> synth_seed;
  std::string synth_out;
  auto* gen = app.add_subcommand("gen-synth", "Write a synthetic multimodal dataset as CSV files");
  auto* preset_opt = gen->add_option("--preset", preset, "binary, ternary or adni12m")->capture_default_str();
  gen->add_option("--config", synth_config, "Synthetic dataset config (JSON)")
      ->check(CLI::ExistingFile)
      ->excludes(preset_opt);
  gen->add_option("--seed", synth_seed, "RNG seed (overrides the config)");
  gen->add_option("--out", synth_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidParameters;
  }

  try {
    if (*enumerate) return cmd_enumerate(classes, r, out);
    if (*run_cmd) return cmd_experiment(run_flags, false, out, err);
    if (*compare) return cmd_experiment(compare_flags, true, out, err);
    if (*gen) return cmd_gen_synth(preset, synth_config, synth_seed, synth_out, out, err);
  } catch (const Error& e) {
    err << "imbalmed: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "imbalmed: internal error: " << e.what() << "\n";
    return kExperimentFailure;
  }
  return kInvalidParameters;
}

}  // namespace imbalmed::cli
