// techmap: batch pipeline and query front end. Stage subcommands rerun one
// pipeline stage against a run directory, `run` executes a stage subset in
// order, `query`/`map query`/`map inverse` answer questions from persisted
// artifacts (exit 0 on a hit, 1 on an empty answer), `temporal *` print
// ad-hoc analytics to stdout, and `eval *` compute evaluation metrics.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "techmap/diagnostics.hpp"
#include "techmap/evalkit.hpp"
#include "techmap/jsonl.hpp"
#include "techmap/pipeline.hpp"
#include "techmap/temporal.hpp"
#include "techmap/wordlists.hpp"

namespace {

namespace pipeline = techmap::pipeline;
namespace temporal = techmap::temporal;
namespace evalkit = techmap::evalkit;
using techmap::FatalError;
using pipeline::Stage;

// Every overridable setting funnels through pipeline::apply_setting, so the
// config file and the command line share one parser; flags win because they
// are applied after the file.
struct Overrides {
  std::string config_file;
  std::map<std::string, std::string> values;
};

pipeline::PipelineConfig assemble(const Overrides& overrides) {
  pipeline::PipelineConfig cfg;
  if (!overrides.config_file.empty()) cfg = pipeline::load_config(overrides.config_file);
  for (const auto& [key, value] : overrides.values) pipeline::apply_setting(cfg, key, value);
  return cfg;
}

void add_setting(CLI::App* cmd, Overrides& overrides, const std::string& flag,
                 const std::string& key, const std::string& desc) {
  cmd->add_option_function<std::string>(
      flag, [&overrides, key](const std::string& value) { overrides.values[key] = value; },
      desc);
}

void add_bool_setting(CLI::App* cmd, Overrides& overrides, const std::string& flag,
                      const std::string& key, const std::string& desc) {
  cmd->add_flag_callback(
      flag, [&overrides, key] { overrides.values[key] = "true"; }, desc);
}

void add_common(CLI::App* cmd, Overrides& overrides) {
  cmd->add_option("--config", overrides.config_file,
                  "flat key=value settings file; command-line flags win");
  add_setting(cmd, overrides, "--run-dir", "run_dir", "run directory holding stage artifacts");
  add_setting(cmd, overrides, "--jobs", "jobs", "worker cap for parallel kernels");
}

void add_ingest_settings(CLI::App* cmd, Overrides& o) {
  add_setting(cmd, o, "--corpus", "corpus_dir",
              "corpus directory with metadata.tsv, texts/ and citations.tsv");
}

void add_areas_settings(CLI::App* cmd, Overrides& o) {
  add_setting(cmd, o, "--scheme", "scheme", "ranking scheme: 1, 2 or 3");
  add_setting(cmd, o, "--thresholds", "score_thresholds",
              "scheme-3 score thresholds t2,t3,t4,t5");
  add_setting(cmd, o, "--count-thresholds", "count_thresholds",
              "scheme-3 count thresholds c2,c3,c4,c5 (used when no score thresholds)");
  add_bool_setting(cmd, o, "--per-k-normalize", "per_k_normalize",
                   "normalize k-gram scores within each order k");
  add_setting(cmd, o, "--rounds", "rounds", "bootstrapping rounds");
  add_setting(cmd, o, "--min-support", "min_support", "anchor k-gram count gate");
  add_setting(cmd, o, "--min-keyword-support", "min_keyword_support",
              "distinct titles backing a learned keyword");
  add_setting(cmd, o, "--seed-keywords", "seed_keywords",
              "seed functional-keyword file (word<TAB>side)");
  add_setting(cmd, o, "--stopwords", "stopwords", "stopword list override");
  add_setting(cmd, o, "--pos-lexicon", "pos_lexicon", "POS lexicon override (word<TAB>tag)");
}

void add_classify_settings(CLI::App* cmd, Overrides& o) {
  add_setting(cmd, o, "--lambda", "lambda", "collection weight of the smoothed language model");
}

void add_methods_settings(CLI::App* cmd, Overrides& o) {
  add_setting(cmd, o, "--citation-patterns", "citation_patterns",
              "citation mention regex file override");
  add_setting(cmd, o, "--method-keywords", "method_keywords",
              "method section heading keyword file override");
}

void add_techniques_settings(CLI::App* cmd, Overrides& o) {
  add_setting(cmd, o, "--k1", "k1", "minimum citation count for a method paper");
  add_setting(cmd, o, "--k2", "k2", "minimum method-section citation fraction");
  add_setting(cmd, o, "--top-k", "top_k", "techniques retained per method paper");
  add_setting(cmd, o, "--stop-phrases", "stop_phrases", "technique stop-phrase file override");
  add_bool_setting(cmd, o, "--global-all-method-contexts", "all_method_contexts",
                   "count every method-section context in the global vector");
}

void add_map_settings(CLI::App* cmd, Overrides& o) {
  add_bool_setting(cmd, o, "--mention-granularity", "mention_granularity",
                   "count one per citing mention instead of one per paper");
}

void add_temporal_settings(CLI::App* cmd, Overrides& o) {
  add_setting(cmd, o, "--from", "from", "first year of the bucketed window");
  add_setting(cmd, o, "--to", "to", "last year of the bucketed window");
  add_setting(cmd, o, "--width", "width", "bucket width in years");
  add_setting(cmd, o, "--areas", "areas", "comma-separated area list for the share series");
  add_setting(cmd, o, "--weight", "venue_weight", "venue ranking weight: papers or citations");
  add_bool_setting(cmd, o, "--within-window", "within_window",
                   "count only citations from papers inside the same bucket");
  add_setting(cmd, o, "--top", "venue_top", "areas kept per venue bucket");
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::size_t end = comma == std::string::npos ? value.size() : comma;
    std::string item = value.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

long long parse_count(const std::string& what, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw FatalError(what + ": expected an integer, got \"" + value + "\"");
  }
}

std::string format_number(double value) { return techmap::jsonl::json(value).dump(); }

void run_one_stage(const Overrides& overrides, Stage stage) {
  const pipeline::PipelineConfig cfg = assemble(overrides);
  pipeline::validate(cfg);
  pipeline::write_run_record(cfg);
  pipeline::RunReport report;
  report.stages.push_back(pipeline::run_stage(cfg, stage));
  std::cout << pipeline::format_report(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"techmap: map application areas to the techniques their papers borrow"};
  app.require_subcommand(1);

  Overrides overrides;
  int exit_code = 0;
  const auto print_answer = [&exit_code](const std::vector<std::string>& lines) {
    for (const auto& line : lines) std::cout << line << "\n";
    exit_code = lines.empty() ? 1 : 0;
  };

  // --- plain stage subcommands -------------------------------------------
  const struct {
    const char* name;
    Stage stage;
    const char* desc;
    void (*extra)(CLI::App*, Overrides&);
  } stage_commands[] = {
      {"ingest", Stage::Ingest, "load and normalize the corpus directory", add_ingest_settings},
      {"areas", Stage::Areas, "build the ranked application-area lexicon", add_areas_settings},
      {"classify", Stage::Classify, "assign every paper to an area", add_classify_settings},
      {"methods", Stage::Methods, "extract citation contexts and citation statistics",
       add_methods_settings},
      {"techniques", Stage::Techniques, "detect method papers and rank their techniques",
       add_techniques_settings},
  };
  for (const auto& sc : stage_commands) {
    CLI::App* cmd = app.add_subcommand(sc.name, sc.desc);
    add_common(cmd, overrides);
    sc.extra(cmd, overrides);
    const Stage stage = sc.stage;
    cmd->callback([&overrides, stage] { run_one_stage(overrides, stage); });
  }

  // --- map: build (default), query, inverse ------------------------------
  CLI::App* map_cmd = app.add_subcommand("map", "area-technique mapping table");
  add_common(map_cmd, overrides);
  add_map_settings(map_cmd, overrides);
  map_cmd->require_subcommand(0, 1);
  CLI::App* map_build = map_cmd->add_subcommand("build", "build the mapping artifacts");
  map_build->fallthrough();
  std::string map_area;
  std::size_t map_top = 10;
  CLI::App* map_query = map_cmd->add_subcommand("query", "top techniques of an area");
  map_query->fallthrough();
  map_query->add_option("--area", map_area, "application area to look up")->required();
  map_query->add_option("--top", map_top, "techniques to print")->capture_default_str();
  std::string map_technique;
  CLI::App* map_inverse = map_cmd->add_subcommand("inverse", "areas that use a technique");
  map_inverse->fallthrough();
  map_inverse->add_option("--technique", map_technique, "technique phrase to look up")
      ->required();
  map_cmd->callback([&] {
    if (map_query->parsed()) {
      const pipeline::PipelineConfig cfg = assemble(overrides);
      pipeline::validate(cfg);
      print_answer(
          pipeline::query_techniques_of_area(pipeline::RunPaths(cfg.run_dir), map_area, map_top));
    } else if (map_inverse->parsed()) {
      const pipeline::PipelineConfig cfg = assemble(overrides);
      pipeline::validate(cfg);
      print_answer(
          pipeline::query_areas_of_technique(pipeline::RunPaths(cfg.run_dir), map_technique));
    } else {
      run_one_stage(overrides, Stage::Map);
    }
  });

  // --- temporal: stage mode plus stdout analytics ------------------------
  CLI::App* temporal_cmd = app.add_subcommand("temporal", "time-bucketed analytics");
  add_common(temporal_cmd, overrides);
  add_temporal_settings(temporal_cmd, overrides);
  temporal_cmd->require_subcommand(0, 1);
  CLI::App* temporal_areas = temporal_cmd->add_subcommand(
      "areas", "print per-bucket area shares as CSV (bucket, area, share)");
  temporal_areas->fallthrough();
  CLI::App* temporal_techniques = temporal_cmd->add_subcommand(
      "techniques", "print per-bucket technique counts of one area as JSON lines");
  temporal_techniques->fallthrough();
  std::string evolution_area;
  temporal_techniques->add_option("--area", evolution_area, "area whose techniques to trace")
      ->required();
  CLI::App* temporal_venues = temporal_cmd->add_subcommand(
      "venues", "print per-bucket top areas of a venue as JSON lines");
  temporal_venues->fallthrough();
  std::string venue_name;
  temporal_venues->add_option("--venue", venue_name, "venue to profile")->required();
  temporal_cmd->callback([&] {
    if (!temporal_areas->parsed() && !temporal_techniques->parsed() &&
        !temporal_venues->parsed()) {
      run_one_stage(overrides, Stage::Temporal);
      return;
    }
    const pipeline::PipelineConfig cfg = assemble(overrides);
    pipeline::validate(cfg);
    const pipeline::RunPaths paths(cfg.run_dir);
    const temporal::TimeBucketing bucketing{cfg.from_year, cfg.to_year, cfg.width_years};
    temporal::validate(bucketing);
    using techmap::jsonl::json;
    if (temporal_areas->parsed()) {
      pipeline::require_artifact(paths.assignments_file(), Stage::Classify);
      const auto assignments = pipeline::load_assignments(paths.assignments_file());
      const auto corpus = pipeline::load_ingested(paths);
      std::cout << "bucket,area,share\n";
      for (const auto& series :
           temporal::area_share_series(assignments, corpus, bucketing, cfg.share_areas)) {
        for (const auto& point : series.points) {
          std::cout << temporal::bucket_label(point.bucket) << "," << series.area << ","
                    << format_number(point.share) << "\n";
        }
      }
    } else if (temporal_techniques->parsed()) {
      pipeline::require_artifact(paths.witnesses_file(), Stage::Map);
      const auto witnesses = pipeline::load_witnesses(paths.witnesses_file());
      for (const auto& bt :
           temporal::technique_evolution(evolution_area, bucketing, witnesses)) {
        json row;
        row["area"] = evolution_area;
        row["bucket"] = temporal::bucket_label(bt.bucket);
        json techniques = json::array();
        for (const auto& [technique, count] : bt.techniques) {
          json entry;
          entry["technique"] = technique;
          entry["count"] = count;
          techniques.push_back(std::move(entry));
        }
        row["techniques"] = techniques;
        std::cout << row.dump() << "\n";
      }
    } else {
      pipeline::require_artifact(paths.assignments_file(), Stage::Classify);
      const auto assignments = pipeline::load_assignments(paths.assignments_file());
      const auto corpus = pipeline::load_ingested(paths);
      for (const auto& ba : temporal::top_areas_by_venue(
               assignments, corpus, venue_name, bucketing,
               static_cast<std::size_t>(cfg.venue_top), cfg.venue_weight, cfg.within_window)) {
        json row;
        row["venue"] = venue_name;
        row["bucket"] = temporal::bucket_label(ba.bucket);
        json areas = json::array();
        for (const auto& [area, weight] : ba.areas) {
          json entry;
          entry["area"] = area;
          entry["weight"] = weight;
          areas.push_back(std::move(entry));
        }
        row["areas"] = areas;
        std::cout << row.dump() << "\n";
      }
    }
  });

  // --- run: the whole pipeline or a subset -------------------------------
  CLI::App* run_cmd = app.add_subcommand("run", "run pipeline stages in order");
  add_common(run_cmd, overrides);
  add_ingest_settings(run_cmd, overrides);
  add_areas_settings(run_cmd, overrides);
  add_classify_settings(run_cmd, overrides);
  add_methods_settings(run_cmd, overrides);
  add_techniques_settings(run_cmd, overrides);
  add_map_settings(run_cmd, overrides);
  add_temporal_settings(run_cmd, overrides);
  std::string stages_csv;
  run_cmd->add_option("--stages", stages_csv,
                      "comma-separated stage subset, run in pipeline order (default: all)");
  run_cmd->callback([&] {
    const pipeline::PipelineConfig cfg = assemble(overrides);
    std::vector<Stage> stages;
    for (const auto& name : split_csv(stages_csv)) {
      stages.push_back(pipeline::stage_from_name(name));
    }
    std::cout << pipeline::format_report(pipeline::run_pipeline(cfg, stages));
  });

  // --- query --------------------------------------------------------------
  CLI::App* query_cmd = app.add_subcommand("query", "ask the persisted artifacts a question");
  add_common(query_cmd, overrides);
  std::string question;
  std::string query_value;
  std::size_t query_top = 10;
  query_cmd
      ->add_option("question", question,
                   "one of: techniques-of-area, areas-of-technique, paper-area, "
                   "paper-techniques")
      ->required();
  query_cmd->add_option("value", query_value, "the area, technique, or paper id to look up")
      ->required();
  query_cmd->add_option("--top", query_top, "answers to print for techniques-of-area")->capture_default_str();
  query_cmd->callback([&] {
    const pipeline::PipelineConfig cfg = assemble(overrides);
    pipeline::validate(cfg);
    const pipeline::RunPaths paths(cfg.run_dir);
    if (question == "techniques-of-area") {
      print_answer(pipeline::query_techniques_of_area(paths, query_value, query_top));
    } else if (question == "areas-of-technique") {
      print_answer(pipeline::query_areas_of_technique(paths, query_value));
    } else if (question == "paper-area") {
      print_answer(pipeline::query_paper_area(paths, query_value));
    } else if (question == "paper-techniques") {
      print_answer(pipeline::query_paper_techniques(paths, query_value));
    } else {
      throw FatalError("unknown question \"" + question +
                       "\"; expected techniques-of-area, areas-of-technique, paper-area or "
                       "paper-techniques");
    }
  });

  // --- eval ----------------------------------------------------------------
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluation arithmetic");
  eval_cmd->require_subcommand(1);

  std::string judgments_file;
  std::size_t precision_k = 0;
  CLI::App* eval_precision =
      eval_cmd->add_subcommand("precision", "precision@K over ranked binary judgments");
  eval_precision
      ->add_option("--judgments", judgments_file, "file with one 0/1 judgment per line, ranked")
      ->required();
  eval_precision->add_option("--k", precision_k, "cutoff rank")->required();
  eval_precision->callback([&] {
    std::vector<int> judgments;
    for (const auto& line : techmap::wordlists::load_lines(judgments_file)) {
      judgments.push_back(static_cast<int>(parse_count("judgment", line)));
    }
    std::cout << format_number(evalkit::precision_at_k(judgments, precision_k)) << "\n";
  });

  std::string matrix_csv;
  CLI::App* eval_kappa =
      eval_cmd->add_subcommand("kappa", "Cohen's kappa from a 2x2 agreement matrix");
  eval_kappa
      ->add_option("--matrix", matrix_csv,
                   "yes_yes,yes_no,no_yes,no_no counts, e.g. 23,1,1,5")
      ->required();
  eval_kappa->callback([&] {
    const auto parts = split_csv(matrix_csv);
    if (parts.size() != 4) {
      throw FatalError("--matrix expects four comma-separated counts, got \"" + matrix_csv +
                       "\"");
    }
    const evalkit::AgreementMatrix matrix{
        parse_count("matrix cell", parts[0]), parse_count("matrix cell", parts[1]),
        parse_count("matrix cell", parts[2]), parse_count("matrix cell", parts[3])};
    std::cout << format_number(evalkit::cohen_kappa(matrix)) << "\n";
  });

  std::string gold_file;
  std::string extracted_file;
  std::string match_name = "stemmed";
  CLI::App* eval_recall = eval_cmd->add_subcommand("recall", "recall against a gold phrase set");
  eval_recall->add_option("--gold", gold_file, "gold phrases, one per line")->required();
  eval_recall->add_option("--extracted", extracted_file, "extracted phrases, one per line")
      ->required();
  eval_recall->add_option("--match", match_name, "exact, stemmed, or containment")->capture_default_str();
  eval_recall->callback([&] {
    std::cout << format_number(evalkit::recall_vs_gold(
                     techmap::wordlists::load_lines(gold_file),
                     techmap::wordlists::load_lines(extracted_file),
                     evalkit::matcher_from_name(match_name)))
              << "\n";
  });

  long long correct = 0;
  long long total = 0;
  CLI::App* eval_accuracy = eval_cmd->add_subcommand("accuracy", "correct / total");
  eval_accuracy->add_option("--correct", correct, "correct judgments")->required();
  eval_accuracy->add_option("--total", total, "total judgments")->required();
  eval_accuracy->callback(
      [&] { std::cout << format_number(evalkit::accuracy(correct, total)) << "\n"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const FatalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
