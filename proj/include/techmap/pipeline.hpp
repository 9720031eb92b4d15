#ifndef TECHMAP_PIPELINE_HPP
#define TECHMAP_PIPELINE_HPP

// Batch-pipeline orchestration over a run directory. Stages execute in a
// fixed order (ingest, areas, classify, methods, techniques, map, temporal);
// each stage reads only the persisted artifacts of its prerequisite stages
// and writes its own artifacts plus a diagnostics file. Reruns with
// unchanged inputs are byte-identical, so any stage can be redone in
// isolation and a whole run can be diffed file-by-file.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "techmap/area_classifier.hpp"
#include "techmap/area_lexicon.hpp"
#include "techmap/area_map.hpp"
#include "techmap/citations.hpp"
#include "techmap/corpus.hpp"
#include "techmap/diagnostics.hpp"
#include "techmap/technique_miner.hpp"
#include "techmap/temporal.hpp"

namespace techmap::pipeline {

enum class Stage { Ingest, Areas, Classify, Methods, Techniques, Map, Temporal };

// Execution order.
const std::vector<Stage>& all_stages();
std::string stage_name(Stage stage);
// Canonical names plus the alias "method-papers" for the methods stage;
// anything else is fatal.
Stage stage_from_name(const std::string& name);

struct PipelineConfig {
  std::string corpus_dir;
  std::string run_dir;
  int jobs = 1;

  // areas stage
  int scheme = 3;
  bool per_k_normalize = false;
  std::map<int, double> score_thresholds;  // empty -> derive from count_thresholds
  std::map<int, int> count_thresholds = {{2, 8}, {3, 5}, {4, 4}, {5, 4}};
  int rounds = 2;
  int min_support = 5;
  int min_keyword_support = 3;
  std::string seed_keywords_file;  // empty -> builtin seed set

  // classify stage
  double lambda = 0.7;

  // methods stage
  std::string citation_patterns_file;  // empty -> builtin pattern family
  std::string method_keywords_file;    // empty -> builtin keyword list

  // techniques stage
  int k1 = 15;
  double k2 = 0.50;
  int top_k = 5;
  bool all_method_contexts = false;
  std::string stop_phrases_file;  // empty -> builtin stop-phrase list

  // map stage
  bool mention_granularity = false;

  // temporal stage
  int from_year = 1980;
  int to_year = 2013;
  int width_years = 5;
  std::vector<std::string> share_areas;  // empty -> every observed area
  std::string evolution_area;            // empty -> every area in the map
  std::string venue;                     // empty -> every corpus venue
  temporal::VenueWeight venue_weight = temporal::VenueWeight::Papers;
  bool within_window = false;
  int venue_top = 10;

  // text-layer overrides (empty -> builtin lists)
  std::string stopwords_file;
  std::string pos_lexicon_file;

  bool operator==(const PipelineConfig&) const = default;
};

// Flat key=value settings file: one `key = value` pair per line, '#' starts
// a comment, blank lines are ignored, later lines win. Unknown keys and
// malformed lines are fatal.
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_setting(PipelineConfig& config, const std::string& key, const std::string& value);
// Defaults overlaid with every setting in the file.
PipelineConfig load_config(const std::string& path);

// Checks numeric ranges and that every referenced override file exists.
void validate(const PipelineConfig& config);

// Artifact locations under the run directory.
class RunPaths {
 public:
  RunPaths() = default;
  explicit RunPaths(std::string run_dir) : run_dir_(std::move(run_dir)) {}

  const std::string& run_dir() const { return run_dir_; }
  std::string stage_dir(Stage stage) const;
  std::string diagnostics_file(Stage stage) const;
  std::string run_record_file() const;  // run.json

  std::string corpus_file() const;        // ingest/corpus.jsonl
  std::string edges_file() const;         // ingest/edges.jsonl
  std::string keywords_file() const;      // areas/keywords.jsonl
  std::string lexicon_file() const;       // areas/area_lexicon.jsonl
  std::string lexicon_meta_file() const;  // areas/lexicon_meta.json
  std::string assignments_file() const;   // classify/assignments.jsonl
  std::string contexts_file() const;      // methods/contexts.jsonl
  std::string stats_file() const;         // methods/citation_stats.jsonl
  std::string method_papers_file() const; // techniques/method_papers.jsonl
  std::string global_vector_file() const; // techniques/global_vector.jsonl
  std::string techniques_file() const;    // techniques/techniques.jsonl
  std::string map_file() const;           // map/area_technique_map.jsonl
  std::string witnesses_file() const;     // map/witnesses.jsonl
  std::string shares_file() const;        // temporal/area_shares.csv
  std::string evolution_file() const;     // temporal/technique_evolution.jsonl
  std::string venue_areas_file() const;   // temporal/venue_areas.jsonl

 private:
  std::string run_dir_;
};

// Fatal unless the artifact file exists; the message names the stage whose
// rerun would produce it.
void require_artifact(const std::string& path, Stage producer);

// The ingest stage's persisted corpus.
corpus::Corpus load_ingested(const RunPaths& paths);

// Artifact codecs. Writers produce byte-stable output (ordered keys, one
// document per line); loaders throw FatalError on damaged files.
void save_diagnostics(const DiagnosticList& diags, const std::string& path);
DiagnosticList load_diagnostics(const std::string& path);

void save_keywords(const arealex::KeywordSet& keywords, const std::string& path);
arealex::KeywordSet load_keywords(const std::string& path);

void save_lexicon(const arealex::AreaLexicon& lexicon, const std::string& rows_path,
                  const std::string& meta_path);
arealex::AreaLexicon load_lexicon(const std::string& rows_path, const std::string& meta_path);

void save_assignments(const std::vector<areaclass::AreaAssignment>& assignments,
                      const std::string& path);
std::vector<areaclass::AreaAssignment> load_assignments(const std::string& path);

void save_contexts(const std::vector<citations::CitationContext>& contexts,
                   const std::string& path);
std::vector<citations::CitationContext> load_contexts(const std::string& path);

void save_stats(const std::map<std::string, citations::CitationStats>& stats,
                const std::string& path);
std::map<std::string, citations::CitationStats> load_stats(const std::string& path);

void save_global_vector(const techminer::GlobalTechniqueVector& global, const std::string& path);
techminer::GlobalTechniqueVector load_global_vector(const std::string& path);

// techniques.jsonl carries each profile's ranked techniques; the local
// count vectors are working state and are not persisted.
void save_profiles(const std::vector<techminer::MethodPaperProfile>& profiles,
                   const std::string& path);
std::vector<techminer::MethodPaperProfile> load_profiles(const std::string& path);

void save_map_table(const areamap::AreaTechniqueMap& map, const std::string& path);
std::map<std::string, std::map<std::string, int>> load_map_table(const std::string& path);

void save_witnesses(const std::vector<areamap::Witness>& witnesses, const std::string& path);
std::vector<areamap::Witness> load_witnesses(const std::string& path);

struct StageReport {
  Stage stage = Stage::Ingest;
  std::vector<std::pair<std::string, long long>> counts;  // label -> count
  std::size_t diagnostics = 0;
  double seconds = 0.0;

  bool operator==(const StageReport&) const = default;
};

struct RunReport {
  std::vector<StageReport> stages;
};

// One line per stage: name, counts, diagnostics, wall time.
std::string format_report(const RunReport& report);

// Serializes the exact configuration to <run_dir>/run.json.
void write_run_record(const PipelineConfig& config);

// Runs one stage: loads prerequisites from the run directory, computes, and
// rewrites this stage's artifacts. A missing prerequisite artifact is fatal,
// naming the stage to rerun.
StageReport run_stage(const PipelineConfig& config, Stage stage);

// Runs the requested stages (empty -> all) in pipeline order after writing
// run.json.
RunReport run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages = {});

// Deterministic answers for the query commands, one "value<TAB>annotation"
// line each; an empty result is a miss.
std::vector<std::string> query_techniques_of_area(const RunPaths& paths, const std::string& area,
                                                  std::size_t top);
std::vector<std::string> query_areas_of_technique(const RunPaths& paths,
                                                  const std::string& technique);
std::vector<std::string> query_paper_area(const RunPaths& paths, const std::string& paper_id);
std::vector<std::string> query_paper_techniques(const RunPaths& paths,
                                                const std::string& paper_id);

}  // namespace techmap::pipeline

#endif
