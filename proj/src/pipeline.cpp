#include "techmap/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <utility>

#include "techmap/jsonl.hpp"
#include "techmap/text.hpp"
#include "techmap/wordlists.hpp"

namespace techmap::pipeline {

namespace fs = std::filesystem;
using jsonl::json;

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> order = {Stage::Ingest,     Stage::Areas, Stage::Classify,
                                           Stage::Methods,    Stage::Techniques,
                                           Stage::Map,        Stage::Temporal};
  return order;
}

std::string stage_name(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Areas: return "areas";
    case Stage::Classify: return "classify";
    case Stage::Methods: return "methods";
    case Stage::Techniques: return "techniques";
    case Stage::Map: return "map";
    case Stage::Temporal: return "temporal";
  }
  throw FatalError("unknown stage value");
}

Stage stage_from_name(const std::string& name) {
  for (const Stage stage : all_stages()) {
    if (stage_name(stage) == name) return stage;
  }
  if (name == "method-papers") return Stage::Methods;
  throw FatalError("unknown stage \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// Run-directory layout

std::string RunPaths::stage_dir(Stage stage) const {
  return (fs::path(run_dir_) / stage_name(stage)).string();
}

std::string RunPaths::diagnostics_file(Stage stage) const {
  return (fs::path(stage_dir(stage)) / "diagnostics.jsonl").string();
}

std::string RunPaths::run_record_file() const {
  return (fs::path(run_dir_) / "run.json").string();
}

std::string RunPaths::corpus_file() const {
  return (fs::path(stage_dir(Stage::Ingest)) / "corpus.jsonl").string();
}
std::string RunPaths::edges_file() const {
  return (fs::path(stage_dir(Stage::Ingest)) / "edges.jsonl").string();
}
std::string RunPaths::keywords_file() const {
  return (fs::path(stage_dir(Stage::Areas)) / "keywords.jsonl").string();
}
std::string RunPaths::lexicon_file() const {
  return (fs::path(stage_dir(Stage::Areas)) / "area_lexicon.jsonl").string();
}
std::string RunPaths::lexicon_meta_file() const {
  return (fs::path(stage_dir(Stage::Areas)) / "lexicon_meta.json").string();
}
std::string RunPaths::assignments_file() const {
  return (fs::path(stage_dir(Stage::Classify)) / "assignments.jsonl").string();
}
std::string RunPaths::contexts_file() const {
  return (fs::path(stage_dir(Stage::Methods)) / "contexts.jsonl").string();
}
std::string RunPaths::stats_file() const {
  return (fs::path(stage_dir(Stage::Methods)) / "citation_stats.jsonl").string();
}
std::string RunPaths::method_papers_file() const {
  return (fs::path(stage_dir(Stage::Techniques)) / "method_papers.jsonl").string();
}
std::string RunPaths::global_vector_file() const {
  return (fs::path(stage_dir(Stage::Techniques)) / "global_vector.jsonl").string();
}
std::string RunPaths::techniques_file() const {
  return (fs::path(stage_dir(Stage::Techniques)) / "techniques.jsonl").string();
}
std::string RunPaths::map_file() const {
  return (fs::path(stage_dir(Stage::Map)) / "area_technique_map.jsonl").string();
}
std::string RunPaths::witnesses_file() const {
  return (fs::path(stage_dir(Stage::Map)) / "witnesses.jsonl").string();
}
std::string RunPaths::shares_file() const {
  return (fs::path(stage_dir(Stage::Temporal)) / "area_shares.csv").string();
}
std::string RunPaths::evolution_file() const {
  return (fs::path(stage_dir(Stage::Temporal)) / "technique_evolution.jsonl").string();
}
std::string RunPaths::venue_areas_file() const {
  return (fs::path(stage_dir(Stage::Temporal)) / "venue_areas.jsonl").string();
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw FatalError("setting '" + key + "': expected an integer, got \"" + value + "\"");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw FatalError("setting '" + key + "': expected a number, got \"" + value + "\"");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw FatalError("setting '" + key + "': expected true or false, got \"" + value + "\"");
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::size_t end = comma == std::string::npos ? value.size() : comma;
    item = trim(value.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// "t2,t3,t4,t5" in k-gram order.
template <typename T, typename Parse>
std::map<int, T> parse_thresholds(const std::string& key, const std::string& value, Parse parse) {
  const auto parts = parse_list(value);
  if (parts.size() != 4) {
    throw FatalError("setting '" + key + "': expected four comma-separated values for k=2..5");
  }
  std::map<int, T> out;
  for (int k = 2; k <= 5; ++k) out[k] = parse(key, parts[static_cast<std::size_t>(k - 2)]);
  return out;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FatalError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw FatalError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw FatalError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[key] = value;  // later lines win
  }
  return out;
}

void apply_setting(PipelineConfig& config, const std::string& key, const std::string& value) {
  if (key == "corpus_dir") {
    config.corpus_dir = value;
  } else if (key == "run_dir") {
    config.run_dir = value;
  } else if (key == "jobs") {
    config.jobs = parse_int(key, value);
  } else if (key == "scheme") {
    config.scheme = parse_int(key, value);
  } else if (key == "per_k_normalize") {
    config.per_k_normalize = parse_bool(key, value);
  } else if (key == "score_thresholds") {
    config.score_thresholds =
        value.empty() ? std::map<int, double>{}
                      : parse_thresholds<double>(key, value, parse_double);
  } else if (key == "count_thresholds") {
    config.count_thresholds = parse_thresholds<int>(key, value, parse_int);
  } else if (key == "rounds") {
    config.rounds = parse_int(key, value);
  } else if (key == "min_support") {
    config.min_support = parse_int(key, value);
  } else if (key == "min_keyword_support") {
    config.min_keyword_support = parse_int(key, value);
  } else if (key == "seed_keywords") {
    config.seed_keywords_file = value;
  } else if (key == "lambda") {
    config.lambda = parse_double(key, value);
  } else if (key == "citation_patterns") {
    config.citation_patterns_file = value;
  } else if (key == "method_keywords") {
    config.method_keywords_file = value;
  } else if (key == "k1") {
    config.k1 = parse_int(key, value);
  } else if (key == "k2") {
    config.k2 = parse_double(key, value);
  } else if (key == "top_k") {
    config.top_k = parse_int(key, value);
  } else if (key == "all_method_contexts") {
    config.all_method_contexts = parse_bool(key, value);
  } else if (key == "stop_phrases") {
    config.stop_phrases_file = value;
  } else if (key == "mention_granularity") {
    config.mention_granularity = parse_bool(key, value);
  } else if (key == "from") {
    config.from_year = parse_int(key, value);
  } else if (key == "to") {
    config.to_year = parse_int(key, value);
  } else if (key == "width") {
    config.width_years = parse_int(key, value);
  } else if (key == "areas") {
    config.share_areas = parse_list(value);
  } else if (key == "evolution_area") {
    config.evolution_area = value;
  } else if (key == "venue") {
    config.venue = value;
  } else if (key == "venue_weight") {
    config.venue_weight = temporal::venue_weight_from_name(value);
  } else if (key == "within_window") {
    config.within_window = parse_bool(key, value);
  } else if (key == "venue_top") {
    config.venue_top = parse_int(key, value);
  } else if (key == "stopwords") {
    config.stopwords_file = value;
  } else if (key == "pos_lexicon") {
    config.pos_lexicon_file = value;
  } else {
    throw FatalError("unknown setting \"" + key + "\"");
  }
}

PipelineConfig load_config(const std::string& path) {
  PipelineConfig config;
  for (const auto& [key, value] : read_config_file(path)) {
    apply_setting(config, key, value);
  }
  return config;
}

void validate(const PipelineConfig& config) {
  if (config.run_dir.empty()) throw FatalError("run_dir must be set");
  if (config.jobs < 1) throw FatalError("jobs must be >= 1");
  if (config.scheme < 1 || config.scheme > 3) {
    throw FatalError("scheme must be 1, 2 or 3");
  }
  if (config.rounds < 0) throw FatalError("rounds must be >= 0");
  if (config.min_support < 1) throw FatalError("min_support must be >= 1");
  if (config.min_keyword_support < 1) throw FatalError("min_keyword_support must be >= 1");
  if (!(config.lambda >= 0.0 && config.lambda <= 1.0)) {
    throw FatalError("lambda must lie in [0, 1]");
  }
  techminer::validate({config.k1, config.k2, config.top_k});
  temporal::validate({config.from_year, config.to_year, config.width_years});
  if (config.venue_top < 1) throw FatalError("venue_top must be >= 1");
  const std::pair<const char*, const std::string*> files[] = {
      {"seed_keywords", &config.seed_keywords_file},
      {"citation_patterns", &config.citation_patterns_file},
      {"method_keywords", &config.method_keywords_file},
      {"stop_phrases", &config.stop_phrases_file},
      {"stopwords", &config.stopwords_file},
      {"pos_lexicon", &config.pos_lexicon_file},
  };
  for (const auto& [name, path] : files) {
    if (!path->empty() && !fs::exists(*path)) {
      throw FatalError(std::string("setting '") + name + "': file '" + *path +
                       "' does not exist");
    }
  }
}

// ---------------------------------------------------------------------------
// Artifact codecs

namespace {

template <typename Fn>
auto parse_guard(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw FatalError("artifact '" + path + "' is damaged: " + std::string(e.what()));
  }
}

std::string severity_name(Severity severity) {
  return severity == Severity::Warning ? "warning" : "error";
}

Severity severity_from_name(const std::string& name) {
  if (name == "warning") return Severity::Warning;
  if (name == "error") return Severity::Error;
  throw FatalError("unknown severity \"" + name + "\"");
}

}  // namespace

void save_diagnostics(const DiagnosticList& diags, const std::string& path) {
  std::vector<json> rows;
  rows.reserve(diags.size());
  for (const auto& d : diags) {
    json row;
    row["severity"] = severity_name(d.severity);
    row["where"] = d.where;
    row["message"] = d.message;
    rows.push_back(std::move(row));
  }
  jsonl::write_file(path, rows);
}

DiagnosticList load_diagnostics(const std::string& path) {
  return parse_guard(path, [&] {
    DiagnosticList out;
    for (const auto& row : jsonl::read_file(path)) {
      out.push_back({severity_from_name(row.at("severity").get<std::string>()),
                     row.at("where").get<std::string>(), row.at("message").get<std::string>()});
    }
    return out;
  });
}

void save_keywords(const arealex::KeywordSet& keywords, const std::string& path) {
  std::vector<json> rows;
  for (const auto& kw : keywords.keywords()) {
    json row;
    row["word"] = kw.word;
    row["area_after"] = kw.area_after;
    row["area_before"] = kw.area_before;
    row["bootstrapped"] = kw.bootstrapped;
    rows.push_back(std::move(row));
  }
  jsonl::write_file(path, rows);
}

arealex::KeywordSet load_keywords(const std::string& path) {
  return parse_guard(path, [&] {
    std::vector<arealex::Keyword> out;
    for (const auto& row : jsonl::read_file(path)) {
      out.push_back({row.at("word").get<std::string>(), row.at("area_after").get<bool>(),
                     row.at("area_before").get<bool>(), row.at("bootstrapped").get<bool>()});
    }
    return arealex::KeywordSet(std::move(out));
  });
}

void save_lexicon(const arealex::AreaLexicon& lexicon, const std::string& rows_path,
                  const std::string& meta_path) {
  std::vector<json> rows;
  rows.reserve(lexicon.areas.size());
  for (const auto& area : lexicon.areas) {
    json row;
    row["phrase"] = area.phrase;
    row["k"] = area.k;
    row["count"] = area.count;
    row["score"] = area.score;
    row["rank"] = area.rank;
    rows.push_back(std::move(row));
  }
  jsonl::write_file(rows_path, rows);
  json meta;
  meta["scheme"] = lexicon.scheme;
  json thresholds = json::object();
  for (const auto& [k, v] : lexicon.thresholds) thresholds[std::to_string(k)] = v;
  meta["thresholds"] = thresholds;
  jsonl::write_text_file(meta_path, meta.dump(2) + "\n");
}

arealex::AreaLexicon load_lexicon(const std::string& rows_path, const std::string& meta_path) {
  arealex::AreaLexicon lexicon;
  parse_guard(rows_path, [&] {
    for (const auto& row : jsonl::read_file(rows_path)) {
      lexicon.areas.push_back({row.at("phrase").get<std::string>(), row.at("k").get<int>(),
                               row.at("count").get<int>(), row.at("score").get<double>(),
                               row.at("rank").get<int>()});
    }
    return 0;
  });
  parse_guard(meta_path, [&] {
    const json meta = json::parse(jsonl::read_text_file(meta_path));
    lexicon.scheme = meta.at("scheme").get<int>();
    for (const auto& [k, v] : meta.at("thresholds").items()) {
      lexicon.thresholds[parse_int("thresholds", k)] = v.get<double>();
    }
    return 0;
  });
  return lexicon;
}

void save_assignments(const std::vector<areaclass::AreaAssignment>& assignments,
                      const std::string& path) {
  std::vector<json> rows;
  rows.reserve(assignments.size());
  for (const auto& a : assignments) {
    json row;
    row["paper_id"] = a.paper_id;
    row["area"] = a.area;
    row["route"] = areaclass::route_name(a.route);
    // JSON has no -inf; a non-finite or absent score becomes null.
    if (a.score && std::isfinite(*a.score)) {
      row["score"] = *a.score;
    } else {
      row["score"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  jsonl::write_file(path, rows);
}

std::vector<areaclass::AreaAssignment> load_assignments(const std::string& path) {
  return parse_guard(path, [&] {
    std::vector<areaclass::AreaAssignment> out;
    for (const auto& row : jsonl::read_file(path)) {
      areaclass::AreaAssignment a;
      a.paper_id = row.at("paper_id").get<std::string>();
      a.area = row.at("area").get<std::string>();
      a.route = areaclass::route_from_name(row.at("route").get<std::string>());
      if (!row.at("score").is_null()) a.score = row.at("score").get<double>();
      out.push_back(std::move(a));
    }
    return out;
  });
}

void save_contexts(const std::vector<citations::CitationContext>& contexts,
                   const std::string& path) {
  std::vector<json> rows;
  rows.reserve(contexts.size());
  for (const auto& c : contexts) {
    json row;
    row["citing_id"] = c.citing_id;
    row["cited_id"] = c.cited_id;
    row["offset"] = c.offset;
    row["sentence"] = c.sentence;
    row["in_method_section"] = c.in_method_section;
    rows.push_back(std::move(row));
  }
  jsonl::write_file(path, rows);
}

std::vector<citations::CitationContext> load_contexts(const std::string& path) {
  return parse_guard(path, [&] {
    std::vector<citations::CitationContext> out;
    for (const auto& row : jsonl::read_file(path)) {
      out.push_back({row.at("citing_id").get<std::string>(), row.at("cited_id").get<std::string>(),
                     row.at("offset").get<std::size_t>(), row.at("sentence").get<std::string>(),
                     row.at("in_method_section").get<bool>()});
    }
    return out;
  });
}

void save_stats(const std::map<std::string, citations::CitationStats>& stats,
                const std::string& path) {
  std::vector<json> rows;
  rows.reserve(stats.size());
  for (const auto& [id, st] : stats) {
    json row;
    row["paper_id"] = id;
    row["total"] = st.total;
    row["in_method"] = st.in_method;
    row["method_fraction"] = st.method_fraction;
    rows.push_back(std::move(row));
  }
  jsonl::write_file(path, rows);
}

std::map<std::string, citations::CitationStats> load_stats(const std::string& path) {
  return parse_guard(path, [&] {
    std::map<std::string, citations::CitationStats> out;
    for (const auto& row : jsonl::read_file(path)) {
      out[row.at("paper_id").get<std::string>()] = {row.at("total").get<int>(),
                                                    row.at("in_method").get<int>(),
                                                    row.at("method_fraction").get<double>()};
    }
    return out;
  });
}

void save_global_vector(const techminer::GlobalTechniqueVector& global, const std::string& path) {
  std::vector<json> rows;
  rows.reserve(global.entries.size());
  for (const auto& entry : global.entries) {
    json row;
    row["phrase"] = entry.phrase;
    row["count"] = entry.count;
    rows.push_back(std::move(row));
  }
  jsonl::write_file(path, rows);
}

techminer::GlobalTechniqueVector load_global_vector(const std::string& path) {
  return parse_guard(path, [&] {
    techminer::GlobalTechniqueVector global;
    for (const auto& row : jsonl::read_file(path)) {
      global.entries.push_back(
          {row.at("phrase").get<std::string>(), row.at("count").get<long long>()});
    }
    return global;
  });
}

void save_profiles(const std::vector<techminer::MethodPaperProfile>& profiles,
                   const std::string& path) {
  std::vector<json> rows;
  rows.reserve(profiles.size());
  for (const auto& p : profiles) {
    json row;
    row["paper_id"] = p.paper_id;
    row["total_citations"] = p.total_citations;
    row["method_fraction"] = p.method_fraction;
    json techniques = json::array();
    for (const auto& t : p.techniques) {
      json entry;
      entry["phrase"] = t.phrase;
      entry["score"] = t.score;
      techniques.push_back(std::move(entry));
    }
    row["techniques"] = techniques;
    rows.push_back(std::move(row));
  }
  jsonl::write_file(path, rows);
}

std::vector<techminer::MethodPaperProfile> load_profiles(const std::string& path) {
  return parse_guard(path, [&] {
    std::vector<techminer::MethodPaperProfile> out;
    for (const auto& row : jsonl::read_file(path)) {
      techminer::MethodPaperProfile p;
      p.paper_id = row.at("paper_id").get<std::string>();
      p.total_citations = row.at("total_citations").get<int>();
      p.method_fraction = row.at("method_fraction").get<double>();
      for (const auto& entry : row.at("techniques")) {
        p.techniques.push_back(
            {entry.at("phrase").get<std::string>(), entry.at("score").get<long long>()});
      }
      out.push_back(std::move(p));
    }
    return out;
  });
}

void save_map_table(const areamap::AreaTechniqueMap& map, const std::string& path) {
  std::vector<json> rows;
  for (const auto& [area, techniques] : map.table) {
    for (const auto& [technique, count] : techniques) {
      json row;
      row["area"] = area;
      row["technique"] = technique;
      row["count"] = count;
      rows.push_back(std::move(row));
    }
  }
  jsonl::write_file(path, rows);
}

std::map<std::string, std::map<std::string, int>> load_map_table(const std::string& path) {
  return parse_guard(path, [&] {
    std::map<std::string, std::map<std::string, int>> table;
    for (const auto& row : jsonl::read_file(path)) {
      table[row.at("area").get<std::string>()][row.at("technique").get<std::string>()] =
          row.at("count").get<int>();
    }
    return table;
  });
}

void save_witnesses(const std::vector<areamap::Witness>& witnesses, const std::string& path) {
  std::vector<json> rows;
  rows.reserve(witnesses.size());
  for (const auto& w : witnesses) {
    json row;
    row["paper_id"] = w.paper_id;
    row["area"] = w.area;
    row["technique"] = w.technique;
    row["year"] = w.year;
    row["method_papers"] = w.method_papers;
    rows.push_back(std::move(row));
  }
  jsonl::write_file(path, rows);
}

std::vector<areamap::Witness> load_witnesses(const std::string& path) {
  return parse_guard(path, [&] {
    std::vector<areamap::Witness> out;
    for (const auto& row : jsonl::read_file(path)) {
      out.push_back({row.at("paper_id").get<std::string>(), row.at("area").get<std::string>(),
                     row.at("technique").get<std::string>(), row.at("year").get<int>(),
                     row.at("method_papers").get<std::vector<std::string>>()});
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Stage execution

void require_artifact(const std::string& path, Stage producer) {
  if (!jsonl::file_exists(path)) {
    throw FatalError("missing artifact '" + path + "'; rerun stage '" + stage_name(producer) +
                     "'");
  }
}

corpus::Corpus load_ingested(const RunPaths& paths) {
  require_artifact(paths.corpus_file(), Stage::Ingest);
  require_artifact(paths.edges_file(), Stage::Ingest);
  return corpus::load_corpus(paths.stage_dir(Stage::Ingest));
}

namespace {

void require(const std::string& path, Stage producer) { require_artifact(path, producer); }

text::Lexicons lexicons_for(const PipelineConfig& config) {
  if (config.stopwords_file.empty() && config.pos_lexicon_file.empty()) {
    return text::default_lexicons();
  }
  const std::vector<std::string> stop_lines = config.stopwords_file.empty()
                                                  ? wordlists::stopwords()
                                                  : wordlists::load_lines(config.stopwords_file);
  std::vector<std::pair<std::string, std::string>> pos_pairs;
  if (config.pos_lexicon_file.empty()) {
    for (const auto& w : wordlists::nominal_ing_ed()) pos_pairs.emplace_back(w, "noun");
    for (const auto& w : wordlists::common_verbs()) pos_pairs.emplace_back(w, "verb");
    for (const auto& w : wordlists::common_adjectives()) pos_pairs.emplace_back(w, "adj");
  } else {
    pos_pairs = wordlists::load_pairs(config.pos_lexicon_file);
  }
  return text::make_lexicons(stop_lines, pos_pairs);
}

// Shortest round-trip formatting, shared with the JSON artifacts.
std::string format_double(double value) { return json(value).dump(); }

void run_ingest(const PipelineConfig& config, const RunPaths& paths, StageReport& report) {
  if (!fs::exists(config.corpus_dir)) {
    throw FatalError("corpus directory '" + config.corpus_dir + "' does not exist");
  }
  DiagnosticList diags;
  const corpus::Corpus corpus = corpus::ingest_dir(config.corpus_dir, diags, config.jobs);
  corpus::save_corpus(corpus, paths.stage_dir(Stage::Ingest));
  save_diagnostics(diags, paths.diagnostics_file(Stage::Ingest));
  report.counts.emplace_back("papers", static_cast<long long>(corpus.papers().size()));
  report.counts.emplace_back("edges", static_cast<long long>(corpus.edges().size()));
  report.diagnostics = diags.size();
}

void run_areas(const PipelineConfig& config, const RunPaths& paths, StageReport& report) {
  const corpus::Corpus corpus = load_ingested(paths);
  std::vector<std::string> titles;
  titles.reserve(corpus.papers().size());
  for (const auto& p : corpus.papers()) titles.push_back(p.title);

  const text::Lexicons lex = lexicons_for(config);
  const arealex::KeywordSet seeds =
      config.seed_keywords_file.empty()
          ? arealex::KeywordSet::seeds()
          : arealex::KeywordSet::from_pairs(wordlists::load_pairs(config.seed_keywords_file));
  const arealex::BootstrapConfig bootstrap{config.rounds, config.min_support,
                                           config.min_keyword_support};
  const arealex::KeywordSet keywords = arealex::bootstrap_keywords(
      titles, seeds, bootstrap, lex, wordlists::closed_class_words());

  arealex::LexiconConfig lexicon_config;
  lexicon_config.scheme = config.scheme;
  lexicon_config.per_k_normalize = config.per_k_normalize;
  lexicon_config.score_thresholds = config.score_thresholds;
  lexicon_config.count_thresholds = config.count_thresholds;
  const arealex::AreaLexicon lexicon =
      arealex::build_lexicon(titles, keywords, lexicon_config, lex, config.jobs);

  save_keywords(keywords, paths.keywords_file());
  save_lexicon(lexicon, paths.lexicon_file(), paths.lexicon_meta_file());
  save_diagnostics({}, paths.diagnostics_file(Stage::Areas));
  report.counts.emplace_back("keywords", static_cast<long long>(keywords.size()));
  report.counts.emplace_back("areas", static_cast<long long>(lexicon.areas.size()));
}

void run_classify(const PipelineConfig& config, const RunPaths& paths, StageReport& report) {
  const corpus::Corpus corpus = load_ingested(paths);
  require(paths.lexicon_file(), Stage::Areas);
  require(paths.lexicon_meta_file(), Stage::Areas);
  const arealex::AreaLexicon lexicon =
      load_lexicon(paths.lexicon_file(), paths.lexicon_meta_file());

  const std::vector<areaclass::AreaAssignment> assignments =
      areaclass::classify_all(corpus, lexicon, {config.lambda}, config.jobs);
  save_assignments(assignments, paths.assignments_file());
  save_diagnostics({}, paths.diagnostics_file(Stage::Classify));

  std::map<areaclass::Route, long long> by_route;
  for (const auto& a : assignments) ++by_route[a.route];
  report.counts.emplace_back("papers", static_cast<long long>(assignments.size()));
  for (const auto route :
       {areaclass::Route::TitleDirect, areaclass::Route::AbstractDirect,
        areaclass::Route::LanguageModel, areaclass::Route::Unclassified}) {
    report.counts.emplace_back(areaclass::route_name(route), by_route[route]);
  }
}

void run_methods(const PipelineConfig& config, const RunPaths& paths, StageReport& report) {
  const corpus::Corpus corpus = load_ingested(paths);
  const citations::MentionScanner scanner =
      config.citation_patterns_file.empty()
          ? citations::MentionScanner()
          : citations::MentionScanner(wordlists::load_lines(config.citation_patterns_file));
  const std::vector<std::string> method_keywords =
      config.method_keywords_file.empty() ? std::vector<std::string>{}
                                          : wordlists::load_lines(config.method_keywords_file);

  DiagnosticList diags;
  const std::vector<citations::CitationContext> contexts =
      citations::extract_contexts(corpus, scanner, diags, config.jobs, method_keywords);
  const std::map<std::string, citations::CitationStats> stats =
      citations::citation_stats_all(corpus, contexts);

  save_contexts(contexts, paths.contexts_file());
  save_stats(stats, paths.stats_file());
  save_diagnostics(diags, paths.diagnostics_file(Stage::Methods));
  long long in_method = 0;
  for (const auto& c : contexts) in_method += c.in_method_section ? 1 : 0;
  report.counts.emplace_back("contexts", static_cast<long long>(contexts.size()));
  report.counts.emplace_back("method-contexts", in_method);
  report.counts.emplace_back("papers", static_cast<long long>(stats.size()));
  report.diagnostics = diags.size();
}

void run_techniques(const PipelineConfig& config, const RunPaths& paths, StageReport& report) {
  require(paths.contexts_file(), Stage::Methods);
  require(paths.stats_file(), Stage::Methods);
  require(paths.assignments_file(), Stage::Classify);
  const auto contexts = load_contexts(paths.contexts_file());
  const auto stats = load_stats(paths.stats_file());
  std::map<std::string, std::string> area_by_paper;
  for (const auto& a : load_assignments(paths.assignments_file())) {
    area_by_paper[a.paper_id] = a.area;
  }

  const techminer::MethodMinerConfig miner{config.k1, config.k2, config.top_k};
  const std::vector<std::string> stop_phrases =
      config.stop_phrases_file.empty() ? wordlists::stop_phrases()
                                       : wordlists::load_lines(config.stop_phrases_file);
  const techminer::MiningResult result = techminer::mine_techniques(
      stats, contexts, area_by_paper, miner, stop_phrases, config.all_method_contexts,
      config.jobs);

  std::vector<json> method_rows;
  method_rows.reserve(result.profiles.size());
  for (const auto& p : result.profiles) {
    json row;
    row["paper_id"] = p.paper_id;
    row["total_citations"] = p.total_citations;
    row["method_fraction"] = p.method_fraction;
    method_rows.push_back(std::move(row));
  }
  jsonl::write_file(paths.method_papers_file(), method_rows);
  save_global_vector(result.global, paths.global_vector_file());
  save_profiles(result.profiles, paths.techniques_file());
  save_diagnostics({}, paths.diagnostics_file(Stage::Techniques));
  report.counts.emplace_back("method-papers", static_cast<long long>(result.profiles.size()));
  report.counts.emplace_back("global-phrases",
                             static_cast<long long>(result.global.entries.size()));
}

void run_map(const PipelineConfig& config, const RunPaths& paths, StageReport& report) {
  const corpus::Corpus corpus = load_ingested(paths);
  require(paths.assignments_file(), Stage::Classify);
  require(paths.techniques_file(), Stage::Techniques);
  require(paths.contexts_file(), Stage::Methods);
  const auto assignments = load_assignments(paths.assignments_file());
  const auto profiles = load_profiles(paths.techniques_file());
  const auto contexts = load_contexts(paths.contexts_file());

  DiagnosticList diags;
  const areamap::AreaTechniqueMap map = areamap::build_map(
      assignments, profiles, contexts, corpus, diags, {config.mention_granularity}, config.jobs);
  save_map_table(map, paths.map_file());
  save_witnesses(map.witnesses, paths.witnesses_file());
  save_diagnostics(diags, paths.diagnostics_file(Stage::Map));

  long long pairs = 0;
  for (const auto& [area, techniques] : map.table) {
    pairs += static_cast<long long>(techniques.size());
  }
  report.counts.emplace_back("areas", static_cast<long long>(map.table.size()));
  report.counts.emplace_back("pairs", pairs);
  report.counts.emplace_back("witnesses", static_cast<long long>(map.witnesses.size()));
  report.diagnostics = diags.size();
}

void run_temporal(const PipelineConfig& config, const RunPaths& paths, StageReport& report) {
  const corpus::Corpus corpus = load_ingested(paths);
  require(paths.assignments_file(), Stage::Classify);
  require(paths.witnesses_file(), Stage::Map);
  const auto assignments = load_assignments(paths.assignments_file());
  const auto witnesses = load_witnesses(paths.witnesses_file());

  const temporal::TimeBucketing bucketing{config.from_year, config.to_year, config.width_years};
  temporal::validate(bucketing);

  const std::vector<temporal::AreaSeries> series =
      temporal::area_share_series(assignments, corpus, bucketing, config.share_areas);
  std::string csv = "bucket,area,share\n";
  long long share_points = 0;
  for (const auto& s : series) {
    for (const auto& pt : s.points) {
      csv += temporal::bucket_label(pt.bucket) + "," + s.area + "," + format_double(pt.share) +
             "\n";
      ++share_points;
    }
  }
  jsonl::write_text_file(paths.shares_file(), csv);

  std::vector<std::string> evolution_areas;
  if (!config.evolution_area.empty()) {
    evolution_areas.push_back(config.evolution_area);
  } else {
    std::set<std::string> seen;
    for (const auto& w : witnesses) seen.insert(w.area);
    evolution_areas.assign(seen.begin(), seen.end());
  }
  std::vector<json> evolution_rows;
  for (const auto& area : evolution_areas) {
    for (const auto& bt : temporal::technique_evolution(area, bucketing, witnesses)) {
      json row;
      row["area"] = area;
      row["bucket"] = temporal::bucket_label(bt.bucket);
      json techniques = json::array();
      for (const auto& [technique, count] : bt.techniques) {
        json entry;
        entry["technique"] = technique;
        entry["count"] = count;
        techniques.push_back(std::move(entry));
      }
      row["techniques"] = techniques;
      evolution_rows.push_back(std::move(row));
    }
  }
  jsonl::write_file(paths.evolution_file(), evolution_rows);

  const std::vector<std::string> venues =
      config.venue.empty() ? corpus.venues() : std::vector<std::string>{config.venue};
  std::vector<json> venue_rows;
  for (const auto& venue : venues) {
    const auto bucket_areas = temporal::top_areas_by_venue(
        assignments, corpus, venue, bucketing, static_cast<std::size_t>(config.venue_top),
        config.venue_weight, config.within_window);
    for (const auto& ba : bucket_areas) {
      json row;
      row["venue"] = venue;
      row["bucket"] = temporal::bucket_label(ba.bucket);
      json areas = json::array();
      for (const auto& [area, weight] : ba.areas) {
        json entry;
        entry["area"] = area;
        entry["weight"] = weight;
        areas.push_back(std::move(entry));
      }
      row["areas"] = areas;
      venue_rows.push_back(std::move(row));
    }
  }
  jsonl::write_file(paths.venue_areas_file(), venue_rows);

  save_diagnostics({}, paths.diagnostics_file(Stage::Temporal));
  report.counts.emplace_back("series", static_cast<long long>(series.size()));
  report.counts.emplace_back("share-points", share_points);
  report.counts.emplace_back("evolution-rows", static_cast<long long>(evolution_rows.size()));
  report.counts.emplace_back("venue-rows", static_cast<long long>(venue_rows.size()));
}

}  // namespace

StageReport run_stage(const PipelineConfig& config, Stage stage) {
  validate(config);
  const RunPaths paths(config.run_dir);
  StageReport report;
  report.stage = stage;
  const auto started = std::chrono::steady_clock::now();
  switch (stage) {
    case Stage::Ingest: run_ingest(config, paths, report); break;
    case Stage::Areas: run_areas(config, paths, report); break;
    case Stage::Classify: run_classify(config, paths, report); break;
    case Stage::Methods: run_methods(config, paths, report); break;
    case Stage::Techniques: run_techniques(config, paths, report); break;
    case Stage::Map: run_map(config, paths, report); break;
    case Stage::Temporal: run_temporal(config, paths, report); break;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

RunReport run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages) {
  validate(config);
  write_run_record(config);
  const std::set<Stage> requested(stages.begin(), stages.end());
  RunReport report;
  for (const Stage stage : all_stages()) {
    if (stages.empty() || requested.count(stage) > 0) {
      report.stages.push_back(run_stage(config, stage));
    }
  }
  return report;
}

std::string format_report(const RunReport& report) {
  std::string out;
  for (const auto& stage : report.stages) {
    out += stage_name(stage.stage) + ":";
    for (const auto& [label, count] : stage.counts) {
      out += " " + label + "=" + std::to_string(count);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, " diagnostics=%zu time=%.2fs", stage.diagnostics,
                  stage.seconds);
    out += buf;
    out += "\n";
  }
  return out;
}

void write_run_record(const PipelineConfig& config) {
  json j;
  j["corpus_dir"] = config.corpus_dir;
  j["run_dir"] = config.run_dir;
  j["jobs"] = config.jobs;

  json areas;
  areas["scheme"] = config.scheme;
  areas["per_k_normalize"] = config.per_k_normalize;
  json score_thresholds = json::object();
  for (const auto& [k, v] : config.score_thresholds) score_thresholds[std::to_string(k)] = v;
  areas["score_thresholds"] = score_thresholds;
  json count_thresholds = json::object();
  for (const auto& [k, v] : config.count_thresholds) count_thresholds[std::to_string(k)] = v;
  areas["count_thresholds"] = count_thresholds;
  areas["rounds"] = config.rounds;
  areas["min_support"] = config.min_support;
  areas["min_keyword_support"] = config.min_keyword_support;
  areas["seed_keywords"] = config.seed_keywords_file;
  j["areas"] = areas;

  json classify;
  classify["lambda"] = config.lambda;
  j["classify"] = classify;

  json methods;
  methods["citation_patterns"] = config.citation_patterns_file;
  methods["method_keywords"] = config.method_keywords_file;
  j["methods"] = methods;

  json techniques;
  techniques["k1"] = config.k1;
  techniques["k2"] = config.k2;
  techniques["top_k"] = config.top_k;
  techniques["all_method_contexts"] = config.all_method_contexts;
  techniques["stop_phrases"] = config.stop_phrases_file;
  j["techniques"] = techniques;

  json map;
  map["mention_granularity"] = config.mention_granularity;
  j["map"] = map;

  json temporal_cfg;
  temporal_cfg["from"] = config.from_year;
  temporal_cfg["to"] = config.to_year;
  temporal_cfg["width"] = config.width_years;
  temporal_cfg["areas"] = config.share_areas;
  temporal_cfg["evolution_area"] = config.evolution_area;
  temporal_cfg["venue"] = config.venue;
  temporal_cfg["venue_weight"] = temporal::venue_weight_name(config.venue_weight);
  temporal_cfg["within_window"] = config.within_window;
  temporal_cfg["venue_top"] = config.venue_top;
  j["temporal"] = temporal_cfg;

  json text_cfg;
  text_cfg["stopwords"] = config.stopwords_file;
  text_cfg["pos_lexicon"] = config.pos_lexicon_file;
  j["text"] = text_cfg;

  jsonl::write_text_file(RunPaths(config.run_dir).run_record_file(), j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Queries

std::vector<std::string> query_techniques_of_area(const RunPaths& paths, const std::string& area,
                                                  std::size_t top) {
  require(paths.map_file(), Stage::Map);
  areamap::AreaTechniqueMap map;
  map.table = load_map_table(paths.map_file());
  std::vector<std::string> lines;
  for (const auto& [technique, count] : areamap::techniques_for_area(map, area, top)) {
    lines.push_back(technique + "\t" + std::to_string(count));
  }
  return lines;
}

std::vector<std::string> query_areas_of_technique(const RunPaths& paths,
                                                  const std::string& technique) {
  require(paths.map_file(), Stage::Map);
  areamap::AreaTechniqueMap map;
  map.table = load_map_table(paths.map_file());
  std::vector<std::string> lines;
  for (const auto& [area, count] : areamap::areas_for_technique(map, technique)) {
    lines.push_back(area + "\t" + std::to_string(count));
  }
  return lines;
}

std::vector<std::string> query_paper_area(const RunPaths& paths, const std::string& paper_id) {
  require(paths.assignments_file(), Stage::Classify);
  for (const auto& a : load_assignments(paths.assignments_file())) {
    if (a.paper_id != paper_id) continue;
    if (a.area.empty()) return {};
    return {a.area + "\t" + areaclass::route_name(a.route)};
  }
  return {};
}

std::vector<std::string> query_paper_techniques(const RunPaths& paths,
                                                const std::string& paper_id) {
  require(paths.techniques_file(), Stage::Techniques);
  for (const auto& p : load_profiles(paths.techniques_file())) {
    if (p.paper_id != paper_id) continue;
    std::vector<std::string> lines;
    for (const auto& t : p.techniques) {
      lines.push_back(t.phrase + "\t" + std::to_string(t.score));
    }
    return lines;
  }
  return {};
}

}  // namespace techmap::pipeline
