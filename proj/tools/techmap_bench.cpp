// Benchmark driver: times every parallel kernel against its serial
// reference on a synthetic corpus and verifies both produce identical
// results. Run with --quick for a small smoke-sized corpus.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "techmap/area_classifier.hpp"
#include "techmap/area_lexicon.hpp"
#include "techmap/area_map.hpp"
#include "techmap/citations.hpp"
#include "techmap/corpus.hpp"
#include "techmap/technique_miner.hpp"
#include "techmap/text.hpp"
#include "techmap/wordlists.hpp"

namespace {

using namespace techmap;

struct Synthetic {
  std::map<std::string, corpus::MetadataRow> metadata;
  std::map<std::string, std::string> texts;
  std::vector<corpus::CitationEdge> edges;
};

// A corpus with enough shared title phrases for a lexicon, method sections,
// and resolvable citation mentions.
Synthetic generate(int papers, std::mt19937& rng) {
  const std::vector<std::string> areas = {
      "statistical machine translation", "dependency parsing", "word sense disambiguation",
      "question answering",              "information extraction"};
  const std::vector<std::string> openers = {"efficient models", "new algorithms",
                                            "a fast system",    "improved training",
                                            "robust methods",   "a unified framework"};
  const std::vector<std::string> surnames = {
      "smith", "jones", "chen",  "kumar",  "garcia", "brown", "davis", "miller",
      "moore", "clark", "lewis", "walker", "young",  "allen", "king",  "wright"};
  const std::vector<std::string> fillers = {
      "The corpus contains many sentences.", "Our experiments cover several languages.",
      "The annotation guidelines were refined.", "Training converges after a few passes.",
      "The evaluation uses held-out data."};

  std::uniform_int_distribution<int> area_pick(0, static_cast<int>(areas.size()) - 1);
  std::uniform_int_distribution<int> opener_pick(0, static_cast<int>(openers.size()) - 1);
  std::uniform_int_distribution<int> surname_pick(0, static_cast<int>(surnames.size()) - 1);
  std::uniform_int_distribution<int> filler_pick(0, static_cast<int>(fillers.size()) - 1);
  std::uniform_int_distribution<int> year_pick(1980, 2013);
  std::uniform_int_distribution<int> cite_count(1, 4);

  Synthetic out;
  std::vector<std::string> ids;
  std::vector<std::string> authors;
  std::vector<int> years;
  for (int i = 0; i < papers; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "P%05d", i);
    ids.emplace_back(id);
    authors.push_back(surnames[static_cast<std::size_t>(surname_pick(rng))]);
    years.push_back(year_pick(rng));
  }
  for (int i = 0; i < papers; ++i) {
    const std::string& id = ids[static_cast<std::size_t>(i)];
    const std::string area = areas[static_cast<std::size_t>(area_pick(rng))];
    corpus::MetadataRow row;
    row.title = openers[static_cast<std::size_t>(opener_pick(rng))] + " for " + area;
    row.year = years[static_cast<std::size_t>(i)];
    row.venue = i % 3 == 0 ? "acl" : "coling";
    row.authors = {authors[static_cast<std::size_t>(i)]};
    out.metadata[id] = row;

    std::string text = "Abstract\nWe study " + area + " at scale.\n1 Introduction\n";
    text += fillers[static_cast<std::size_t>(filler_pick(rng))] + "\n";
    text += "2 Method\n";
    if (i > 0) {
      std::set<int> cited;
      const int n = cite_count(rng);
      std::uniform_int_distribution<int> target_pick(0, i - 1);
      for (int c = 0; c < n; ++c) cited.insert(target_pick(rng));
      for (const int t : cited) {
        const auto ti = static_cast<std::size_t>(t);
        text += "We use the system of (" + authors[ti] + ", " + std::to_string(years[ti]) +
                ") in our pipeline.\n";
        out.edges.push_back({id, ids[ti]});
      }
    }
    text += fillers[static_cast<std::size_t>(filler_pick(rng))] + "\n3 Conclusion\n";
    text += fillers[static_cast<std::size_t>(filler_pick(rng))] + "\n";
    out.texts[id] = text;
  }
  return out;
}

struct Timing {
  double serial = 0.0;
  double parallel = 0.0;
  bool identical = false;
};

template <typename Fn>
Timing compare(Fn&& fn, int jobs) {
  using clock = std::chrono::steady_clock;
  Timing t;
  const auto s0 = clock::now();
  const auto serial_result = fn(1);
  t.serial = std::chrono::duration<double>(clock::now() - s0).count();
  const auto p0 = clock::now();
  const auto parallel_result = fn(jobs);
  t.parallel = std::chrono::duration<double>(clock::now() - p0).count();
  t.identical = serial_result == parallel_result;
  return t;
}

void report(const char* kernel, const Timing& t) {
  std::printf("%-22s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   identical %s\n", kernel,
              t.serial, t.parallel, t.parallel > 0.0 ? t.serial / t.parallel : 0.0,
              t.identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"techmap_bench: serial reference vs parallel kernels"};
  int papers = 400;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  bool quick = false;
  app.add_option("--papers", papers, "synthetic corpus size")->capture_default_str();
  app.add_option("--jobs", jobs, "parallel worker count")->capture_default_str();
  app.add_flag("--quick", quick, "tiny corpus smoke run");
  CLI11_PARSE(app, argc, argv);
  if (quick) papers = 40;
  if (jobs < 2) jobs = 2;

  std::mt19937 rng(7);
  const Synthetic input = generate(papers, rng);
  std::printf("papers %d, edges %zu, jobs %d\n", papers, input.edges.size(), jobs);

  bool all_identical = true;
  const auto check = [&](const char* kernel, const Timing& t) {
    report(kernel, t);
    all_identical = all_identical && t.identical;
  };

  check("build_corpus", compare(
                            [&](int j) {
                              return corpus::build_corpus(input.metadata, input.texts,
                                                          input.edges, j);
                            },
                            jobs));
  const corpus::Corpus corpus =
      corpus::build_corpus(input.metadata, input.texts, input.edges, jobs);

  std::vector<std::string> titles;
  for (const auto& p : corpus.papers()) titles.push_back(p.title);
  const arealex::KeywordSet seeds = arealex::KeywordSet::seeds();
  check("harvest_candidates", compare(
                                  [&](int j) {
                                    return arealex::harvest_candidates(
                                        titles, seeds, text::default_lexicons(), j);
                                  },
                                  jobs));

  arealex::LexiconConfig lexicon_config;
  lexicon_config.count_thresholds = {{2, 4}, {3, 3}, {4, 3}, {5, 3}};
  const arealex::AreaLexicon lexicon = arealex::build_lexicon(titles, seeds, lexicon_config);
  check("classify_all", compare(
                            [&](int j) {
                              return areaclass::classify_all(corpus, lexicon, {}, j);
                            },
                            jobs));
  const auto assignments = areaclass::classify_all(corpus, lexicon, {}, jobs);

  check("extract_contexts", compare(
                                [&](int j) {
                                  DiagnosticList diags;
                                  return citations::extract_contexts(corpus, diags, j);
                                },
                                jobs));
  DiagnosticList diags;
  const auto contexts = citations::extract_contexts(corpus, diags, jobs);
  const auto stats = citations::citation_stats_all(corpus, contexts);

  std::map<std::string, std::string> area_by_paper;
  for (const auto& a : assignments) area_by_paper[a.paper_id] = a.area;
  techminer::MethodMinerConfig miner;
  miner.k1 = 3;
  miner.k2 = 0.5;
  check("mine_techniques", compare(
                               [&](int j) {
                                 return techminer::mine_techniques(
                                     stats, contexts, area_by_paper, miner,
                                     wordlists::stop_phrases(), false, j);
                               },
                               jobs));
  const auto mining = techminer::mine_techniques(stats, contexts, area_by_paper, miner,
                                                 wordlists::stop_phrases(), false, jobs);

  check("build_map", compare(
                         [&](int j) {
                           DiagnosticList map_diags;
                           return areamap::build_map(assignments, mining.profiles, contexts,
                                                     corpus, map_diags, {}, j);
                         },
                         jobs));

  if (!all_identical) {
    std::printf("FAILURE: a parallel kernel diverged from its serial reference\n");
    return 1;
  }
  std::printf("all parallel kernels match their serial reference\n");
  return 0;
}
