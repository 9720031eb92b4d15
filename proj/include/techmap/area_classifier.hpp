#ifndef TECHMAP_AREA_CLASSIFIER_HPP
#define TECHMAP_AREA_CLASSIFIER_HPP

// Area assignment per paper: a single direct string match on the title, then
// on the abstract, decides immediately; everything else is scored against
// per-area unigram language models with Jelinek-Mercer smoothing, with priors
// proportional to each area's single-direct-match paper count.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "techmap/area_lexicon.hpp"
#include "techmap/corpus.hpp"

namespace techmap::areaclass {

enum class Route { TitleDirect, AbstractDirect, LanguageModel, Unclassified };

std::string route_name(Route route);
Route route_from_name(const std::string& name);

struct AreaAssignment {
  std::string paper_id;
  std::string area;  // empty when unclassified
  Route route = Route::Unclassified;
  std::optional<double> score;  // present exactly for the language-model route

  bool operator==(const AreaAssignment&) const = default;
};

struct AreaModel {
  std::string area;
  std::map<std::string, int> term_counts;  // stemmed term -> count
  long long total_terms = 0;
  int prior_count = 0;  // single-direct-match papers backing this area

  bool operator==(const AreaModel&) const = default;
};

struct CollectionModel {
  std::map<std::string, int> term_counts;
  long long total_terms = 0;
  int total_priors = 0;  // sum of prior_count over all modeled areas

  bool operator==(const CollectionModel&) const = default;
};

struct ClassifierConfig {
  double lambda = 0.7;  // weight of the collection component
};

// All lexicon areas occurring in the text as token-boundary phrase matches.
// Sorted, duplicate-free. Matching is on surface tokens (no stemming).
std::vector<std::string> direct_match(const std::string& normalized_text,
                                      const std::vector<std::string>& areas);

struct RoutingDecision {
  Route route = Route::Unclassified;
  std::string area;  // set for the two direct routes

  bool operator==(const RoutingDecision&) const = default;
};

// Exactly one title match assigns directly; else exactly one abstract match;
// else the language-model route. A paper with no title text and no abstract
// is unclassifiable.
RoutingDecision route_paper(const corpus::PaperRecord& paper,
                            const std::vector<std::string>& areas);

// Language models from the single-direct-match papers: per area, term counts
// over the stemmed stopword-filtered title+abstract bags of its direct
// papers; the collection model is their union. Areas without direct papers
// get no model and can never win the LM route.
std::pair<std::vector<AreaModel>, CollectionModel> build_models(
    const corpus::Corpus& corpus, const std::vector<AreaAssignment>& direct_assignments);

// log P(d) + sum over query terms of
// log[(1-lambda) c(w,d)/|d| + lambda c(w,C)/|C|], with P(d) the prior share.
// Query terms absent from the collection must be dropped by the caller
// (classify_paper does); lambda = 0 with an unseen term yields -infinity.
double score_area(const std::vector<std::string>& query_terms, const AreaModel& model,
                  const CollectionModel& collection, double lambda);

// The stemmed stopword-filtered title+abstract query of a paper.
std::vector<std::string> query_terms(const corpus::PaperRecord& paper);

AreaAssignment classify_paper(const corpus::PaperRecord& paper,
                              const std::vector<std::string>& areas,
                              const std::vector<AreaModel>& models,
                              const CollectionModel& collection, const ClassifierConfig& config);

// Full corpus pass: route everything, build models from the direct routes,
// then resolve the language-model papers. Output in corpus (paper id) order.
std::vector<AreaAssignment> classify_all(const corpus::Corpus& corpus,
                                         const std::vector<std::string>& areas,
                                         const ClassifierConfig& config, int jobs = 1);
std::vector<AreaAssignment> classify_all(const corpus::Corpus& corpus,
                                         const arealex::AreaLexicon& lexicon,
                                         const ClassifierConfig& config, int jobs = 1);

}  // namespace techmap::areaclass

#endif
