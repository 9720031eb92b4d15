#include "techmap/area_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "techmap/diagnostics.hpp"
#include "techmap/parallel.hpp"

namespace techmap::areaclass {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<std::vector<std::string>> tokenize_areas(const std::vector<std::string>& areas) {
  std::vector<std::vector<std::string>> out;
  out.reserve(areas.size());
  for (const auto& a : areas) out.push_back(text::token_surfaces(a));
  return out;
}

bool contains_subsequence(const std::vector<std::string>& toks,
                          const std::vector<std::string>& phrase) {
  if (phrase.empty() || phrase.size() > toks.size()) return false;
  for (std::size_t s = 0; s + phrase.size() <= toks.size(); ++s) {
    if (std::equal(phrase.begin(), phrase.end(), toks.begin() + s)) return true;
  }
  return false;
}

std::vector<std::string> match_tokens(const std::vector<std::string>& toks,
                                      const std::vector<std::string>& areas,
                                      const std::vector<std::vector<std::string>>& area_toks) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    if (contains_subsequence(toks, area_toks[i])) out.push_back(areas[i]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RoutingDecision route_tokens(const corpus::PaperRecord& paper,
                             const std::vector<std::string>& areas,
                             const std::vector<std::vector<std::string>>& area_toks) {
  const auto title_toks = text::token_surfaces(text::normalize_ocr(paper.title));
  const auto abstract = paper.abstract_text();
  const auto abstract_toks = text::token_surfaces(abstract);
  if (title_toks.empty() && abstract_toks.empty()) return {Route::Unclassified, ""};
  const auto title_hits = match_tokens(title_toks, areas, area_toks);
  if (title_hits.size() == 1) return {Route::TitleDirect, title_hits.front()};
  const auto abstract_hits = match_tokens(abstract_toks, areas, area_toks);
  if (abstract_hits.size() == 1) return {Route::AbstractDirect, abstract_hits.front()};
  return {Route::LanguageModel, ""};
}

}  // namespace

std::string route_name(Route route) {
  switch (route) {
    case Route::TitleDirect: return "title-direct";
    case Route::AbstractDirect: return "abstract-direct";
    case Route::LanguageModel: return "language-model";
    case Route::Unclassified: return "unclassified";
  }
  return "unclassified";
}

Route route_from_name(const std::string& name) {
  if (name == "title-direct") return Route::TitleDirect;
  if (name == "abstract-direct") return Route::AbstractDirect;
  if (name == "language-model") return Route::LanguageModel;
  if (name == "unclassified") return Route::Unclassified;
  throw FatalError("unknown assignment route: " + name);
}

std::vector<std::string> direct_match(const std::string& normalized_text,
                                      const std::vector<std::string>& areas) {
  return match_tokens(text::token_surfaces(normalized_text), areas, tokenize_areas(areas));
}

RoutingDecision route_paper(const corpus::PaperRecord& paper,
                            const std::vector<std::string>& areas) {
  return route_tokens(paper, areas, tokenize_areas(areas));
}

std::vector<std::string> query_terms(const corpus::PaperRecord& paper) {
  const auto& lex = text::default_lexicons();
  auto terms = text::stemmed_bag(text::normalize_ocr(paper.title), lex);
  const auto abstract_terms = text::stemmed_bag(paper.abstract_text(), lex);
  terms.insert(terms.end(), abstract_terms.begin(), abstract_terms.end());
  return terms;
}

std::pair<std::vector<AreaModel>, CollectionModel> build_models(
    const corpus::Corpus& corpus, const std::vector<AreaAssignment>& direct_assignments) {
  std::map<std::string, AreaModel> by_area;
  CollectionModel collection;
  for (const auto& a : direct_assignments) {
    if (a.route != Route::TitleDirect && a.route != Route::AbstractDirect) continue;
    const auto* paper = corpus.find(a.paper_id);
    if (paper == nullptr) continue;
    auto& model = by_area[a.area];
    model.area = a.area;
    ++model.prior_count;
    ++collection.total_priors;
    for (const auto& term : query_terms(*paper)) {
      ++model.term_counts[term];
      ++model.total_terms;
      ++collection.term_counts[term];
      ++collection.total_terms;
    }
  }
  std::vector<AreaModel> models;
  models.reserve(by_area.size());
  for (auto& [area, m] : by_area) models.push_back(std::move(m));
  return {std::move(models), std::move(collection)};
}

double score_area(const std::vector<std::string>& query_terms, const AreaModel& model,
                  const CollectionModel& collection, double lambda) {
  if (collection.total_priors == 0) return kNegInf;
  double score = std::log(static_cast<double>(model.prior_count) /
                          static_cast<double>(collection.total_priors));
  for (const auto& w : query_terms) {
    double p_doc = 0.0;
    if (model.total_terms > 0) {
      const auto it = model.term_counts.find(w);
      if (it != model.term_counts.end()) {
        p_doc = static_cast<double>(it->second) / static_cast<double>(model.total_terms);
      }
    }
    double p_col = 0.0;
    if (collection.total_terms > 0) {
      const auto it = collection.term_counts.find(w);
      if (it != collection.term_counts.end()) {
        p_col = static_cast<double>(it->second) / static_cast<double>(collection.total_terms);
      }
    }
    const double p = (1.0 - lambda) * p_doc + lambda * p_col;
    if (p <= 0.0) return kNegInf;
    score += std::log(p);
  }
  return score;
}

AreaAssignment classify_paper(const corpus::PaperRecord& paper,
                              const std::vector<std::string>& areas,
                              const std::vector<AreaModel>& models,
                              const CollectionModel& collection, const ClassifierConfig& config) {
  AreaAssignment out;
  out.paper_id = paper.id;
  const auto routing = route_paper(paper, areas);
  out.route = routing.route;
  if (routing.route == Route::TitleDirect || routing.route == Route::AbstractDirect) {
    out.area = routing.area;
    return out;
  }
  if (routing.route == Route::Unclassified || models.empty()) {
    out.route = Route::Unclassified;
    return out;
  }
  // Language-model route: drop query terms outside the collection vocabulary.
  std::vector<std::string> query;
  for (auto& term : query_terms(paper)) {
    if (collection.term_counts.count(term)) query.push_back(std::move(term));
  }
  const AreaModel* best = nullptr;
  double best_score = kNegInf;
  for (const auto& m : models) {
    const double s = score_area(query, m, collection, config.lambda);
    if (best == nullptr) {
      best = &m;
      best_score = s;
      continue;
    }
    const bool better =
        s > best_score ||
        (s == best_score && (m.prior_count > best->prior_count ||
                             (m.prior_count == best->prior_count && m.area < best->area)));
    if (better) {
      best = &m;
      best_score = s;
    }
  }
  out.area = best->area;
  out.score = best_score;
  return out;
}

std::vector<AreaAssignment> classify_all(const corpus::Corpus& corpus,
                                         const std::vector<std::string>& areas,
                                         const ClassifierConfig& config, int jobs) {
  const auto area_toks = tokenize_areas(areas);
  const auto& papers = corpus.papers();
  // Phase 1: routing decides the direct assignments that feed the models.
  std::vector<RoutingDecision> routes(papers.size());
  parallel_for(jobs, papers.size(), [&](std::size_t i) {
    routes[i] = route_tokens(papers[i], areas, area_toks);
  });
  std::vector<AreaAssignment> direct;
  for (std::size_t i = 0; i < papers.size(); ++i) {
    if (routes[i].route == Route::TitleDirect || routes[i].route == Route::AbstractDirect) {
      AreaAssignment a;
      a.paper_id = papers[i].id;
      a.area = routes[i].area;
      a.route = routes[i].route;
      direct.push_back(std::move(a));
    }
  }
  const auto [models, collection] = build_models(corpus, direct);
  // Phase 2: resolve every paper; direct routes are reused, the rest scored.
  std::vector<AreaAssignment> out(papers.size());
  parallel_for(jobs, papers.size(), [&](std::size_t i) {
    if (routes[i].route == Route::TitleDirect || routes[i].route == Route::AbstractDirect) {
      out[i] = AreaAssignment{papers[i].id, routes[i].area, routes[i].route, std::nullopt};
      return;
    }
    if (routes[i].route == Route::Unclassified || models.empty()) {
      out[i] = AreaAssignment{papers[i].id, "", Route::Unclassified, std::nullopt};
      return;
    }
    out[i] = classify_paper(papers[i], areas, models, collection, config);
  });
  return out;
}

std::vector<AreaAssignment> classify_all(const corpus::Corpus& corpus,
                                         const arealex::AreaLexicon& lexicon,
                                         const ClassifierConfig& config, int jobs) {
  std::vector<std::string> areas;
  areas.reserve(lexicon.areas.size());
  for (const auto& a : lexicon.areas) areas.push_back(a.phrase);
  return classify_all(corpus, areas, config, jobs);
}

}  // namespace techmap::areaclass
