#include "techmap/area_classifier.hpp"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "techmap/diagnostics.hpp"
#include "techmap/text.hpp"

using namespace techmap;
using areaclass::AreaAssignment;
using areaclass::AreaModel;
using areaclass::ClassifierConfig;
using areaclass::CollectionModel;
using areaclass::Route;

namespace {

corpus::PaperRecord make_paper(std::string id, std::string title, std::string abstract = "") {
  corpus::PaperRecord p;
  p.id = std::move(id);
  p.title = std::move(title);
  p.year = 2005;
  p.venue = "acl";
  if (!abstract.empty()) {
    p.text = text::normalize_ocr(abstract);
    p.has_text = true;
    p.abstract_span = text::CharSpan{0, p.text.size()};
  }
  return p;
}

// Two-area micro model used for the frozen smoothing arithmetic below.
AreaModel model_pa() {
  AreaModel m;
  m.area = "pa";
  m.term_counts = {{"pars", 3}, {"treebank", 1}};
  m.total_terms = 4;
  m.prior_count = 2;
  return m;
}

AreaModel model_tb() {
  AreaModel m;
  m.area = "tb";
  m.term_counts = {{"translat", 2}, {"align", 2}};
  m.total_terms = 4;
  m.prior_count = 1;
  return m;
}

CollectionModel micro_collection() {
  CollectionModel c;
  c.term_counts = {{"pars", 3}, {"treebank", 1}, {"translat", 2}, {"align", 2}};
  c.total_terms = 8;
  c.total_priors = 3;
  return c;
}

const std::vector<std::string> kAreas = {"machine translation", "dependency parsing"};

corpus::Corpus fixture_corpus() {
  std::vector<corpus::PaperRecord> papers;
  papers.push_back(make_paper("p01", "improving machine translation output"));
  papers.push_back(make_paper("p02", "a fast dependency parsing model", "we parse treebanks."));
  papers.push_back(
      make_paper("p03", "neural approaches", "this work studies machine translation decoding."));
  papers.push_back(make_paper("p04", "machine translation for dependency parsing",
                              "dependency parsing helps."));
  papers.push_back(
      make_paper("p05", "decoding experiments", "our decoder performs beam search."));
  papers.push_back(make_paper("p06", ""));
  papers.push_back(make_paper("p07", "treebank experiments"));
  papers.push_back(make_paper("p08", "statistical machine translation systems"));
  return corpus::Corpus(std::move(papers), {});
}

}  // namespace

TEST_CASE("route names round-trip and reject unknown strings") {
  for (Route r : {Route::TitleDirect, Route::AbstractDirect, Route::LanguageModel,
                  Route::Unclassified}) {
    CHECK(areaclass::route_from_name(areaclass::route_name(r)) == r);
  }
  CHECK(areaclass::route_name(Route::TitleDirect) == "title-direct");
  CHECK(areaclass::route_name(Route::LanguageModel) == "language-model");
  CHECK_THROWS_AS(areaclass::route_from_name("direct"), FatalError);
}

TEST_CASE("direct_match finds token-boundary phrase occurrences") {
  const std::vector<std::string> areas = {"machine translation", "statistical machine translation",
                                          "dependency parsing"};
  CHECK(areaclass::direct_match("statistical machine translation improves quality", areas) ==
        std::vector<std::string>{"machine translation", "statistical machine translation"});
  CHECK(areaclass::direct_match("a dependency parsing survey", areas) ==
        std::vector<std::string>{"dependency parsing"});
  CHECK(areaclass::direct_match("nothing relevant here", areas).empty());
  CHECK(areaclass::direct_match("", areas).empty());

  SUBCASE("matching is on whole tokens, not substrings") {
    CHECK(areaclass::direct_match("the translationese effect", {"translation"}).empty());
    CHECK(areaclass::direct_match("machine translations", {"machine translation"}).empty());
  }
  SUBCASE("repeated occurrences report the area once") {
    CHECK(areaclass::direct_match("machine translation beats machine translation", areas) ==
          std::vector<std::string>{"machine translation"});
  }
  SUBCASE("punctuation separates tokens but does not block adjacency") {
    CHECK(areaclass::direct_match("we study machine translation.", areas) ==
          std::vector<std::string>{"machine translation"});
  }
}

TEST_CASE("route_paper applies title-then-abstract precedence") {
  SUBCASE("exactly one title match decides immediately") {
    const auto r = areaclass::route_paper(
        make_paper("x", "improving machine translation output"), kAreas);
    CHECK(r.route == Route::TitleDirect);
    CHECK(r.area == "machine translation");
  }
  SUBCASE("ambiguous title falls through to a unique abstract match") {
    const auto r = areaclass::route_paper(
        make_paper("x", "machine translation for dependency parsing",
                   "dependency parsing helps."),
        kAreas);
    CHECK(r.route == Route::AbstractDirect);
    CHECK(r.area == "dependency parsing");
  }
  SUBCASE("no title match but a unique abstract match") {
    const auto r = areaclass::route_paper(
        make_paper("x", "neural approaches", "this work studies machine translation decoding."),
        kAreas);
    CHECK(r.route == Route::AbstractDirect);
    CHECK(r.area == "machine translation");
  }
  SUBCASE("no matches anywhere routes to the language model") {
    const auto r = areaclass::route_paper(
        make_paper("x", "decoding experiments", "beam search works."), kAreas);
    CHECK(r.route == Route::LanguageModel);
    CHECK(r.area.empty());
  }
  SUBCASE("ambiguous abstract also routes to the language model") {
    const auto r = areaclass::route_paper(
        make_paper("x", "a survey", "machine translation and dependency parsing overlap."),
        kAreas);
    CHECK(r.route == Route::LanguageModel);
  }
  SUBCASE("no title text and no abstract is unclassifiable") {
    const auto r = areaclass::route_paper(make_paper("x", ""), kAreas);
    CHECK(r.route == Route::Unclassified);
  }
  SUBCASE("an abstract alone can still classify a title-less paper") {
    const auto r = areaclass::route_paper(make_paper("x", "", "dependency parsing helps."),
                                          kAreas);
    CHECK(r.route == Route::AbstractDirect);
    CHECK(r.area == "dependency parsing");
  }
}

TEST_CASE("query_terms is the stemmed stopword-filtered title+abstract bag") {
  const auto terms = areaclass::query_terms(
      make_paper("x", "the parsing of translations", "we align words."));
  CHECK(terms == std::vector<std::string>{"pars", "translat", "align", "word"});
  CHECK(areaclass::query_terms(make_paper("x", "")).empty());
}

TEST_CASE("build_models aggregates single-direct-match papers per area") {
  std::vector<corpus::PaperRecord> papers;
  papers.push_back(make_paper("a1", "parsing treebanks"));
  papers.push_back(make_paper("a2", "parsing parsing"));
  papers.push_back(make_paper("b1", "translation alignment", "translations are aligned."));
  const corpus::Corpus c(std::move(papers), {});

  std::vector<AreaAssignment> direct;
  direct.push_back({"a1", "pa", Route::TitleDirect, std::nullopt});
  direct.push_back({"a2", "pa", Route::AbstractDirect, std::nullopt});
  direct.push_back({"b1", "tb", Route::TitleDirect, std::nullopt});
  direct.push_back({"zz", "pa", Route::TitleDirect, std::nullopt});       // unknown paper: skipped
  direct.push_back({"b1", "tb", Route::LanguageModel, -1.0});             // non-direct: skipped

  const auto [models, collection] = areaclass::build_models(c, direct);
  REQUIRE(models.size() == 2);
  CHECK(models[0] == model_pa());
  CHECK(models[1] == model_tb());
  CHECK(collection == micro_collection());
}

TEST_CASE("score_area matches the hand-computed smoothing arithmetic") {
  const auto pa = model_pa();
  const auto tb = model_tb();
  const auto col = micro_collection();
  const std::vector<std::string> query = {"pars", "treebank", "align"};

  // ln(prior share) + sum of ln[(1-l)*c(w,d)/|d| + l*c(w,C)/|C|], frozen
  // against an independent arbitrary-precision computation.
  CHECK(areaclass::score_area(query, pa, col, 0.7) ==
        doctest::Approx(-4.683976678923368).epsilon(1e-12));
  CHECK(areaclass::score_area(query, tb, col, 0.7) ==
        doctest::Approx(-5.996163067889537).epsilon(1e-12));
  CHECK(areaclass::score_area(query, pa, col, 0.1) ==
        doctest::Approx(-5.870907584568873).epsilon(1e-12));
  CHECK(areaclass::score_area(query, tb, col, 0.1) ==
        doctest::Approx(-9.508493744295258).epsilon(1e-12));
  CHECK(areaclass::score_area(query, pa, col, 1.0) ==
        doctest::Approx(-4.852030263919617).epsilon(1e-12));
  CHECK(areaclass::score_area(query, tb, col, 1.0) ==
        doctest::Approx(-5.545177444479563).epsilon(1e-12));

  SUBCASE("lambda 0 is the pure area model") {
    CHECK(areaclass::score_area({"pars"}, pa, col, 0.0) ==
          doctest::Approx(std::log(2.0 / 3.0) + std::log(3.0 / 4.0)).epsilon(1e-12));
    CHECK(areaclass::score_area({"align"}, pa, col, 0.0) ==
          -std::numeric_limits<double>::infinity());
  }
  SUBCASE("empty query scores the prior alone") {
    CHECK(areaclass::score_area({}, pa, col, 0.7) ==
          doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-12));
    CHECK(areaclass::score_area({}, tb, col, 0.7) ==
          doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));
  }
}

TEST_CASE("smoothed per-area distributions sum to one over the collection vocabulary") {
  const auto corpus = fixture_corpus();
  const auto assignments = areaclass::classify_all(corpus, kAreas, {});
  std::vector<AreaAssignment> direct;
  for (const auto& a : assignments) {
    if (a.route == Route::TitleDirect || a.route == Route::AbstractDirect) direct.push_back(a);
  }
  const auto [models, collection] = areaclass::build_models(corpus, direct);
  REQUIRE(!models.empty());
  REQUIRE(collection.total_terms > 0);
  for (const double lambda : {0.1, 0.7, 1.0}) {
    for (const auto& m : models) {
      double sum = 0.0;
      for (const auto& [w, c_col] : collection.term_counts) {
        double p_doc = 0.0;
        const auto it = m.term_counts.find(w);
        if (it != m.term_counts.end()) {
          p_doc = static_cast<double>(it->second) / static_cast<double>(m.total_terms);
        }
        sum += (1.0 - lambda) * p_doc +
               lambda * static_cast<double>(c_col) / static_cast<double>(collection.total_terms);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("classify_paper resolves the language-model route") {
  std::vector<corpus::PaperRecord> papers;
  papers.push_back(make_paper("a1", "parsing treebanks"));
  papers.push_back(make_paper("a2", "parsing parsing"));
  papers.push_back(make_paper("b1", "translation alignment", "translations are aligned."));
  const corpus::Corpus c(std::move(papers), {});
  std::vector<AreaAssignment> direct = {{"a1", "pa", Route::TitleDirect, std::nullopt},
                                        {"a2", "pa", Route::TitleDirect, std::nullopt},
                                        {"b1", "tb", Route::TitleDirect, std::nullopt}};
  const auto [models, collection] = areaclass::build_models(c, direct);
  const std::vector<std::string> no_match_areas = {"quantum chromodynamics"};

  SUBCASE("out-of-vocabulary query terms are dropped before scoring") {
    const auto a = areaclass::classify_paper(
        make_paper("q1", "parsing treebanks alignment zebra"), no_match_areas, models, collection,
        {});
    CHECK(a.route == Route::LanguageModel);
    CHECK(a.area == "pa");
    REQUIRE(a.score.has_value());
    CHECK(*a.score == doctest::Approx(-4.683976678923368).epsilon(1e-12));
  }
  SUBCASE("a fully out-of-vocabulary query reduces to the prior") {
    const auto a = areaclass::classify_paper(make_paper("q2", "zebra quagga"), no_match_areas,
                                             models, collection, {});
    CHECK(a.route == Route::LanguageModel);
    CHECK(a.area == "pa");  // prior 2/3 beats 1/3
    REQUIRE(a.score.has_value());
    CHECK(*a.score == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-12));
  }
  SUBCASE("direct matches take precedence and carry no score") {
    const auto a = areaclass::classify_paper(make_paper("q3", "parsing treebanks"),
                                             {"parsing"}, models, collection, {});
    CHECK(a.route == Route::TitleDirect);
    CHECK(a.area == "parsing");
    CHECK(!a.score.has_value());
  }
  SUBCASE("no models means the language-model route is unavailable") {
    const auto a = areaclass::classify_paper(make_paper("q4", "parsing treebanks"),
                                             no_match_areas, {}, {}, {});
    CHECK(a.route == Route::Unclassified);
    CHECK(a.area.empty());
    CHECK(!a.score.has_value());
  }
  SUBCASE("a paper with no title text and no abstract stays unclassified") {
    const auto a = areaclass::classify_paper(make_paper("q5", ""), no_match_areas, models,
                                             collection, {});
    CHECK(a.route == Route::Unclassified);
  }
}

TEST_CASE("classify_paper tie-breaks by higher prior, then area name") {
  AreaModel alpha;
  alpha.area = "alpha";
  alpha.term_counts = {{"x", 1}};
  alpha.total_terms = 1;
  alpha.prior_count = 1;
  AreaModel beta = alpha;
  beta.area = "beta";

  SUBCASE("identical models with equal priors pick the lexicographically first area") {
    CollectionModel col;
    col.term_counts = {{"x", 2}};
    col.total_terms = 2;
    col.total_priors = 2;
    const auto a = areaclass::classify_paper(make_paper("q", "x"), {"zzz"}, {alpha, beta}, col,
                                             {});
    CHECK(a.area == "alpha");
  }
  SUBCASE("equal scores with unequal priors pick the higher prior") {
    // With lambda 0 a term unseen in both areas scores both at -infinity, so
    // only the tie-break distinguishes them.
    beta.prior_count = 2;
    CollectionModel col;
    col.term_counts = {{"x", 2}, {"zebra", 1}};
    col.total_terms = 3;
    col.total_priors = 3;
    ClassifierConfig cfg;
    cfg.lambda = 0.0;
    const auto a =
        areaclass::classify_paper(make_paper("q", "zebra"), {"zzz"}, {alpha, beta}, col, cfg);
    CHECK(a.area == "beta");
    REQUIRE(a.score.has_value());
    CHECK(*a.score == -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("classify_all routes the fixture corpus end to end") {
  const auto corpus = fixture_corpus();
  const auto out = areaclass::classify_all(corpus, kAreas, {});
  REQUIRE(out.size() == corpus.papers().size());
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i].paper_id == corpus.papers()[i].id);

  auto by_id = [&](const std::string& id) -> const AreaAssignment& {
    for (const auto& a : out) {
      if (a.paper_id == id) return a;
    }
    REQUIRE(false);
    return out.front();
  };
  CHECK(by_id("p01") == AreaAssignment{"p01", "machine translation", Route::TitleDirect,
                                       std::nullopt});
  CHECK(by_id("p02") == AreaAssignment{"p02", "dependency parsing", Route::TitleDirect,
                                       std::nullopt});
  CHECK(by_id("p03").route == Route::AbstractDirect);
  CHECK(by_id("p03").area == "machine translation");
  CHECK(by_id("p04").route == Route::AbstractDirect);
  CHECK(by_id("p04").area == "dependency parsing");
  CHECK(by_id("p08").route == Route::TitleDirect);
  CHECK(by_id("p08").area == "machine translation");
  CHECK(by_id("p06") == AreaAssignment{"p06", "", Route::Unclassified, std::nullopt});

  // p05 shares "decod" with the machine translation model; p07 shares
  // "treebank" with the dependency parsing model, which outweighs the
  // larger machine translation prior at the default lambda.
  CHECK(by_id("p05").route == Route::LanguageModel);
  CHECK(by_id("p05").area == "machine translation");
  CHECK(by_id("p05").score.has_value());
  CHECK(by_id("p07").route == Route::LanguageModel);
  CHECK(by_id("p07").area == "dependency parsing");
  CHECK(by_id("p07").score.has_value());

  SUBCASE("language-model winners agree with brute force over score_area") {
    std::vector<AreaAssignment> direct;
    for (const auto& a : out) {
      if (a.route == Route::TitleDirect || a.route == Route::AbstractDirect) direct.push_back(a);
    }
    const auto [models, collection] = areaclass::build_models(corpus, direct);
    for (const auto& a : out) {
      if (a.route != Route::LanguageModel) continue;
      const auto* paper = corpus.find(a.paper_id);
      REQUIRE(paper != nullptr);
      std::vector<std::string> query;
      for (const auto& t : areaclass::query_terms(*paper)) {
        if (collection.term_counts.count(t)) query.push_back(t);
      }
      const AreaModel* best = nullptr;
      double best_score = -std::numeric_limits<double>::infinity();
      for (const auto& m : models) {
        const double s = areaclass::score_area(query, m, collection, 0.7);
        if (best == nullptr || s > best_score ||
            (s == best_score && (m.prior_count > best->prior_count ||
                                 (m.prior_count == best->prior_count && m.area < best->area)))) {
          best = &m;
          best_score = s;
        }
      }
      REQUIRE(best != nullptr);
      CHECK(a.area == best->area);
      CHECK(*a.score == doctest::Approx(best_score).epsilon(1e-12));
    }
  }
  SUBCASE("parallel classification equals serial") {
    CHECK(areaclass::classify_all(corpus, kAreas, {}, 4) == out);
  }
  SUBCASE("the lexicon overload matches the plain area list") {
    arealex::AreaLexicon lex;
    lex.scheme = 3;
    lex.areas.push_back({"machine translation", 2, 5, 0.5, 1});
    lex.areas.push_back({"dependency parsing", 2, 3, 0.3, 2});
    CHECK(areaclass::classify_all(corpus, lex, {}) == out);
  }
}

TEST_CASE("classify_all with lambda 1 reduces the mixture to the prior argmax") {
  const auto corpus = fixture_corpus();
  ClassifierConfig cfg;
  cfg.lambda = 1.0;
  const auto out = areaclass::classify_all(corpus, kAreas, cfg);
  // Direct priors: machine translation 3 (p01, p03, p08), dependency
  // parsing 2 (p02, p04). At lambda 1 the collection term is identical for
  // every area, so every language-model paper goes to the larger prior.
  for (const auto& a : out) {
    if (a.route == Route::LanguageModel) CHECK(a.area == "machine translation");
  }
  CHECK(out[4].paper_id == "p05");
  CHECK(out[4].area == "machine translation");
  CHECK(out[6].paper_id == "p07");
  CHECK(out[6].area == "machine translation");
}

TEST_CASE("classify_all without any direct matches leaves everything unclassified") {
  const auto corpus = fixture_corpus();
  const auto out = areaclass::classify_all(corpus, {"quantum chromodynamics"}, {});
  REQUIRE(out.size() == corpus.papers().size());
  for (const auto& a : out) {
    CHECK(a.route == Route::Unclassified);
    CHECK(a.area.empty());
    CHECK(!a.score.has_value());
  }
}
