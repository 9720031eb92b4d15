#include "techmap/area_map.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace techmap;
using areaclass::AreaAssignment;
using areaclass::Route;
using areamap::AreaTechniqueMap;
using areamap::MapOptions;
using areamap::Witness;
using citations::CitationContext;
using techminer::MethodPaperProfile;

namespace {

CitationContext ctx(std::string citing, std::string cited, bool in_method,
                    std::size_t offset = 0) {
  CitationContext c;
  c.citing_id = std::move(citing);
  c.cited_id = std::move(cited);
  c.offset = offset;
  c.sentence = "( ) is cited .";
  c.in_method_section = in_method;
  return c;
}

MethodPaperProfile profile(std::string id, std::vector<std::string> techniques) {
  MethodPaperProfile p;
  p.paper_id = std::move(id);
  int score = 10;
  for (auto& t : techniques) p.techniques.push_back({std::move(t), score--});
  return p;
}

AreaAssignment assigned(std::string id, std::string area) {
  return {std::move(id), std::move(area), Route::TitleDirect, std::nullopt};
}

corpus::PaperRecord paper(std::string id, int year) {
  corpus::PaperRecord p;
  p.id = std::move(id);
  p.year = year;
  p.venue = "acl";
  p.title = "untitled";
  return p;
}

struct Fixture {
  corpus::Corpus corpus;
  std::vector<AreaAssignment> assignments;
  std::vector<MethodPaperProfile> profiles;
  std::vector<CitationContext> contexts;
};

Fixture make_fixture() {
  Fixture f;
  std::vector<corpus::PaperRecord> papers;
  papers.push_back(paper("P1", 1995));
  papers.push_back(paper("P2", 2000));
  papers.push_back(paper("P3", 2005));
  papers.push_back(paper("P4", 2001));
  papers.push_back(paper("P5", 2002));
  papers.push_back(paper("M1", 1993));
  papers.push_back(paper("M2", 1994));
  papers.push_back(paper("X", 1990));
  f.corpus = corpus::Corpus(std::move(papers), {});

  f.assignments.push_back(assigned("P1", "pa"));
  f.assignments.push_back(assigned("P2", "pa"));
  f.assignments.push_back(assigned("P3", "qb"));
  f.assignments.push_back({"P5", "", Route::Unclassified, std::nullopt});

  f.profiles.push_back(profile("M1", {"x", "y"}));
  f.profiles.push_back(profile("M2", {"y", "z"}));

  f.contexts.push_back(ctx("P1", "M1", true, 10));
  f.contexts.push_back(ctx("P1", "M1", true, 90));
  f.contexts.push_back(ctx("P1", "M2", true, 200));
  f.contexts.push_back(ctx("P2", "M1", true));
  f.contexts.push_back(ctx("P2", "M2", false));  // outside the method section
  f.contexts.push_back(ctx("P3", "M2", true));
  f.contexts.push_back(ctx("P4", "M1", true));   // P4 has no assignment
  f.contexts.push_back(ctx("P5", "M1", true));   // P5 is unclassified
  f.contexts.push_back(ctx("P1", "X", true));    // X is not a method paper
  return f;
}

// Naive reimplementation: triple loop over papers x method papers x
// techniques, used as the equivalence oracle.
std::map<std::string, std::map<std::string, int>> brute_force_table(
    const std::vector<AreaAssignment>& assignments,
    const std::vector<MethodPaperProfile>& profiles,
    const std::vector<CitationContext>& contexts, bool mention_granularity) {
  std::map<std::string, std::map<std::string, int>> table;
  for (const auto& a : assignments) {
    if (a.area.empty()) continue;
    std::map<std::string, int> contribution;
    for (const auto& m : profiles) {
      int mentions = 0;
      for (const auto& c : contexts) {
        if (c.citing_id == a.paper_id && c.cited_id == m.paper_id && c.in_method_section) {
          ++mentions;
        }
      }
      if (mentions == 0) continue;
      for (const auto& t : m.techniques) {
        if (mention_granularity) {
          contribution[t.phrase] += mentions;
        } else {
          contribution[t.phrase] = 1;
        }
      }
    }
    for (const auto& [t, n] : contribution) table[a.area][t] += n;
  }
  return table;
}

}  // namespace

TEST_CASE("build_map applies the per-paper union-and-count rule") {
  auto f = make_fixture();
  DiagnosticList diags;
  const auto map = areamap::build_map(f.assignments, f.profiles, f.contexts, f.corpus, diags);

  // P1 cites M1 {x,y} and M2 {y,z}: y counts once for P1, not twice.
  CHECK(map.table.at("pa") == std::map<std::string, int>{{"x", 2}, {"y", 2}, {"z", 1}});
  CHECK(map.table.at("qb") == std::map<std::string, int>{{"y", 1}, {"z", 1}});
  CHECK(map.table.size() == 2);

  REQUIRE(diags.size() == 2);
  CHECK(diags[0].where == "P4");
  CHECK(diags[0].message.find("no area assignment") != std::string::npos);
  CHECK(diags[1].where == "P5");
  CHECK(diags[1].message.find("unclassified") != std::string::npos);

  SUBCASE("witnesses are per (paper, technique) with contributing method papers") {
    REQUIRE(map.witnesses.size() == 7);
    CHECK(map.witnesses[0] == Witness{"P1", "pa", "x", 1995, {"M1"}});
    CHECK(map.witnesses[1] == Witness{"P2", "pa", "x", 2000, {"M1"}});
    CHECK(map.witnesses[2] == Witness{"P1", "pa", "y", 1995, {"M1", "M2"}});
    CHECK(map.witnesses[3] == Witness{"P2", "pa", "y", 2000, {"M1"}});
    CHECK(map.witnesses[4] == Witness{"P1", "pa", "z", 1995, {"M2"}});
    CHECK(map.witnesses[5] == Witness{"P3", "qb", "y", 2005, {"M2"}});
    CHECK(map.witnesses[6] == Witness{"P3", "qb", "z", 2005, {"M2"}});
  }
  SUBCASE("counted table equals the witness tally") {
    for (const auto& [area, techniques] : map.table) {
      for (const auto& [technique, count] : techniques) {
        int tally = 0;
        for (const auto& w : map.witnesses) {
          if (w.area == area && w.technique == technique) ++tally;
        }
        CHECK(count == tally);
      }
    }
  }
  SUBCASE("parallel build equals serial") {
    DiagnosticList d2;
    CHECK(areamap::build_map(f.assignments, f.profiles, f.contexts, f.corpus, d2, {}, 4) == map);
    CHECK(d2 == diags);
  }
  SUBCASE("mention granularity counts each method-section mention") {
    DiagnosticList d2;
    MapOptions opt;
    opt.mention_granularity = true;
    const auto by_mention =
        areamap::build_map(f.assignments, f.profiles, f.contexts, f.corpus, d2, opt);
    // P1 mentions M1 twice and M2 once: x 2, y 2+1, z 1; P2 adds x 1, y 1.
    CHECK(by_mention.table.at("pa") ==
          std::map<std::string, int>{{"x", 3}, {"y", 4}, {"z", 1}});
    CHECK(by_mention.table.at("qb") == std::map<std::string, int>{{"y", 1}, {"z", 1}});
    CHECK(by_mention.witnesses == map.witnesses);
  }
  SUBCASE("zero method papers yield an empty table") {
    DiagnosticList d2;
    const auto empty = areamap::build_map(f.assignments, {}, f.contexts, f.corpus, d2);
    CHECK(empty.table.empty());
    CHECK(empty.witnesses.empty());
    CHECK(d2.empty());
  }
}

TEST_CASE("build_map equals the brute-force oracle on random corpora") {
  std::mt19937 rng(2026);
  const std::vector<std::string> area_pool = {"a0", "a1", "a2"};
  const std::vector<std::string> phrase_pool = {"t0", "t1", "t2", "t3", "t4",
                                                "t5", "t6", "t7", "t8", "t9"};
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> paper_count(1, 30);
    const int n_papers = paper_count(rng);
    std::vector<corpus::PaperRecord> records;
    std::vector<std::string> ids;
    for (int i = 0; i < n_papers; ++i) {
      ids.push_back("p" + std::to_string(100 + i));
      records.push_back(paper(ids.back(), 1990 + i % 20));
    }
    corpus::Corpus corpus(std::move(records), {});

    std::uniform_int_distribution<int> method_count(0, 5);
    std::vector<MethodPaperProfile> profiles;
    {
      auto pool = ids;
      std::shuffle(pool.begin(), pool.end(), rng);
      const int n_methods = std::min<int>(method_count(rng), static_cast<int>(pool.size()));
      for (int i = 0; i < n_methods; ++i) {
        auto phrases = phrase_pool;
        std::shuffle(phrases.begin(), phrases.end(), rng);
        std::uniform_int_distribution<int> technique_count(0, 4);
        phrases.resize(technique_count(rng));
        profiles.push_back(profile(pool[i], phrases));
      }
    }

    std::vector<AreaAssignment> assignments;
    std::uniform_int_distribution<int> fate(0, 9);
    std::uniform_int_distribution<std::size_t> area_pick(0, area_pool.size() - 1);
    for (const auto& id : ids) {
      const int outcome = fate(rng);
      if (outcome == 0) continue;  // no assignment at all
      if (outcome == 1) {
        assignments.push_back({id, "", Route::Unclassified, std::nullopt});
      } else {
        assignments.push_back(assigned(id, area_pool[area_pick(rng)]));
      }
    }

    std::vector<CitationContext> contexts;
    std::uniform_int_distribution<int> context_count(0, 60);
    std::uniform_int_distribution<std::size_t> id_pick(0, ids.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    const int n_contexts = context_count(rng);
    for (int i = 0; i < n_contexts; ++i) {
      contexts.push_back(
          ctx(ids[id_pick(rng)], ids[id_pick(rng)], coin(rng) == 1, static_cast<std::size_t>(i)));
    }

    for (const bool mention : {false, true}) {
      DiagnosticList diags;
      MapOptions opt;
      opt.mention_granularity = mention;
      const auto map =
          areamap::build_map(assignments, profiles, contexts, corpus, diags, opt, 3);
      CHECK(map.table == brute_force_table(assignments, profiles, contexts, mention));

      // Witness soundness: every witness is backed by real contexts and
      // technique lists, and tallies the key set exactly.
      std::set<std::pair<std::string, std::string>> witnessed;
      for (const auto& w : map.witnesses) {
        bool found_assignment = false;
        for (const auto& a : assignments) {
          if (a.paper_id == w.paper_id && a.area == w.area) found_assignment = true;
        }
        CHECK(found_assignment);
        REQUIRE(!w.method_papers.empty());
        for (const auto& m_id : w.method_papers) {
          bool has_context = false;
          for (const auto& c : contexts) {
            if (c.citing_id == w.paper_id && c.cited_id == m_id && c.in_method_section) {
              has_context = true;
            }
          }
          CHECK(has_context);
          bool technique_listed = false;
          for (const auto& m : profiles) {
            if (m.paper_id != m_id) continue;
            for (const auto& t : m.techniques) {
              if (t.phrase == w.technique) technique_listed = true;
            }
          }
          CHECK(technique_listed);
        }
        witnessed.insert({w.area, w.technique});
      }
      std::set<std::pair<std::string, std::string>> keys;
      for (const auto& [area, techniques] : map.table) {
        for (const auto& [technique, count] : techniques) keys.insert({area, technique});
      }
      CHECK(witnessed == keys);
    }
  }
}

TEST_CASE("rank-weighted table adds one over rank per contributing method paper") {
  auto f = make_fixture();
  DiagnosticList diags;
  const auto table =
      areamap::build_rank_weighted_table(f.assignments, f.profiles, f.contexts, diags);
  // P1: M1 gives x 1/1 + y 1/2, M2 gives y 1/1 + z 1/2; P2: M1 again.
  REQUIRE(table.count("pa") == 1);
  CHECK(table.at("pa").at("x") == doctest::Approx(2.0));
  CHECK(table.at("pa").at("y") == doctest::Approx(2.0));
  CHECK(table.at("pa").at("z") == doctest::Approx(0.5));
  CHECK(table.at("qb").at("y") == doctest::Approx(1.0));
  CHECK(table.at("qb").at("z") == doctest::Approx(0.5));
  CHECK(diags.size() == 2);
}

TEST_CASE("map queries rank by count with lexicographic ties") {
  auto f = make_fixture();
  DiagnosticList diags;
  const auto map = areamap::build_map(f.assignments, f.profiles, f.contexts, f.corpus, diags);

  using Entry = std::pair<std::string, int>;
  CHECK(areamap::techniques_for_area(map, "pa", 10) ==
        std::vector<Entry>{{"x", 2}, {"y", 2}, {"z", 1}});
  CHECK(areamap::techniques_for_area(map, "pa", 2) == std::vector<Entry>{{"x", 2}, {"y", 2}});
  CHECK(areamap::techniques_for_area(map, "pa", 0).empty());

  SUBCASE("unknown area reports a diagnostic when requested") {
    DiagnosticList qdiags;
    CHECK(areamap::techniques_for_area(map, "nope", 5, &qdiags).empty());
    REQUIRE(qdiags.size() == 1);
    CHECK(qdiags[0].where == "nope");
    CHECK(areamap::techniques_for_area(map, "nope", 5).empty());  // no list, no crash
  }
  SUBCASE("inverse query lists areas by descending count") {
    CHECK(areamap::areas_for_technique(map, "y") == std::vector<Entry>{{"pa", 2}, {"qb", 1}});
    CHECK(areamap::areas_for_technique(map, "z") == std::vector<Entry>{{"pa", 1}, {"qb", 1}});
    CHECK(areamap::areas_for_technique(map, "x") == std::vector<Entry>{{"pa", 2}});
    CHECK(areamap::areas_for_technique(map, "missing").empty());
  }
}
