#ifndef TECHMAP_AREA_MAP_HPP
#define TECHMAP_AREA_MAP_HPP

// The area -> techniques mapping table. For every paper P with an assigned
// area, the method papers P cites from its method section contribute their
// technique lists; each technique is tallied once per paper (or once per
// citing mention with mention granularity). Witnesses record who contributed
// what, keyed by (paper, technique).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "techmap/area_classifier.hpp"
#include "techmap/citations.hpp"
#include "techmap/corpus.hpp"
#include "techmap/diagnostics.hpp"
#include "techmap/technique_miner.hpp"

namespace techmap::areamap {

struct Witness {
  std::string paper_id;   // citing paper P
  std::string area;       // Area(P) when the map was built
  std::string technique;
  int year = 0;           // P's publication year
  std::vector<std::string> method_papers;  // sorted M's whose lists carried the technique

  bool operator==(const Witness&) const = default;
};

struct AreaTechniqueMap {
  // area -> technique -> count; the key set is the set-semantics table.
  std::map<std::string, std::map<std::string, int>> table;
  // Sorted by (area, technique, paper_id); one entry per (paper, technique).
  std::vector<Witness> witnesses;

  bool operator==(const AreaTechniqueMap&) const = default;
};

struct MapOptions {
  // Count one per citing method-section mention instead of one per paper.
  bool mention_granularity = false;
};

// Algorithm: per paper P with area A, union the technique lists of the
// method papers P cites within its method section into table[A], counting
// once per (P, technique). Papers citing method papers without an area
// assignment are skipped with a diagnostic.
AreaTechniqueMap build_map(const std::vector<areaclass::AreaAssignment>& assignments,
                           const std::vector<techminer::MethodPaperProfile>& profiles,
                           const std::vector<citations::CitationContext>& contexts,
                           const corpus::Corpus& corpus, DiagnosticList& diags,
                           const MapOptions& options = {}, int jobs = 1);

// Experimental 1/rank weighting: each contributing method paper M adds
// 1/rank(t in M's list) to table[area][t], summed per paper.
std::map<std::string, std::map<std::string, double>> build_rank_weighted_table(
    const std::vector<areaclass::AreaAssignment>& assignments,
    const std::vector<techminer::MethodPaperProfile>& profiles,
    const std::vector<citations::CitationContext>& contexts, DiagnosticList& diags);

// Top-n techniques of an area, count desc then lexicographic. Unknown area
// yields an empty list plus a diagnostic when a list is supplied.
std::vector<std::pair<std::string, int>> techniques_for_area(const AreaTechniqueMap& map,
                                                             const std::string& area,
                                                             std::size_t n,
                                                             DiagnosticList* diags = nullptr);

// Every area whose table contains the technique, count desc then
// lexicographic; unknown technique yields an empty list.
std::vector<std::pair<std::string, int>> areas_for_technique(const AreaTechniqueMap& map,
                                                             const std::string& technique);

}  // namespace techmap::areamap

#endif
