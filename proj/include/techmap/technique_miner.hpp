#ifndef TECHMAP_TECHNIQUE_MINER_HPP
#define TECHMAP_TECHNIQUE_MINER_HPP

// Method-paper detection and technique extraction. A paper is a method paper
// when it is cited often enough and a large enough share of those citations
// come from method sections. Its techniques are the noun phrases of those
// method-section citation contexts, ranked by the product of the per-paper
// count and the corpus-wide count.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "techmap/citations.hpp"
#include "techmap/wordlists.hpp"

namespace techmap::techminer {

struct MethodMinerConfig {
  int k1 = 15;        // minimum citation count
  double k2 = 0.50;   // minimum method-section citation fraction
  int top_k = 5;      // techniques retained per method paper
};

// Throws FatalError unless k1 >= 1, 0 < k2 <= 1 and top_k >= 1.
void validate(const MethodMinerConfig& config);

struct GlobalVectorEntry {
  std::string phrase;
  long long count = 0;

  bool operator==(const GlobalVectorEntry&) const = default;
};

// Corpus-wide noun-phrase counts over method-section citation contexts,
// lexicographically ordered by phrase, stop-phrases removed.
struct GlobalTechniqueVector {
  std::vector<GlobalVectorEntry> entries;

  // Count for a phrase, 0 when absent (binary search).
  long long count(const std::string& phrase) const;
  bool contains(const std::string& phrase) const;

  bool operator==(const GlobalTechniqueVector&) const = default;
};

struct RankedTechnique {
  std::string phrase;
  long long score = 0;  // local count x global count

  bool operator==(const RankedTechnique&) const = default;
};

struct MethodPaperProfile {
  std::string paper_id;
  int total_citations = 0;
  double method_fraction = 0.0;
  std::map<std::string, long long> local_counts;  // over this paper's method contexts
  std::vector<RankedTechnique> techniques;        // at most top_k entries

  bool operator==(const MethodPaperProfile&) const = default;
};

// Paper ids with total >= k1 and method_fraction >= k2, sorted. Monotone:
// raising either threshold never adds a paper.
std::vector<std::string> identify_method_papers(
    const std::map<std::string, citations::CitationStats>& stats, const MethodMinerConfig& config);

// Noun phrases of every method-section context citing a method paper,
// counted corpus-wide; all_method_contexts widens the pool to method-section
// contexts citing anyone. Stop-phrases are dropped by exact match.
GlobalTechniqueVector build_global_vector(const std::vector<citations::CitationContext>& contexts,
                                          const std::set<std::string>& method_papers,
                                          const std::vector<std::string>& stop_phrases,
                                          bool all_method_contexts = false);

// Noun-phrase counts over the method-section contexts citing paper_id;
// phrases outside the global vector are ignored.
std::map<std::string, long long> build_local_vector(
    const std::string& paper_id, const std::vector<citations::CitationContext>& contexts,
    const GlobalTechniqueVector& global);

// True when the two space-joined phrases are equal or one contains the other
// as a contiguous token sequence; such techniques are redundant with the area.
bool redundant_with_area(const std::string& phrase, const std::string& area);

// score = local x global count; phrases redundant with the area are dropped;
// sort by score desc, then local count desc, then phrase; truncate to top_k.
std::vector<RankedTechnique> rank_techniques(const std::map<std::string, long long>& local,
                                             const GlobalTechniqueVector& global,
                                             const std::optional<std::string>& area, int top_k);

struct MiningResult {
  std::vector<MethodPaperProfile> profiles;  // sorted by paper id
  GlobalTechniqueVector global;

  bool operator==(const MiningResult&) const = default;
};

// Full pass: detect method papers from the stats, build the global vector,
// then each profile. area_by_paper supplies the area used for the redundancy
// filter; papers missing from it (or mapped to "") are not filtered.
MiningResult mine_techniques(const std::map<std::string, citations::CitationStats>& stats,
                             const std::vector<citations::CitationContext>& contexts,
                             const std::map<std::string, std::string>& area_by_paper,
                             const MethodMinerConfig& config = {},
                             const std::vector<std::string>& stop_phrases =
                                 wordlists::stop_phrases(),
                             bool all_method_contexts = false, int jobs = 1);

}  // namespace techmap::techminer

#endif
