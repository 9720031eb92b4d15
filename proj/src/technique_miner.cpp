#include "techmap/technique_miner.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "techmap/diagnostics.hpp"
#include "techmap/parallel.hpp"
#include "techmap/text.hpp"

namespace techmap::techminer {

namespace {

std::vector<std::string> split_space(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    const auto sep = s.find(' ', start);
    const auto end = sep == std::string::npos ? s.size() : sep;
    if (end > start) out.push_back(s.substr(start, end - start));
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  return out;
}

bool contains_tokens(const std::vector<std::string>& outer, const std::vector<std::string>& inner) {
  if (inner.empty() || inner.size() > outer.size()) return false;
  for (std::size_t s = 0; s + inner.size() <= outer.size(); ++s) {
    if (std::equal(inner.begin(), inner.end(), outer.begin() + s)) return true;
  }
  return false;
}

void add_context_phrases(const citations::CitationContext& context,
                         std::map<std::string, long long>& counts) {
  const auto& lex = text::default_lexicons();
  for (const auto& np : text::extract_noun_phrases(text::token_surfaces(context.sentence), lex)) {
    ++counts[np.phrase];
  }
}

std::vector<RankedTechnique> rank_impl(const std::map<std::string, long long>& local,
                                       const GlobalTechniqueVector& global,
                                       const std::optional<std::string>& area, int top_k) {
  std::vector<std::vector<std::string>> area_tokens;
  if (area && !area->empty()) area_tokens.push_back(split_space(*area));
  struct Candidate {
    const std::string* phrase;
    long long score;
    long long local_count;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(local.size());
  for (const auto& [phrase, local_count] : local) {
    if (!area_tokens.empty()) {
      const auto toks = split_space(phrase);
      if (contains_tokens(toks, area_tokens.front()) ||
          contains_tokens(area_tokens.front(), toks)) {
        continue;
      }
    }
    candidates.push_back({&phrase, local_count * global.count(phrase), local_count});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.local_count != b.local_count) return a.local_count > b.local_count;
    return *a.phrase < *b.phrase;
  });
  if (candidates.size() > static_cast<std::size_t>(top_k)) candidates.resize(top_k);
  std::vector<RankedTechnique> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back({*c.phrase, c.score});
  return out;
}

}  // namespace

void validate(const MethodMinerConfig& config) {
  if (config.k1 < 1) {
    throw FatalError("k1 must be at least 1, got " + std::to_string(config.k1));
  }
  if (!(config.k2 > 0.0 && config.k2 <= 1.0)) {
    throw FatalError("k2 must be in (0, 1], got " + std::to_string(config.k2));
  }
  if (config.top_k < 1) {
    throw FatalError("top_k must be at least 1, got " + std::to_string(config.top_k));
  }
}

long long GlobalTechniqueVector::count(const std::string& phrase) const {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), phrase,
      [](const GlobalVectorEntry& e, const std::string& p) { return e.phrase < p; });
  if (it == entries.end() || it->phrase != phrase) return 0;
  return it->count;
}

bool GlobalTechniqueVector::contains(const std::string& phrase) const {
  return count(phrase) > 0;
}

std::vector<std::string> identify_method_papers(
    const std::map<std::string, citations::CitationStats>& stats,
    const MethodMinerConfig& config) {
  validate(config);
  std::vector<std::string> out;
  for (const auto& [id, s] : stats) {
    if (s.total >= config.k1 && s.method_fraction >= config.k2) out.push_back(id);
  }
  return out;  // stats map iterates in sorted id order
}

GlobalTechniqueVector build_global_vector(const std::vector<citations::CitationContext>& contexts,
                                          const std::set<std::string>& method_papers,
                                          const std::vector<std::string>& stop_phrases,
                                          bool all_method_contexts) {
  std::map<std::string, long long> counts;
  for (const auto& c : contexts) {
    if (!c.in_method_section) continue;
    if (!all_method_contexts && method_papers.count(c.cited_id) == 0) continue;
    add_context_phrases(c, counts);
  }
  for (const auto& p : stop_phrases) counts.erase(p);
  GlobalTechniqueVector global;
  global.entries.reserve(counts.size());
  for (const auto& [phrase, count] : counts) global.entries.push_back({phrase, count});
  return global;
}

std::map<std::string, long long> build_local_vector(
    const std::string& paper_id, const std::vector<citations::CitationContext>& contexts,
    const GlobalTechniqueVector& global) {
  std::map<std::string, long long> counts;
  for (const auto& c : contexts) {
    if (!c.in_method_section || c.cited_id != paper_id) continue;
    add_context_phrases(c, counts);
  }
  for (auto it = counts.begin(); it != counts.end();) {
    if (!global.contains(it->first)) {
      it = counts.erase(it);
    } else {
      ++it;
    }
  }
  return counts;
}

bool redundant_with_area(const std::string& phrase, const std::string& area) {
  if (area.empty()) return false;
  const auto p = split_space(phrase);
  const auto a = split_space(area);
  return contains_tokens(p, a) || contains_tokens(a, p);
}

std::vector<RankedTechnique> rank_techniques(const std::map<std::string, long long>& local,
                                             const GlobalTechniqueVector& global,
                                             const std::optional<std::string>& area, int top_k) {
  if (top_k < 1) throw FatalError("top_k must be at least 1, got " + std::to_string(top_k));
  return rank_impl(local, global, area, top_k);
}

MiningResult mine_techniques(const std::map<std::string, citations::CitationStats>& stats,
                             const std::vector<citations::CitationContext>& contexts,
                             const std::map<std::string, std::string>& area_by_paper,
                             const MethodMinerConfig& config,
                             const std::vector<std::string>& stop_phrases,
                             bool all_method_contexts, int jobs) {
  validate(config);
  const auto method_ids = identify_method_papers(stats, config);
  const std::set<std::string> method_set(method_ids.begin(), method_ids.end());

  MiningResult result;
  result.global = build_global_vector(contexts, method_set, stop_phrases, all_method_contexts);

  // One pass to bucket each method paper's method-section contexts.
  std::unordered_map<std::string, std::vector<const citations::CitationContext*>> buckets;
  for (const auto& c : contexts) {
    if (c.in_method_section && method_set.count(c.cited_id)) buckets[c.cited_id].push_back(&c);
  }

  result.profiles.resize(method_ids.size());
  parallel_for(jobs, method_ids.size(), [&](std::size_t i) {
    const auto& id = method_ids[i];
    MethodPaperProfile profile;
    profile.paper_id = id;
    const auto& s = stats.at(id);
    profile.total_citations = s.total;
    profile.method_fraction = s.method_fraction;
    std::map<std::string, long long> counts;
    const auto bucket = buckets.find(id);
    if (bucket != buckets.end()) {
      for (const auto* c : bucket->second) add_context_phrases(*c, counts);
    }
    for (auto it = counts.begin(); it != counts.end();) {
      if (!result.global.contains(it->first)) {
        it = counts.erase(it);
      } else {
        ++it;
      }
    }
    profile.local_counts = std::move(counts);
    std::optional<std::string> area;
    const auto a = area_by_paper.find(id);
    if (a != area_by_paper.end() && !a->second.empty()) area = a->second;
    profile.techniques = rank_impl(profile.local_counts, result.global, area, config.top_k);
    result.profiles[i] = std::move(profile);
  });
  return result;
}

}  // namespace techmap::techminer
