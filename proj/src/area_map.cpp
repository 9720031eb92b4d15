#include "techmap/area_map.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "techmap/parallel.hpp"

namespace techmap::areamap {

namespace {

// Per citing paper: method paper -> number of method-section mentions.
using MethodCites = std::map<std::string, int>;

std::map<std::string, MethodCites> collect_method_cites(
    const std::vector<citations::CitationContext>& contexts,
    const std::unordered_map<std::string, const techminer::MethodPaperProfile*>& by_method) {
  std::map<std::string, MethodCites> out;
  for (const auto& c : contexts) {
    if (!c.in_method_section || by_method.count(c.cited_id) == 0) continue;
    ++out[c.citing_id][c.cited_id];
  }
  return out;
}

std::unordered_map<std::string, const techminer::MethodPaperProfile*> index_profiles(
    const std::vector<techminer::MethodPaperProfile>& profiles) {
  std::unordered_map<std::string, const techminer::MethodPaperProfile*> by_method;
  for (const auto& p : profiles) by_method.emplace(p.paper_id, &p);
  return by_method;
}

std::unordered_map<std::string, const areaclass::AreaAssignment*> index_assignments(
    const std::vector<areaclass::AreaAssignment>& assignments) {
  std::unordered_map<std::string, const areaclass::AreaAssignment*> by_paper;
  for (const auto& a : assignments) by_paper.emplace(a.paper_id, &a);
  return by_paper;
}

}  // namespace

AreaTechniqueMap build_map(const std::vector<areaclass::AreaAssignment>& assignments,
                           const std::vector<techminer::MethodPaperProfile>& profiles,
                           const std::vector<citations::CitationContext>& contexts,
                           const corpus::Corpus& corpus, DiagnosticList& diags,
                           const MapOptions& options, int jobs) {
  const auto by_method = index_profiles(profiles);
  const auto by_paper = index_assignments(assignments);
  const auto method_cites = collect_method_cites(contexts, by_method);

  std::vector<const std::pair<const std::string, MethodCites>*> citing_papers;
  citing_papers.reserve(method_cites.size());
  for (const auto& entry : method_cites) citing_papers.push_back(&entry);

  struct Slot {
    std::map<std::string, int> counts;  // technique -> contribution of this paper
    std::vector<Witness> witnesses;
    DiagnosticList diags;
    std::string area;
  };
  std::vector<Slot> slots(citing_papers.size());

  parallel_for(jobs, citing_papers.size(), [&](std::size_t i) {
    const auto& [paper_id, cites] = *citing_papers[i];
    Slot& slot = slots[i];
    const auto a = by_paper.find(paper_id);
    if (a == by_paper.end()) {
      slot.diags.push_back(warn(
          paper_id, "cites method papers from its method section but has no area assignment"));
      return;
    }
    if (a->second->area.empty()) {
      slot.diags.push_back(
          warn(paper_id, "cites method papers from its method section but is unclassified"));
      return;
    }
    slot.area = a->second->area;
    const auto* paper = corpus.find(paper_id);
    const int year = paper != nullptr ? paper->year : 0;

    // technique -> contributing method papers (sorted via map order).
    std::map<std::string, std::vector<std::string>> contributors;
    for (const auto& [method_id, mentions] : cites) {
      for (const auto& t : by_method.at(method_id)->techniques) {
        contributors[t.phrase].push_back(method_id);
        slot.counts[t.phrase] +=
            options.mention_granularity ? mentions : 0;  // per-paper part added below
      }
    }
    for (auto& [technique, methods] : contributors) {
      if (!options.mention_granularity) slot.counts[technique] = 1;
      Witness w;
      w.paper_id = paper_id;
      w.area = slot.area;
      w.technique = technique;
      w.year = year;
      w.method_papers = methods;  // map over cites keeps method ids sorted
      slot.witnesses.push_back(std::move(w));
    }
  });

  AreaTechniqueMap out;
  for (const auto& slot : slots) {
    diags.insert(diags.end(), slot.diags.begin(), slot.diags.end());
    if (slot.area.empty() || slot.counts.empty()) continue;  // no empty area keys
    auto& area_table = out.table[slot.area];
    for (const auto& [technique, count] : slot.counts) area_table[technique] += count;
    out.witnesses.insert(out.witnesses.end(), slot.witnesses.begin(), slot.witnesses.end());
  }
  std::sort(out.witnesses.begin(), out.witnesses.end(), [](const Witness& a, const Witness& b) {
    if (a.area != b.area) return a.area < b.area;
    if (a.technique != b.technique) return a.technique < b.technique;
    return a.paper_id < b.paper_id;
  });
  return out;
}

std::map<std::string, std::map<std::string, double>> build_rank_weighted_table(
    const std::vector<areaclass::AreaAssignment>& assignments,
    const std::vector<techminer::MethodPaperProfile>& profiles,
    const std::vector<citations::CitationContext>& contexts, DiagnosticList& diags) {
  const auto by_method = index_profiles(profiles);
  const auto by_paper = index_assignments(assignments);
  const auto method_cites = collect_method_cites(contexts, by_method);

  std::map<std::string, std::map<std::string, double>> table;
  for (const auto& [paper_id, cites] : method_cites) {
    const auto a = by_paper.find(paper_id);
    if (a == by_paper.end() || a->second->area.empty()) {
      diags.push_back(warn(paper_id,
                           "cites method papers from its method section but has no usable "
                           "area assignment"));
      continue;
    }
    std::map<std::string, double> contribution;
    for (const auto& [method_id, mentions] : cites) {
      const auto& techniques = by_method.at(method_id)->techniques;
      for (std::size_t rank = 0; rank < techniques.size(); ++rank) {
        contribution[techniques[rank].phrase] += 1.0 / static_cast<double>(rank + 1);
      }
    }
    if (contribution.empty()) continue;  // no empty area keys
    auto& area_table = table[a->second->area];
    for (const auto& [technique, weight] : contribution) area_table[technique] += weight;
  }
  return table;
}

std::vector<std::pair<std::string, int>> techniques_for_area(const AreaTechniqueMap& map,
                                                             const std::string& area,
                                                             std::size_t n,
                                                             DiagnosticList* diags) {
  const auto it = map.table.find(area);
  if (it == map.table.end()) {
    if (diags != nullptr) {
      diags->push_back(warn(area, "area not present in the area-technique map"));
    }
    return {};
  }
  std::vector<std::pair<std::string, int>> out(it->second.begin(), it->second.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;  // stable keeps the lexicographic map order on ties
  });
  if (out.size() > n) out.resize(n);
  return out;
}

std::vector<std::pair<std::string, int>> areas_for_technique(const AreaTechniqueMap& map,
                                                             const std::string& technique) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& [area, techniques] : map.table) {
    const auto it = techniques.find(technique);
    if (it != techniques.end()) out.emplace_back(area, it->second);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

}  // namespace techmap::areamap
