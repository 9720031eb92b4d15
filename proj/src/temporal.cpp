#include "techmap/temporal.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "techmap/diagnostics.hpp"

namespace techmap::temporal {

namespace {

// Assignment area per paper; missing and unclassified both map to "".
std::map<std::string, std::string> area_by_paper(
    const std::vector<areaclass::AreaAssignment>& assignments) {
  std::map<std::string, std::string> out;
  for (const auto& a : assignments) out.emplace(a.paper_id, a.area);
  return out;
}

std::vector<std::pair<std::string, long long>> top_entries(
    const std::map<std::string, long long>& weights, std::size_t n) {
  std::vector<std::pair<std::string, long long>> out(weights.begin(), weights.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace

void validate(const TimeBucketing& bucketing) {
  if (bucketing.width_years < 1) {
    throw FatalError("bucket width must be at least 1 year, got " +
                     std::to_string(bucketing.width_years));
  }
  if (bucketing.start_year > bucketing.end_year) {
    throw FatalError("bucket range is empty: " + std::to_string(bucketing.start_year) + " > " +
                     std::to_string(bucketing.end_year));
  }
}

std::vector<Bucket> buckets(const TimeBucketing& bucketing) {
  validate(bucketing);
  std::vector<Bucket> out;
  for (int start = bucketing.start_year; start <= bucketing.end_year;
       start += bucketing.width_years) {
    out.push_back({start, std::min(start + bucketing.width_years - 1, bucketing.end_year)});
  }
  return out;
}

std::optional<std::size_t> bucket_index(const TimeBucketing& bucketing, int year) {
  validate(bucketing);
  if (year < bucketing.start_year || year > bucketing.end_year) return std::nullopt;
  return static_cast<std::size_t>((year - bucketing.start_year) / bucketing.width_years);
}

std::string bucket_label(const Bucket& bucket) {
  if (bucket.start == bucket.end) return std::to_string(bucket.start);
  return std::to_string(bucket.start) + "-" + std::to_string(bucket.end);
}

std::vector<AreaSeries> area_share_series(const std::vector<areaclass::AreaAssignment>& assignments,
                                          const corpus::Corpus& corpus,
                                          const TimeBucketing& bucketing,
                                          const std::vector<std::string>& areas) {
  const auto all_buckets = buckets(bucketing);
  const auto assigned = area_by_paper(assignments);

  // Per bucket: total papers and papers per area ("" = unassigned).
  std::vector<int> totals(all_buckets.size(), 0);
  std::vector<std::map<std::string, int>> per_area(all_buckets.size());
  for (const auto& p : corpus.papers()) {
    const auto idx = bucket_index(bucketing, p.year);
    if (!idx) continue;
    ++totals[*idx];
    const auto it = assigned.find(p.id);
    const std::string& area = it == assigned.end() ? std::string{} : it->second;
    ++per_area[*idx][area.empty() ? kUnassignedLabel : area];
  }

  std::vector<std::string> requested = areas;
  if (requested.empty()) {
    std::set<std::string> observed;
    for (const auto& bucket_counts : per_area) {
      for (const auto& [area, count] : bucket_counts) observed.insert(area);
    }
    requested.assign(observed.begin(), observed.end());
  }

  std::vector<AreaSeries> out;
  out.reserve(requested.size());
  for (const auto& area : requested) {
    AreaSeries series;
    series.area = area;
    for (std::size_t i = 0; i < all_buckets.size(); ++i) {
      if (totals[i] == 0) continue;  // no papers -> absent point
      SharePoint point;
      point.bucket = all_buckets[i];
      const auto it = per_area[i].find(area);
      point.papers_in_area = it == per_area[i].end() ? 0 : it->second;
      point.papers_total = totals[i];
      point.share = static_cast<double>(point.papers_in_area) / totals[i];
      series.points.push_back(point);
    }
    out.push_back(std::move(series));
  }
  return out;
}

std::vector<BucketTechniques> technique_evolution(const std::string& area,
                                                  const TimeBucketing& bucketing,
                                                  const std::vector<areamap::Witness>& witnesses,
                                                  std::size_t top_n) {
  const auto all_buckets = buckets(bucketing);
  std::vector<std::map<std::string, long long>> counts(all_buckets.size());
  for (const auto& w : witnesses) {
    if (w.area != area) continue;
    const auto idx = bucket_index(bucketing, w.year);
    if (!idx) continue;
    ++counts[*idx][w.technique];
  }
  std::vector<BucketTechniques> out;
  out.reserve(all_buckets.size());
  for (std::size_t i = 0; i < all_buckets.size(); ++i) {
    BucketTechniques bucket;
    bucket.bucket = all_buckets[i];
    for (auto& [technique, count] : top_entries(counts[i], top_n)) {
      bucket.techniques.emplace_back(technique, static_cast<int>(count));
    }
    out.push_back(std::move(bucket));
  }
  return out;
}

VenueWeight venue_weight_from_name(const std::string& name) {
  if (name == "papers") return VenueWeight::Papers;
  if (name == "citations") return VenueWeight::Citations;
  throw FatalError("unknown venue weight '" + name + "' (expected papers or citations)");
}

std::string venue_weight_name(VenueWeight weight) {
  return weight == VenueWeight::Papers ? "papers" : "citations";
}

std::vector<BucketAreas> top_areas_by_venue(
    const std::vector<areaclass::AreaAssignment>& assignments, const corpus::Corpus& corpus,
    const std::string& venue, const TimeBucketing& bucketing, std::size_t n, VenueWeight weight,
    bool within_window) {
  const auto all_buckets = buckets(bucketing);
  const auto assigned = area_by_paper(assignments);

  std::vector<std::map<std::string, long long>> weights(all_buckets.size());
  for (const auto& p : corpus.papers()) {
    if (p.venue != venue) continue;
    const auto idx = bucket_index(bucketing, p.year);
    if (!idx) continue;
    const auto it = assigned.find(p.id);
    if (it == assigned.end() || it->second.empty()) continue;
    long long w = 0;
    if (weight == VenueWeight::Papers) {
      w = 1;
    } else {
      for (const auto& citing_id : corpus.citing_ids(p.id)) {
        if (within_window) {
          const auto* citing = corpus.find(citing_id);
          if (citing == nullptr) continue;
          const auto citing_idx = bucket_index(bucketing, citing->year);
          if (!citing_idx || *citing_idx != *idx) continue;
        }
        ++w;
      }
    }
    if (w > 0) weights[*idx][it->second] += w;
  }

  std::vector<BucketAreas> out;
  out.reserve(all_buckets.size());
  for (std::size_t i = 0; i < all_buckets.size(); ++i) {
    BucketAreas bucket;
    bucket.bucket = all_buckets[i];
    bucket.areas = top_entries(weights[i], n);
    out.push_back(std::move(bucket));
  }
  return out;
}

}  // namespace techmap::temporal
