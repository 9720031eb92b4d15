#ifndef TECHMAP_TEMPORAL_HPP
#define TECHMAP_TEMPORAL_HPP

// Time-bucketed analytics: area popularity shares, per-area technique
// evolution, and per-venue top areas. Buckets tile [start_year, end_year]
// left-closed in width_years steps; the last bucket may be short.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "techmap/area_classifier.hpp"
#include "techmap/area_map.hpp"
#include "techmap/corpus.hpp"

namespace techmap::temporal {

// Series label for papers without a (non-empty) area assignment.
inline constexpr const char* kUnassignedLabel = "(unassigned)";

struct TimeBucketing {
  int start_year = 1980;
  int end_year = 2013;
  int width_years = 5;

  bool operator==(const TimeBucketing&) const = default;
};

// Throws FatalError unless width >= 1 and start <= end.
void validate(const TimeBucketing& bucketing);

struct Bucket {
  int start = 0;
  int end = 0;  // inclusive; end - start + 1 <= width for the last bucket

  bool operator==(const Bucket&) const = default;
};

// ceil((end - start + 1) / width) buckets tiling the range.
std::vector<Bucket> buckets(const TimeBucketing& bucketing);

// Index of the bucket containing year, or nullopt outside the range.
std::optional<std::size_t> bucket_index(const TimeBucketing& bucketing, int year);

// "1980-1984" (single years collapse to "1980").
std::string bucket_label(const Bucket& bucket);

struct SharePoint {
  Bucket bucket;
  int papers_in_area = 0;
  int papers_total = 0;  // all corpus papers published in the bucket
  double share = 0.0;    // papers_in_area / papers_total

  bool operator==(const SharePoint&) const = default;
};

struct AreaSeries {
  std::string area;
  std::vector<SharePoint> points;  // buckets without any papers are absent

  bool operator==(const AreaSeries&) const = default;
};

// Popularity share per bucket for each requested area; an empty request
// expands to every observed area plus the unassigned remainder, which makes
// the per-bucket shares a partition summing to 1.
std::vector<AreaSeries> area_share_series(const std::vector<areaclass::AreaAssignment>& assignments,
                                          const corpus::Corpus& corpus,
                                          const TimeBucketing& bucketing,
                                          const std::vector<std::string>& areas = {});

struct BucketTechniques {
  Bucket bucket;
  // (technique, citing papers in the bucket), count desc then lexicographic.
  std::vector<std::pair<std::string, int>> techniques;

  bool operator==(const BucketTechniques&) const = default;
};

// Per-bucket technique popularity inside one area, counted over map
// witnesses by citing-paper year. One entry per bucket; unknown areas give
// empty lists.
std::vector<BucketTechniques> technique_evolution(const std::string& area,
                                                  const TimeBucketing& bucketing,
                                                  const std::vector<areamap::Witness>& witnesses,
                                                  std::size_t top_n = SIZE_MAX);

enum class VenueWeight { Papers, Citations };

VenueWeight venue_weight_from_name(const std::string& name);  // "papers" | "citations"
std::string venue_weight_name(VenueWeight weight);

struct BucketAreas {
  Bucket bucket;
  // (area, weight), weight desc then lexicographic, truncated to top n.
  std::vector<std::pair<std::string, long long>> areas;

  bool operator==(const BucketAreas&) const = default;
};

// Top areas per bucket among one venue's papers, weighted by paper count or
// by citations received (in-edges; within_window restricts to citations
// whose citing paper falls in the same bucket). One entry per bucket.
std::vector<BucketAreas> top_areas_by_venue(
    const std::vector<areaclass::AreaAssignment>& assignments, const corpus::Corpus& corpus,
    const std::string& venue, const TimeBucketing& bucketing, std::size_t n, VenueWeight weight,
    bool within_window = false);

}  // namespace techmap::temporal

#endif
