#ifndef TECHMAP_CITATIONS_HPP
#define TECHMAP_CITATIONS_HPP

// In-text citation handling: regex-based mention scanning over normalized
// text, resolution of mentions to cited paper ids via the citation graph,
// sentence-level citation contexts, and per-paper citation statistics.

#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "techmap/corpus.hpp"
#include "techmap/diagnostics.hpp"

namespace techmap::citations {

struct CitationMention {
  std::string citing_id;  // empty until attached to a paper
  std::size_t offset = 0;  // begin of surface in the citing paper's text
  std::string surface;     // exact matched span
  std::string surname;     // first-author surname as written
  std::string year_raw;    // 2- or 4-digit as matched, disambiguation suffix stripped
  int year = 0;            // normalized 4-digit (two-digit years: >= 50 -> 19xx, else 20xx)
  bool two_digit = false;
  bool in_method_section = false;

  bool operator==(const CitationMention&) const = default;
};

struct CitationContext {
  std::string citing_id;
  std::string cited_id;
  std::size_t offset = 0;  // mention offset, orders contexts within a paper
  std::string sentence;    // enclosing sentence with the surface spliced out
  bool in_method_section = false;

  bool operator==(const CitationContext&) const = default;
};

// Compiled pattern family. Each pattern must expose group 1 = surname and
// group 2 = year; candidates from all patterns merge by earliest-start,
// longest-match, first-pattern preference into non-overlapping mentions.
// Mentions whose "surname" is a function word are dropped.
class MentionScanner {
 public:
  MentionScanner();  // built-in pattern family
  explicit MentionScanner(const std::vector<std::string>& patterns);  // bad regex -> fatal

  std::vector<CitationMention> scan(const std::string& normalized) const;

 private:
  std::vector<std::regex> regexes_;
};

std::vector<CitationMention> find_citation_mentions(const std::string& normalized);

// The unique out-edge target of mention.citing_id whose first-author surname
// matches case-insensitively (a multi-word surname also matches on its last
// token) and whose year matches (two-digit mentions compare the last two
// digits). Zero or several candidates -> absent; several also flags
// *ambiguous for the caller's diagnostics.
std::optional<std::string> resolve_mention(const CitationMention& mention,
                                           const corpus::Corpus& corpus,
                                           bool* ambiguous = nullptr);

// Corpus-wide context extraction: per paper, scan mentions, resolve each, cut
// the enclosing sentence, splice out the surface, and mark method-section
// membership via the citing paper's method spans. Contexts whose sentence has
// no word characters left are discarded. Unresolved and ambiguous mentions
// are logged. Output is ordered by (citing_id, offset); `jobs` > 1 runs the
// per-paper kernels in parallel with identical output.
std::vector<CitationContext> extract_contexts(const corpus::Corpus& corpus,
                                              const MentionScanner& scanner,
                                              DiagnosticList& diags, int jobs = 1,
                                              const std::vector<std::string>& method_keywords = {});
std::vector<CitationContext> extract_contexts(const corpus::Corpus& corpus,
                                              DiagnosticList& diags, int jobs = 1);

struct CitationStats {
  int total = 0;         // contexts citing this paper
  int in_method = 0;     // of those, inside a method section
  double method_fraction = 0.0;  // in_method / total, 0 when never cited

  bool operator==(const CitationStats&) const = default;
};

CitationStats citation_stats(const std::string& paper_id,
                             const std::vector<CitationContext>& contexts);

// Stats for every paper in the corpus; uncited papers carry (0, 0, 0).
std::map<std::string, CitationStats> citation_stats_all(
    const corpus::Corpus& corpus, const std::vector<CitationContext>& contexts);

}  // namespace techmap::citations

#endif
