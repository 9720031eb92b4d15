#ifndef TECHMAP_AREA_LEXICON_HPP
#define TECHMAP_AREA_LEXICON_HPP

// Application-area lexicon building from paper titles. Functional keywords
// ("for", "via", "using", ...) delimit candidate phrases; bootstrapping
// learns further delimiters from high-frequency harvested phrases; three
// ranking schemes turn candidate k-grams into the ranked lexicon.

#include <map>
#include <string>
#include <vector>

#include "techmap/diagnostics.hpp"
#include "techmap/text.hpp"

namespace techmap::arealex {

// Which side of a keyword occurrence holds the application area:
// "toolkit for X" -> the area follows "for"; "X using constraints" -> the
// area precedes "using". A keyword may act on both sides.
struct Keyword {
  std::string word;
  bool area_after = false;   // emit the span following the keyword
  bool area_before = false;  // emit the span preceding the keyword
  bool bootstrapped = false; // false for seed keywords

  bool operator==(const Keyword&) const = default;
};

class KeywordSet {
 public:
  KeywordSet() = default;
  explicit KeywordSet(std::vector<Keyword> keywords);

  // Built-in seed set.
  static KeywordSet seeds();
  // From (word, side) pairs with side in {following, preceding}; any other
  // side tag is a configuration error.
  static KeywordSet from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

  const std::vector<Keyword>& keywords() const { return keywords_; }  // sorted by word
  const Keyword* find(const std::string& word) const;
  bool contains(const std::string& word) const { return find(word) != nullptr; }
  std::size_t size() const { return keywords_.size(); }
  // Inserts a new keyword; existing words are left untouched (seed behavior
  // never changes). Reports whether the set changed.
  bool add(const Keyword& kw);

  bool operator==(const KeywordSet&) const = default;

 private:
  std::vector<Keyword> keywords_;
};

// Candidate area phrases of one title: for every keyword occurrence emit the
// maximal span on its area side, bounded by the nearest keyword occurrence
// (any keyword) or the title edge; spans are trimmed of boundary stopwords,
// empty spans dropped, and repeats within the title deduplicated in order of
// first appearance. Titles are normalized internally.
std::vector<std::string> extract_candidate_phrases(const std::string& title,
                                                   const KeywordSet& keywords);
std::vector<std::string> extract_candidate_phrases(const std::string& title,
                                                   const KeywordSet& keywords,
                                                   const text::Lexicons& lex);

// All candidate phrases over a title list, title order preserved.
std::vector<std::string> harvest_candidates(const std::vector<std::string>& titles,
                                            const KeywordSet& keywords,
                                            const text::Lexicons& lex, int jobs = 1);

struct BootstrapConfig {
  int rounds = 2;
  int min_support = 5;          // anchor gate: harvested k-gram count
  int min_keyword_support = 3;  // distinct titles backing a learned keyword side
};

// Alternates harvesting and delimiter learning: k-grams of harvested phrases
// with count >= min_support become anchors; a token next to an anchor
// occurrence inside a title, seen in >= min_keyword_support distinct titles
// on the same side, and drawn from the closed-class list, joins the keyword
// set (token before an anchor -> area_after, token after -> area_before).
// Stops at the round limit or at a fixpoint. The seed set is preserved.
KeywordSet bootstrap_keywords(const std::vector<std::string>& titles, const KeywordSet& seed,
                              const BootstrapConfig& cfg = {});
KeywordSet bootstrap_keywords(const std::vector<std::string>& titles, const KeywordSet& seed,
                              const BootstrapConfig& cfg, const text::Lexicons& lex,
                              const std::vector<std::string>& closed_class);

struct KGramStat {
  std::string phrase;
  int k = 0;
  int count = 0;
  double score = 0.0;

  bool operator==(const KGramStat&) const = default;
};

// Scheme 1: enumerate the k-grams (k = 1..5) of every candidate occurrence
// and score each distinct k-gram by count / total count of all enumerated
// k-grams. per_k_normalize divides by the same-order total instead. Output
// ranked by score descending, ties lexicographic.
std::vector<KGramStat> score_scheme1(const std::vector<std::string>& candidates,
                                     bool per_k_normalize = false);

// Scheme 2: a k-gram (k >= 2) scoring strictly higher than both of its
// border (k-1)-grams eliminates those borders. All removals are decided
// against the input scores, then applied at once.
std::vector<KGramStat> score_scheme2(const std::vector<KGramStat>& stats);

struct RankedArea {
  std::string phrase;
  int k = 0;
  int count = 0;
  double score = 0.0;
  int rank = 0;  // 1-based

  bool operator==(const RankedArea&) const = default;
};

struct AreaLexicon {
  std::vector<RankedArea> areas;
  int scheme = 3;
  std::map<int, double> thresholds;  // Scheme 3 score thresholds, k -> min score

  bool operator==(const AreaLexicon&) const = default;
  bool contains(const std::string& phrase) const;
};

// Scheme 3: drop unigrams and k > 5, then drop k-grams scoring strictly
// below thresholds[k]. A missing threshold for any k in 2..5 is a
// configuration error. Scoring exactly the threshold keeps the k-gram.
AreaLexicon score_scheme3(const std::vector<KGramStat>& stats,
                          const std::map<int, double>& thresholds);

struct LexiconConfig {
  int scheme = 3;
  bool per_k_normalize = false;
  // Score thresholds win when non-empty; otherwise the count thresholds are
  // divided by the (per-k or joint) enumeration total.
  std::map<int, double> score_thresholds;
  std::map<int, int> count_thresholds = {{2, 8}, {3, 5}, {4, 4}, {5, 4}};
};

// Full chain for the requested scheme over a title list.
AreaLexicon build_lexicon(const std::vector<std::string>& titles, const KeywordSet& keywords,
                          const LexiconConfig& cfg = {}, int jobs = 1);
AreaLexicon build_lexicon(const std::vector<std::string>& titles, const KeywordSet& keywords,
                          const LexiconConfig& cfg, const text::Lexicons& lex, int jobs);

}  // namespace techmap::arealex

#endif
