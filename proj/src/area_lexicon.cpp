#include "techmap/area_lexicon.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>
#include <utility>

#include "techmap/parallel.hpp"
#include "techmap/wordlists.hpp"

namespace techmap::arealex {

namespace {

constexpr int kMaxOrder = 5;

std::vector<std::string> split_space(const std::string& phrase) {
  std::vector<std::string> out;
  std::size_t b = 0;
  while (b < phrase.size()) {
    const std::size_t e = phrase.find(' ', b);
    if (e == std::string::npos) {
      out.push_back(phrase.substr(b));
      break;
    }
    out.push_back(phrase.substr(b, e - b));
    b = e + 1;
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& toks, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += toks[i];
  }
  return out;
}

std::vector<std::string> title_tokens(const std::string& title) {
  return text::token_surfaces(text::normalize_ocr(title));
}

// Core per-title candidate extraction over pre-tokenized titles.
std::vector<std::string> extract_from_tokens(const std::vector<std::string>& toks,
                                             const KeywordSet& kws, const text::Lexicons& lex) {
  std::vector<std::size_t> kw_pos;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (kws.contains(toks[i])) kw_pos.push_back(i);
  }
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  const auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && lex.is_stopword(toks[begin])) ++begin;
    while (end > begin && lex.is_stopword(toks[end - 1])) --end;
    if (begin >= end) return;
    auto phrase = join_tokens(toks, begin, end);
    if (seen.insert(phrase).second) out.push_back(std::move(phrase));
  };
  for (std::size_t j = 0; j < kw_pos.size(); ++j) {
    const std::size_t p = kw_pos[j];
    const Keyword* kw = kws.find(toks[p]);
    if (kw->area_after) {
      const std::size_t stop = j + 1 < kw_pos.size() ? kw_pos[j + 1] : toks.size();
      emit(p + 1, stop);
    }
    if (kw->area_before) {
      const std::size_t start = j > 0 ? kw_pos[j - 1] + 1 : 0;
      emit(start, p);
    }
  }
  return out;
}

// Adds every k-gram (k = 1..5) of one candidate occurrence to the counts.
void add_kgram_counts(const std::string& phrase, std::map<std::string, int>& counts) {
  const auto toks = split_space(phrase);
  for (int k = 1; k <= kMaxOrder; ++k) {
    for (const auto& g : text::kgrams(toks, static_cast<std::size_t>(k))) ++counts[g];
  }
}

void rank_sort(std::vector<KGramStat>& stats) {
  std::sort(stats.begin(), stats.end(), [](const KGramStat& a, const KGramStat& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.phrase < b.phrase;
  });
}

AreaLexicon to_lexicon(const std::vector<KGramStat>& stats, int scheme,
                       std::map<int, double> thresholds) {
  AreaLexicon lex;
  lex.scheme = scheme;
  lex.thresholds = std::move(thresholds);
  lex.areas.reserve(stats.size());
  int rank = 0;
  for (const auto& s : stats) {
    lex.areas.push_back(RankedArea{s.phrase, s.k, s.count, s.score, ++rank});
  }
  return lex;
}

}  // namespace

KeywordSet::KeywordSet(std::vector<Keyword> keywords) : keywords_(std::move(keywords)) {
  std::sort(keywords_.begin(), keywords_.end(),
            [](const Keyword& a, const Keyword& b) { return a.word < b.word; });
  for (std::size_t i = 1; i < keywords_.size(); ++i) {
    if (keywords_[i].word == keywords_[i - 1].word) {
      throw FatalError("duplicate functional keyword: " + keywords_[i].word);
    }
  }
}

KeywordSet KeywordSet::seeds() { return from_pairs(wordlists::seed_keywords()); }

KeywordSet KeywordSet::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<Keyword> kws;
  for (const auto& [word, side] : pairs) {
    Keyword kw;
    kw.word = word;
    if (side == "following") {
      kw.area_after = true;
    } else if (side == "preceding") {
      kw.area_before = true;
    } else {
      throw FatalError("keyword '" + word + "' has unknown side '" + side +
                       "' (expected following|preceding)");
    }
    kws.push_back(std::move(kw));
  }
  return KeywordSet(std::move(kws));
}

const Keyword* KeywordSet::find(const std::string& word) const {
  const auto it = std::lower_bound(
      keywords_.begin(), keywords_.end(), word,
      [](const Keyword& kw, const std::string& w) { return kw.word < w; });
  return it != keywords_.end() && it->word == word ? &*it : nullptr;
}

bool KeywordSet::add(const Keyword& kw) {
  if (contains(kw.word)) return false;
  const auto it = std::lower_bound(
      keywords_.begin(), keywords_.end(), kw.word,
      [](const Keyword& k, const std::string& w) { return k.word < w; });
  keywords_.insert(it, kw);
  return true;
}

std::vector<std::string> extract_candidate_phrases(const std::string& title,
                                                   const KeywordSet& keywords,
                                                   const text::Lexicons& lex) {
  return extract_from_tokens(title_tokens(title), keywords, lex);
}

std::vector<std::string> extract_candidate_phrases(const std::string& title,
                                                   const KeywordSet& keywords) {
  return extract_candidate_phrases(title, keywords, text::default_lexicons());
}

std::vector<std::string> harvest_candidates(const std::vector<std::string>& titles,
                                            const KeywordSet& keywords,
                                            const text::Lexicons& lex, int jobs) {
  std::vector<std::vector<std::string>> slots(titles.size());
  parallel_for(jobs, titles.size(), [&](std::size_t i) {
    slots[i] = extract_from_tokens(title_tokens(titles[i]), keywords, lex);
  });
  std::vector<std::string> out;
  for (auto& s : slots) {
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return out;
}

KeywordSet bootstrap_keywords(const std::vector<std::string>& titles, const KeywordSet& seed,
                              const BootstrapConfig& cfg, const text::Lexicons& lex,
                              const std::vector<std::string>& closed_class) {
  const std::unordered_set<std::string> closed(closed_class.begin(), closed_class.end());
  std::vector<std::vector<std::string>> toks(titles.size());
  for (std::size_t i = 0; i < titles.size(); ++i) toks[i] = title_tokens(titles[i]);

  KeywordSet current = seed;
  for (int round = 0; round < cfg.rounds; ++round) {
    // (a) Harvest with the current keyword set.
    std::map<std::string, int> counts;
    for (const auto& t : toks) {
      for (const auto& phrase : extract_from_tokens(t, current, lex)) {
        add_kgram_counts(phrase, counts);
      }
    }
    std::vector<std::vector<std::string>> anchors;
    for (const auto& [phrase, n] : counts) {
      if (n >= cfg.min_support) anchors.push_back(split_space(phrase));
    }
    // (b) Collect tokens adjacent to anchor occurrences inside full titles.
    // side key: true = token precedes the anchor (keyword would carry the
    // area after it), false = token follows (area before it).
    std::map<std::pair<std::string, bool>, std::set<std::size_t>> support;
    for (std::size_t ti = 0; ti < toks.size(); ++ti) {
      const auto& t = toks[ti];
      for (const auto& a : anchors) {
        if (a.size() > t.size()) continue;
        for (std::size_t s = 0; s + a.size() <= t.size(); ++s) {
          if (!std::equal(a.begin(), a.end(), t.begin() + s)) continue;
          if (s > 0) support[{t[s - 1], true}].insert(ti);
          if (s + a.size() < t.size()) support[{t[s + a.size()], false}].insert(ti);
        }
      }
    }
    std::map<std::string, Keyword> pending;
    for (const auto& [key, title_set] : support) {
      const auto& [word, precedes] = key;
      if (static_cast<int>(title_set.size()) < cfg.min_keyword_support) continue;
      if (!closed.count(word)) continue;
      if (current.contains(word)) continue;  // seed and earlier learns stay as-is
      auto& kw = pending[word];
      kw.word = word;
      kw.bootstrapped = true;
      (precedes ? kw.area_after : kw.area_before) = true;
    }
    bool changed = false;
    for (const auto& [word, kw] : pending) changed |= current.add(kw);
    if (!changed) break;
  }
  return current;
}

KeywordSet bootstrap_keywords(const std::vector<std::string>& titles, const KeywordSet& seed,
                              const BootstrapConfig& cfg) {
  return bootstrap_keywords(titles, seed, cfg, text::default_lexicons(),
                            wordlists::closed_class_words());
}

std::vector<KGramStat> score_scheme1(const std::vector<std::string>& candidates,
                                     bool per_k_normalize) {
  std::map<std::string, int> counts;
  for (const auto& phrase : candidates) add_kgram_counts(phrase, counts);
  long long total = 0;
  std::map<int, long long> per_k_total;
  std::vector<KGramStat> stats;
  stats.reserve(counts.size());
  for (const auto& [phrase, n] : counts) {
    KGramStat st;
    st.phrase = phrase;
    st.k = static_cast<int>(split_space(phrase).size());
    st.count = n;
    stats.push_back(std::move(st));
    total += n;
    per_k_total[stats.back().k] += n;
  }
  for (auto& st : stats) {
    const long long denom = per_k_normalize ? per_k_total[st.k] : total;
    st.score = denom == 0 ? 0.0 : static_cast<double>(st.count) / static_cast<double>(denom);
  }
  rank_sort(stats);
  return stats;
}

std::vector<KGramStat> score_scheme2(const std::vector<KGramStat>& stats) {
  std::map<std::string, double> score_of;
  for (const auto& st : stats) score_of[st.phrase] = st.score;
  const auto score_or_zero = [&](const std::string& p) {
    const auto it = score_of.find(p);
    return it == score_of.end() ? 0.0 : it->second;
  };
  std::set<std::string> removed;
  for (const auto& st : stats) {
    if (st.k < 2) continue;
    const auto toks = split_space(st.phrase);
    const std::string left = join_tokens(toks, 0, toks.size() - 1);
    const std::string right = join_tokens(toks, 1, toks.size());
    if (st.score > score_or_zero(left) && st.score > score_or_zero(right)) {
      removed.insert(left);
      removed.insert(right);
    }
  }
  std::vector<KGramStat> out;
  out.reserve(stats.size());
  for (const auto& st : stats) {
    if (!removed.count(st.phrase)) out.push_back(st);
  }
  rank_sort(out);
  return out;
}

bool AreaLexicon::contains(const std::string& phrase) const {
  return std::any_of(areas.begin(), areas.end(),
                     [&](const RankedArea& a) { return a.phrase == phrase; });
}

AreaLexicon score_scheme3(const std::vector<KGramStat>& stats,
                          const std::map<int, double>& thresholds) {
  for (int k = 2; k <= kMaxOrder; ++k) {
    if (!thresholds.count(k)) {
      throw FatalError("scheme 3 needs a threshold for k=" + std::to_string(k));
    }
  }
  std::vector<KGramStat> kept;
  for (const auto& st : stats) {
    if (st.k < 2 || st.k > kMaxOrder) continue;
    if (st.score < thresholds.at(st.k)) continue;
    kept.push_back(st);
  }
  rank_sort(kept);
  return to_lexicon(kept, 3, thresholds);
}

AreaLexicon build_lexicon(const std::vector<std::string>& titles, const KeywordSet& keywords,
                          const LexiconConfig& cfg, int jobs) {
  return build_lexicon(titles, keywords, cfg, text::default_lexicons(), jobs);
}

AreaLexicon build_lexicon(const std::vector<std::string>& titles, const KeywordSet& keywords,
                          const LexiconConfig& cfg, const text::Lexicons& lex, int jobs) {
  const auto candidates = harvest_candidates(titles, keywords, lex, jobs);
  auto stats = score_scheme1(candidates, cfg.per_k_normalize);
  if (cfg.scheme == 1) return to_lexicon(stats, 1, {});
  auto pruned = score_scheme2(stats);
  if (cfg.scheme == 2) return to_lexicon(pruned, 2, {});
  if (cfg.scheme != 3) {
    throw FatalError("unknown ranking scheme " + std::to_string(cfg.scheme));
  }
  std::map<int, double> thresholds = cfg.score_thresholds;
  if (thresholds.empty()) {
    long long total = 0;
    std::map<int, long long> per_k_total;
    for (const auto& st : stats) {
      total += st.count;
      per_k_total[st.k] += st.count;
    }
    for (int k = 2; k <= kMaxOrder; ++k) {
      const auto it = cfg.count_thresholds.find(k);
      if (it == cfg.count_thresholds.end()) {
        throw FatalError("scheme 3 needs a count threshold for k=" + std::to_string(k));
      }
      const long long denom = cfg.per_k_normalize ? per_k_total[k] : total;
      thresholds[k] = denom == 0 ? 0.0 : static_cast<double>(it->second) / denom;
    }
  }
  return score_scheme3(pruned, thresholds);
}

}  // namespace techmap::arealex
