#include "techmap/text.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "techmap/diagnostics.hpp"
#include "techmap/wordlists.hpp"

namespace techmap::text {

namespace {

bool is_letter(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_char(char c) { return is_letter(c) || is_digit(c); }
bool is_space(char c) { return c == ' ' || c == '\n'; }

}  // namespace

std::string normalize_ocr(const std::string& raw) {
  // Pass 1: lowercase, strip control bytes (tabs become spaces, \r dropped).
  std::string flat;
  flat.reserve(raw.size());
  for (unsigned char uc : raw) {
    if (uc == '\n') {
      flat.push_back('\n');
    } else if (uc == '\t') {
      flat.push_back(' ');
    } else if (uc < 0x20 || uc == 0x7f) {
      // dropped
    } else if (uc >= 'A' && uc <= 'Z') {
      flat.push_back(static_cast<char>(uc - 'A' + 'a'));
    } else {
      flat.push_back(static_cast<char>(uc));
    }
  }

  // Pass 2: rejoin words hyphenated across a line break ("trans-\nlation").
  std::string joined;
  joined.reserve(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    char c = flat[i];
    if (c == '-' && i > 0 && is_letter(flat[i - 1])) {
      std::size_t k = i + 1;
      while (k < flat.size() && flat[k] == ' ') ++k;
      if (k < flat.size() && flat[k] == '\n') {
        ++k;
        while (k < flat.size() && is_space(flat[k])) ++k;
        if (k < flat.size() && is_letter(flat[k])) {
          i = k - 1;  // skip the hyphen and the whole break
          continue;
        }
      }
    }
    joined.push_back(c);
  }

  // Pass 3: collapse whitespace runs; a run containing a newline keeps the
  // line structure that section-heading detection relies on.
  std::string out;
  out.reserve(joined.size());
  std::size_t i = 0;
  while (i < joined.size()) {
    if (is_space(joined[i])) {
      bool newline = false;
      while (i < joined.size() && is_space(joined[i])) {
        newline = newline || joined[i] == '\n';
        ++i;
      }
      out.push_back(newline ? '\n' : ' ');
    } else {
      out.push_back(joined[i++]);
    }
  }

  const std::size_t b = out.find_first_not_of(" \n");
  if (b == std::string::npos) return "";
  const std::size_t e = out.find_last_not_of(" \n");
  return out.substr(b, e - b + 1);
}

std::vector<Token> tokenize(const std::string& normalized) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = normalized.size();
  while (i < n) {
    if (!is_word_char(normalized[i])) {
      ++i;
      continue;
    }
    std::string t;
    while (i < n) {
      const char c = normalized[i];
      if (is_word_char(c)) {
        t.push_back(c);
        ++i;
      } else if (c == '-' && i + 1 < n && is_word_char(normalized[i + 1])) {
        t.push_back('-');  // word-internal hyphen: "part-of-speech"
        ++i;
      } else if (c == '+' && (is_word_char(t.back()) || t.back() == '+')) {
        t.push_back('+');  // "giza++"
        ++i;
      } else {
        break;
      }
    }
    out.push_back(Token{std::move(t), out.size()});
  }
  return out;
}

std::vector<std::string> token_surfaces(const std::string& normalized) {
  std::vector<std::string> out;
  for (auto& t : tokenize(normalized)) out.push_back(std::move(t.surface));
  return out;
}

std::vector<std::string> kgrams(const std::vector<std::string>& tokens, std::size_t k) {
  std::vector<std::string> out;
  if (k == 0 || k > tokens.size()) return out;
  out.reserve(tokens.size() - k + 1);
  for (std::size_t i = 0; i + k <= tokens.size(); ++i) {
    std::string g = tokens[i];
    for (std::size_t j = i + 1; j < i + k; ++j) {
      g += ' ';
      g += tokens[j];
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<CharSpan> split_sentences(const std::string& s) {
  static const std::set<std::string> kAbbrev = {"al",   "fig", "figs", "eq", "eqs", "vs",
                                                "cf",   "resp", "pp",  "sec", "ch", "vol"};
  std::vector<CharSpan> out;
  const std::size_t n = s.size();
  std::size_t i = 0;
  while (i < n && is_space(s[i])) ++i;
  std::size_t start = i;
  while (i < n) {
    const char c = s[i];
    if (c != '.' && c != '?' && c != '!') {
      ++i;
      continue;
    }
    std::size_t pe = i;  // end of the punctuation run
    while (pe + 1 < n && (s[pe + 1] == '.' || s[pe + 1] == '?' || s[pe + 1] == '!')) ++pe;
    bool boundary = (pe + 1 >= n) || is_space(s[pe + 1]);
    if (boundary && c == '.' && pe == i) {
      // Lone period: guard abbreviations and single-letter initials.
      std::size_t wb = i;
      while (wb > start && is_letter(s[wb - 1])) --wb;
      const std::size_t wl = i - wb;
      if (wl == 1 || (wl > 1 && kAbbrev.count(s.substr(wb, wl)) > 0)) boundary = false;
    }
    if (boundary) {
      out.push_back(CharSpan{start, pe + 1});
      i = pe + 1;
      while (i < n && is_space(s[i])) ++i;
      start = i;
    } else {
      i = pe + 1;
    }
  }
  if (start < n) {
    std::size_t e = n;
    while (e > start && is_space(s[e - 1])) --e;
    if (e > start) out.push_back(CharSpan{start, e});
  }
  return out;
}

Lexicons make_lexicons(const std::vector<std::string>& stopword_lines,
                       const std::vector<std::pair<std::string, std::string>>& pos_pairs) {
  Lexicons l;
  for (const auto& w : stopword_lines) l.stopwords.insert(w);
  for (const auto& [word, tag] : pos_pairs) {
    if (tag == "noun") {
      l.nouns.insert(word);
    } else if (tag == "verb") {
      l.verbs.insert(word);
    } else if (tag == "adj") {
      l.adjectives.insert(word);
    } else {
      throw FatalError("unknown POS tag \"" + tag + "\" for word \"" + word + "\"");
    }
  }
  return l;
}

const Lexicons& default_lexicons() {
  static const Lexicons lex = [] {
    Lexicons l;
    for (const auto& w : wordlists::stopwords()) l.stopwords.insert(w);
    for (const auto& w : wordlists::nominal_ing_ed()) l.nouns.insert(w);
    for (const auto& w : wordlists::common_verbs()) l.verbs.insert(w);
    for (const auto& w : wordlists::common_adjectives()) l.adjectives.insert(w);
    return l;
  }();
  return lex;
}

WordClass classify_word(const std::string& word, const Lexicons& lex) {
  if (word.empty()) return WordClass::Other;
  if (is_digit(word[0])) return WordClass::Other;  // years, table numbers
  if (lex.stopwords.count(word)) return WordClass::Other;
  if (lex.nouns.count(word)) return WordClass::Noun;
  if (lex.verbs.count(word)) return WordClass::Verb;
  if (lex.adjectives.count(word)) return WordClass::Adjective;
  // Out-of-lexicon -ing/-ed forms are treated as non-nominal.
  if (word.size() >= 6 && word.ends_with("ing")) return WordClass::Verb;
  if (word.size() >= 5 && word.ends_with("ed")) return WordClass::Verb;
  return WordClass::Noun;  // unknown tokens default to NOUN ("giza++")
}

std::vector<NounPhrase> extract_noun_phrases(const std::vector<std::string>& tokens,
                                             const Lexicons& lex,
                                             std::size_t max_len) {
  std::vector<NounPhrase> out;
  std::vector<WordClass> cls(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) cls[i] = classify_word(tokens[i], lex);

  const auto nominal = [&](std::size_t i) {
    return cls[i] == WordClass::Noun || cls[i] == WordClass::Adjective;
  };

  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!nominal(i)) {
      ++i;
      continue;
    }
    const std::size_t b = i;
    while (i < tokens.size() && nominal(i)) ++i;
    std::size_t e = i;
    while (e > b && cls[e - 1] == WordClass::Adjective) --e;  // run must end in a noun
    if (e == b) continue;

    // The maximal run plus every sub-span whose first and last tokens are
    // nouns; a (b,e) span can coincide with a sub-span, so dedupe per run.
    std::set<std::pair<std::size_t, std::size_t>> spans;
    if (e - b <= max_len) spans.emplace(b, e);
    for (std::size_t x = b; x < e; ++x) {
      if (cls[x] != WordClass::Noun) continue;
      for (std::size_t y = x; y < e && y - x < max_len; ++y) {
        if (cls[y] == WordClass::Noun) spans.emplace(x, y + 1);
      }
    }
    for (const auto& [x, y] : spans) {
      std::string p = tokens[x];
      for (std::size_t j = x + 1; j < y; ++j) {
        p += ' ';
        p += tokens[j];
      }
      out.push_back(NounPhrase{std::move(p), y - x});
    }
  }
  return out;
}

std::vector<std::string> stemmed_bag(const std::string& normalized, const Lexicons& lex) {
  std::vector<std::string> out;
  for (auto& t : tokenize(normalized)) {
    if (is_digit(t.surface[0])) continue;
    if (lex.is_stopword(t.surface)) continue;
    out.push_back(porter_stem(t.surface));
  }
  return out;
}

}  // namespace techmap::text
