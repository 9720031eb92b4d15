#ifndef TECHMAP_TEXT_HPP
#define TECHMAP_TEXT_HPP

// Shared text-processing layer: OCR-tolerant normalization, tokenization,
// Porter stemming, k-gram enumeration, sentence splitting, and the
// lexicon-driven noun-phrase chunker used for technique mining.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace techmap::text {

// Half-open character range [begin, end) into a normalized text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const CharSpan&) const = default;
  std::size_t length() const { return end - begin; }
  bool contains(std::size_t offset) const { return begin <= offset && offset < end; }
};

struct Token {
  std::string surface;
  std::size_t position = 0;  // index within the tokenized unit

  bool operator==(const Token&) const = default;
};

// Canonical cleanup applied once at ingest. Lowercases ASCII, strips control
// characters, repairs end-of-line hyphenation ("Trans-\nlation" ->
// "translation"), and collapses whitespace runs: runs containing a newline
// become a single '\n' (line structure feeds section detection), all other
// runs become a single space. Idempotent.
std::string normalize_ocr(const std::string& raw);

// Maximal alphanumeric runs; '-' joins word-internal hyphens ("part-of-speech")
// and '+' survives after an alphanumeric ("giza++"). Everything else is a
// separator.
std::vector<Token> tokenize(const std::string& normalized);

// Convenience: just the surfaces.
std::vector<std::string> token_surfaces(const std::string& normalized);

// Classic Porter stemmer (suffix-stripping over measure-gated rules).
// Words of length <= 2 are returned unchanged.
std::string porter_stem(const std::string& word);

// Space-joined k-grams over a token-surface sequence, in order of occurrence.
// k == 0 or k > tokens.size() yields an empty list.
std::vector<std::string> kgrams(const std::vector<std::string>& tokens, std::size_t k);

// Sentence spans over normalized text. Splits after [.?!] runs followed by
// whitespace, with guards for common abbreviations ("et al.", "fig.", single
// initials). Spans are trimmed of surrounding whitespace; every non-whitespace
// character of the input lands in exactly one span.
std::vector<CharSpan> split_sentences(const std::string& normalized);

// Word classes for the phrase chunker. Closed-class words (the stopword list)
// are Other and can never appear inside a phrase.
enum class WordClass { Noun, Adjective, Verb, Other };

struct Lexicons {
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> nouns;       // nominal -ing/-ed and other forced nouns
  std::unordered_set<std::string> verbs;
  std::unordered_set<std::string> adjectives;

  bool is_stopword(const std::string& w) const { return stopwords.count(w) > 0; }
};

// Lexicons embedded from data/ at build time; the same files remain
// overridable at runtime.
const Lexicons& default_lexicons();

// Assemble lexicons from stopword lines plus (word, tag) pairs with tag in
// {noun, verb, adj}; backs the --stopwords / --pos-lexicon overrides.
Lexicons make_lexicons(const std::vector<std::string>& stopword_lines,
                       const std::vector<std::pair<std::string, std::string>>& pos_pairs);

WordClass classify_word(const std::string& word, const Lexicons& lex);

struct NounPhrase {
  std::string phrase;       // space-joined tokens
  std::size_t length = 0;   // token count

  bool operator==(const NounPhrase&) const = default;
};

// Phrases from maximal (Adj|Noun)* Noun runs: the full run (when its length is
// within max_len) plus every contiguous sub-span of length 1..max_len whose
// first and last tokens are nouns. Duplicate spans are emitted once per run;
// repeated occurrences across a sentence are all reported.
std::vector<NounPhrase> extract_noun_phrases(const std::vector<std::string>& tokens,
                                             const Lexicons& lex,
                                             std::size_t max_len = 5);

// Stopword-filtered, Porter-stemmed bag of words; the unit fed to the
// classifier's language models.
std::vector<std::string> stemmed_bag(const std::string& normalized, const Lexicons& lex);

}  // namespace techmap::text

#endif
