#include "techmap/wordlists.hpp"

#include <fstream>
#include <sstream>

#include "techmap/diagnostics.hpp"
#include "wordlist_data.inc"

namespace techmap::wordlists {

namespace {

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

std::vector<std::string> parse_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = rstrip(std::move(line));
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_pairs(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& line : parse_lines(in)) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw FatalError("word-list line is not tab-separated: \"" + line + "\"");
    out.emplace_back(line.substr(0, tab), rstrip(line.substr(tab + 1)));
  }
  return out;
}

std::vector<std::string> parse_lines(const char* embedded_text) {
  std::istringstream in{std::string(embedded_text)};
  return parse_lines(in);
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const char* embedded_text) {
  std::istringstream in{std::string(embedded_text)};
  return parse_pairs(in);
}

std::vector<std::string> pos_words(const char* tag) {
  std::vector<std::string> out;
  for (const auto& [word, t] : parse_pairs(embedded::kPosLexicon))
    if (t == tag) out.push_back(word);
  return out;
}

}  // namespace

std::vector<std::string> load_lines(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FatalError("cannot read word list: " + path);
  return parse_lines(f);
}

std::vector<std::pair<std::string, std::string>> load_pairs(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FatalError("cannot read word list: " + path);
  return parse_pairs(f);
}

const std::vector<std::string>& stopwords() {
  static const auto v = parse_lines(embedded::kStopwords);
  return v;
}

const std::vector<std::string>& nominal_ing_ed() {
  static const auto v = pos_words("noun");
  return v;
}

const std::vector<std::string>& common_verbs() {
  static const auto v = pos_words("verb");
  return v;
}

const std::vector<std::string>& common_adjectives() {
  static const auto v = pos_words("adj");
  return v;
}

const std::vector<std::string>& stop_phrases() {
  static const auto v = parse_lines(embedded::kStopPhrases);
  return v;
}

const std::vector<std::pair<std::string, std::string>>& seed_keywords() {
  static const auto v = parse_pairs(embedded::kSeedKeywords);
  return v;
}

const std::vector<std::string>& method_section_keywords() {
  static const auto v = parse_lines(embedded::kMethodKeywords);
  return v;
}

const std::vector<std::string>& citation_patterns() {
  static const auto v = parse_lines(embedded::kCitationPatterns);
  return v;
}

const std::vector<std::string>& closed_class_words() {
  static const auto v = parse_lines(embedded::kClosedClass);
  return v;
}

}  // namespace techmap::wordlists
