#ifndef TECHMAP_WORDLISTS_HPP
#define TECHMAP_WORDLISTS_HPP

// Builtin word lists and the loaders for their on-disk twins under data/.
// The builtins are the single source used when no override file is given; a
// unit test keeps data/ and the builtins in sync.

#include <string>
#include <vector>

namespace techmap::wordlists {

// One entry per line; '#' starts a comment; blank lines ignored.
std::vector<std::string> load_lines(const std::string& path);

// Two tab-separated columns per line.
std::vector<std::pair<std::string, std::string>> load_pairs(const std::string& path);

const std::vector<std::string>& stopwords();
const std::vector<std::string>& nominal_ing_ed();          // forced-noun exceptions
const std::vector<std::string>& common_verbs();
const std::vector<std::string>& common_adjectives();
const std::vector<std::string>& stop_phrases();            // technique-mining noise phrases
const std::vector<std::pair<std::string, std::string>>& seed_keywords();  // word -> side
const std::vector<std::string>& method_section_keywords();
const std::vector<std::string>& citation_patterns();       // default mention regexes
const std::vector<std::string>& closed_class_words();      // bootstrap keyword gate

}  // namespace techmap::wordlists

#endif
