#include "techmap/evalkit.hpp"

#include <algorithm>
#include <set>

#include "techmap/diagnostics.hpp"
#include "techmap/text.hpp"

namespace techmap::evalkit {

namespace {

std::vector<std::string> normalized_tokens(const std::string& phrase) {
  return text::token_surfaces(text::normalize_ocr(phrase));
}

std::vector<std::string> stemmed_tokens(const std::string& phrase) {
  auto toks = normalized_tokens(phrase);
  for (auto& t : toks) t = text::porter_stem(t);
  return toks;
}

bool contains_tokens(const std::vector<std::string>& outer, const std::vector<std::string>& inner) {
  if (inner.empty() || inner.size() > outer.size()) return false;
  for (std::size_t s = 0; s + inner.size() <= outer.size(); ++s) {
    if (std::equal(inner.begin(), inner.end(), outer.begin() + s)) return true;
  }
  return false;
}

}  // namespace

double precision_at_k(const std::vector<int>& judgments, std::size_t k) {
  if (k == 0) throw FatalError("precision@k requires k >= 1");
  if (k > judgments.size()) {
    throw FatalError("precision@k requires k <= " + std::to_string(judgments.size()) +
                     " judgments, got k = " + std::to_string(k));
  }
  long long ones = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (judgments[i] != 0 && judgments[i] != 1) {
      throw FatalError("judgments must be 0 or 1, got " + std::to_string(judgments[i]) +
                       " at rank " + std::to_string(i + 1));
    }
    ones += judgments[i];
  }
  return static_cast<double>(ones) / static_cast<double>(k);
}

Matcher matcher_from_name(const std::string& name) {
  if (name == "exact") return Matcher::Exact;
  if (name == "stemmed") return Matcher::Stemmed;
  if (name == "containment") return Matcher::Containment;
  throw FatalError("unknown matcher '" + name + "' (expected exact, stemmed or containment)");
}

std::string matcher_name(Matcher matcher) {
  switch (matcher) {
    case Matcher::Exact: return "exact";
    case Matcher::Stemmed: return "stemmed";
    case Matcher::Containment: return "containment";
  }
  return "stemmed";
}

bool phrases_match(const std::string& a, const std::string& b, Matcher matcher) {
  if (matcher == Matcher::Exact) return normalized_tokens(a) == normalized_tokens(b);
  const auto sa = stemmed_tokens(a);
  const auto sb = stemmed_tokens(b);
  if (sa == sb) return true;
  if (matcher == Matcher::Stemmed) return false;
  return contains_tokens(sa, sb) || contains_tokens(sb, sa);
}

double recall_vs_gold(const std::vector<std::string>& gold,
                      const std::vector<std::string>& extracted, Matcher matcher) {
  const std::set<std::string> distinct_gold(gold.begin(), gold.end());
  if (distinct_gold.empty()) throw FatalError("recall needs a non-empty gold set");
  long long matched = 0;
  for (const auto& g : distinct_gold) {
    for (const auto& e : extracted) {
      if (phrases_match(g, e, matcher)) {
        ++matched;
        break;
      }
    }
  }
  return static_cast<double>(matched) / static_cast<double>(distinct_gold.size());
}

double accuracy(long long correct, long long total) {
  if (total < 1) throw FatalError("accuracy needs total >= 1");
  if (correct < 0 || correct > total) {
    throw FatalError("accuracy needs 0 <= correct <= total, got " + std::to_string(correct) +
                     "/" + std::to_string(total));
  }
  return static_cast<double>(correct) / static_cast<double>(total);
}

double cohen_kappa(const AgreementMatrix& matrix) {
  if (matrix.yes_yes < 0 || matrix.yes_no < 0 || matrix.no_yes < 0 || matrix.no_no < 0) {
    throw FatalError("agreement matrix cells must be non-negative");
  }
  const long long total = matrix.total();
  if (total < 1) throw FatalError("agreement matrix must hold at least one item");
  const double t = static_cast<double>(total);
  const double p_o = static_cast<double>(matrix.yes_yes + matrix.no_no) / t;
  const double yes_first = static_cast<double>(matrix.yes_yes + matrix.yes_no) / t;
  const double yes_second = static_cast<double>(matrix.yes_yes + matrix.no_yes) / t;
  const double p_e = yes_first * yes_second + (1.0 - yes_first) * (1.0 - yes_second);
  if (p_e == 1.0) {
    if (p_o == 1.0) return 1.0;
    throw FatalError("kappa undefined: chance agreement is 1 but observed agreement is not");
  }
  return (p_o - p_e) / (1.0 - p_e);
}

}  // namespace techmap::evalkit
