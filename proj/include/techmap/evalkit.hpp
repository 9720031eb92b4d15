#ifndef TECHMAP_EVALKIT_HPP
#define TECHMAP_EVALKIT_HPP

// Evaluation arithmetic: precision@K over ranked binary judgments, recall
// against a gold phrase set, plain accuracy, and Cohen's kappa from a 2x2
// agreement matrix.

#include <string>
#include <vector>

namespace techmap::evalkit {

// Fraction of 1s among the first k judgments. Judgments must be 0/1 and
// ranked; k must satisfy 1 <= k <= judgments.size().
double precision_at_k(const std::vector<int>& judgments, std::size_t k);

// Phrase equivalence used by recall_vs_gold. Exact compares normalized
// token strings, Stemmed compares Porter-stemmed tokens, Containment also
// accepts a contiguous stemmed-token containment in either direction.
enum class Matcher { Exact, Stemmed, Containment };

Matcher matcher_from_name(const std::string& name);  // "exact" | "stemmed" | "containment"
std::string matcher_name(Matcher matcher);

bool phrases_match(const std::string& a, const std::string& b, Matcher matcher);

// Fraction of distinct gold phrases matched by at least one extracted
// phrase. Gold must be non-empty.
double recall_vs_gold(const std::vector<std::string>& gold,
                      const std::vector<std::string>& extracted,
                      Matcher matcher = Matcher::Stemmed);

// correct / total with 0 <= correct <= total and total >= 1.
double accuracy(long long correct, long long total);

struct AgreementMatrix {
  long long yes_yes = 0;
  long long yes_no = 0;
  long long no_yes = 0;
  long long no_no = 0;

  bool operator==(const AgreementMatrix&) const = default;
  long long total() const { return yes_yes + yes_no + no_yes + no_no; }
  AgreementMatrix transposed() const { return {yes_yes, no_yes, yes_no, no_no}; }
};

// kappa = (p_o - p_e) / (1 - p_e) with p_o the diagonal share and p_e the
// chance agreement from the marginals. Cells must be non-negative and sum
// to at least 1. p_e = 1 is defined as 1.0 when p_o = 1 and an error
// otherwise.
double cohen_kappa(const AgreementMatrix& matrix);

}  // namespace techmap::evalkit

#endif
