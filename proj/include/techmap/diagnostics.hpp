#ifndef TECHMAP_DIAGNOSTICS_HPP
#define TECHMAP_DIAGNOSTICS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace techmap {

// Fatal pipeline errors (unreadable inputs, duplicate ids, broken config).
class FatalError : public std::runtime_error {
 public:
  explicit FatalError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Severity { Warning, Error };

// One non-fatal finding tied to an input location or record.
struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string where;    // file:line, paper id, or stage name
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using DiagnosticList = std::vector<Diagnostic>;

inline Diagnostic warn(std::string where, std::string message) {
  return {Severity::Warning, std::move(where), std::move(message)};
}

inline Diagnostic error(std::string where, std::string message) {
  return {Severity::Error, std::move(where), std::move(message)};
}

}  // namespace techmap

#endif
