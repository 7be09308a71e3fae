#pragma once

#include <string>
#include <vector>

namespace ptlab {

/// Shortest decimal string that parses back to the same binary64 value.
std::string format_double(double value);

/// One named CSV table; cells are preformatted.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Comma-separated, LF line endings, header first.
  std::string to_csv() const;
};

}  // namespace ptlab
