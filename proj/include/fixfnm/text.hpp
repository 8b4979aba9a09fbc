#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fixfnm::text {

/// A source line with its 1-based number, comments (`#`) stripped.
struct Line {
  int number = 0;
  std::string_view content;
  int offset = 0;  // column offset of `content` within the raw line
};

/// Non-blank lines of `text`.
std::vector<Line> significant_lines(std::string_view text);

std::string_view trim(std::string_view s, int* offset = nullptr);

/// Splits on whitespace.
std::vector<std::string_view> tokens(std::string_view s);

std::string read_file(const std::string& path);

}  // namespace fixfnm::text
