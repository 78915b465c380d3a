#pragma once

#include <string>
#include <string_view>

#include "rpys/text.hpp"

namespace rpys {

/// Token used for references whose first author is missing or empty.
inline constexpr std::string_view kUnknownAuthor = "UNKNOWN";

/// Uppercases, drops periods and commas, collapses whitespace.
/// "Einstein, A." -> "EINSTEIN A"; an empty result becomes "UNKNOWN".
inline std::string normalize_author(std::string_view raw_author) {
  std::string kept;
  kept.reserve(raw_author.size());
  for (char c : raw_author) {
    if (c != '.' && c != ',') kept.push_back(c);
  }
  auto out = text::collapse_whitespace(text::to_upper(kept));
  if (out.empty()) return std::string(kUnknownAuthor);
  return out;
}

/// Field normalization for work identity: uppercase, ASCII punctuation other
/// than '-' removed, whitespace collapsed.
inline std::string normalize_field(std::string_view raw) {
  std::string kept;
  kept.reserve(raw.size());
  for (char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    const bool punct = u < 0x80 && !text::is_ascii_alnum(c) && !text::is_ascii_space(c) && c != '-';
    if (!punct) kept.push_back(c);
  }
  return text::collapse_whitespace(text::to_upper(kept));
}

}  // namespace rpys
