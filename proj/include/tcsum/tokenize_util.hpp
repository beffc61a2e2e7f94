#pragma once

#include <array>
#include <string>

namespace tcsum {

// Small fixed stopword list used by redundancy filtering and optional
// stopword removal in scoring.
inline bool is_stopword(const std::string& t) {
  static const std::array<const char*, 36> kStopwords = {
      "a",    "an",   "and",  "are", "as",   "at",   "be",   "but", "by",
      "for",  "from", "had",  "has", "have", "he",   "her",  "his", "in",
      "is",   "it",   "its",  "of",  "on",   "or",   "she",  "that", "the",
      "their", "they", "this", "to",  "was",  "were", "will", "with", "would"};
  for (const char* s : kStopwords)
    if (t == s) return true;
  return false;
}

}  // namespace tcsum
