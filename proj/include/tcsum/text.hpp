#pragma once

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace tcsum {

struct SentenceTokens {
  std::vector<std::string> tokens;
  std::string source_text;
};

struct Budget {
  enum class Unit { Words, Bytes };
  Unit unit = Unit::Words;
  std::size_t value = 0;
};

struct ClusterRecord {
  std::string id;
  std::vector<std::vector<SentenceTokens>> documents;
  std::vector<std::string> references;
  std::optional<std::string> category;
  Budget budget;
};

struct LabeledDoc {
  std::string id;
  std::string category;
  std::vector<SentenceTokens> sentences;
};

namespace detail {

// Abbreviations that keep their trailing period and never end a sentence.
inline const std::array<const char*, 4> kAbbreviations = {"u.s.", "mr.", "dr.",
                                                          "st."};

inline bool is_abbreviation(const std::string& w) {
  for (const char* a : kAbbreviations)
    if (w == a) return true;
  return false;
}

inline bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace detail

// Lowercases, splits punctuation into separate tokens, and breaks sentences
// on . ! ? at the end of a whitespace-delimited word. A short abbreviation
// list keeps tokens like "u.s." intact.
inline std::vector<SentenceTokens> tokenize(const std::string& text) {
  std::vector<SentenceTokens> sentences;
  std::vector<std::string> current;
  std::string current_text;

  auto flush_sentence = [&]() {
    if (!current.empty()) {
      while (!current_text.empty() && current_text.back() == ' ')
        current_text.pop_back();
      sentences.push_back({current, current_text});
    }
    current.clear();
    current_text.clear();
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string word = text.substr(start, i - start);
    for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    current_text += word;
    current_text += ' ';

    if (detail::is_abbreviation(word)) {
      current.push_back(word);
      continue;
    }

    // Split every non-alphanumeric character into its own token.
    std::string run;
    bool sentence_done = false;
    for (std::size_t j = 0; j < word.size(); ++j) {
      const char c = word[j];
      if (std::isalnum(static_cast<unsigned char>(c))) {
        run += c;
      } else {
        if (!run.empty()) {
          current.push_back(run);
          run.clear();
        }
        current.push_back(std::string(1, c));
        // Terminal punctuation at the end of the word (hence followed by
        // whitespace or end of input) closes the sentence.
        if (detail::is_terminal(c) && j + 1 == word.size())
          sentence_done = true;
      }
    }
    if (!run.empty()) current.push_back(run);
    if (sentence_done) flush_sentence();
  }
  flush_sentence();
  return sentences;
}

inline std::string render_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Flattened view of a cluster: documents in file order, sentences in
// document order.
inline std::vector<const SentenceTokens*> flatten_cluster(
    const ClusterRecord& cluster) {
  std::vector<const SentenceTokens*> out;
  for (const auto& doc : cluster.documents)
    for (const auto& sent : doc) out.push_back(&sent);
  return out;
}

}  // namespace tcsum
