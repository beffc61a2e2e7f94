#pragma once

#include <string>

namespace tcsum {

// Classic Porter stemmer (1980), operating on lowercase ASCII words.
// Non-alphabetic tokens pass through unchanged.
class PorterStemmer {
 public:
  static std::string stem(const std::string& word) {
    for (char c : word)
      if (c < 'a' || c > 'z') return word;
    if (word.size() <= 2) return word;
    std::string b = word;
    step1a(b);
    step1b(b);
    step1c(b);
    step2(b);
    step3(b);
    step4(b);
    step5(b);
    return b;
  }

 private:
  static bool is_consonant(const std::string& b, std::size_t i) {
    switch (b[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !is_consonant(b, i - 1);
      default:
        return true;
    }
  }

  // Measure of the stem b[0..end]: number of VC sequences.
  static int measure(const std::string& b, std::size_t end) {
    int m = 0;
    std::size_t i = 0;
    while (i < end && is_consonant(b, i)) ++i;
    while (i < end) {
      while (i < end && !is_consonant(b, i)) ++i;
      if (i >= end) break;
      ++m;
      while (i < end && is_consonant(b, i)) ++i;
    }
    return m;
  }

  static bool has_vowel(const std::string& b, std::size_t end) {
    for (std::size_t i = 0; i < end; ++i)
      if (!is_consonant(b, i)) return true;
    return false;
  }

  static bool double_consonant(const std::string& b) {
    std::size_t n = b.size();
    return n >= 2 && b[n - 1] == b[n - 2] && is_consonant(b, n - 1);
  }

  // cvc at the end, where the final c is not w, x or y.
  static bool cvc(const std::string& b) {
    std::size_t n = b.size();
    if (n < 3) return false;
    if (!is_consonant(b, n - 3) || is_consonant(b, n - 2) ||
        !is_consonant(b, n - 1))
      return false;
    char c = b[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  static bool ends_with(const std::string& b, const char* suffix) {
    std::size_t len = std::char_traits<char>::length(suffix);
    return b.size() >= len && b.compare(b.size() - len, len, suffix) == 0;
  }

  // Replace suffix if the remaining stem has measure > m_min.
  static bool replace(std::string& b, const char* suffix, const char* repl,
                      int m_min) {
    if (!ends_with(b, suffix)) return false;
    std::size_t stem_len =
        b.size() - std::char_traits<char>::length(suffix);
    if (measure(b, stem_len) > m_min) {
      b.resize(stem_len);
      b += repl;
    }
    return true;
  }

  static void step1a(std::string& b) {
    if (ends_with(b, "sses")) b.resize(b.size() - 2);
    else if (ends_with(b, "ies")) b.resize(b.size() - 2);
    else if (ends_with(b, "ss")) {}
    else if (ends_with(b, "s")) b.resize(b.size() - 1);
  }

  static void step1b(std::string& b) {
    bool fixup = false;
    if (ends_with(b, "eed")) {
      if (measure(b, b.size() - 3) > 0) b.resize(b.size() - 1);
    } else if (ends_with(b, "ed") && has_vowel(b, b.size() - 2)) {
      b.resize(b.size() - 2);
      fixup = true;
    } else if (ends_with(b, "ing") && has_vowel(b, b.size() - 3)) {
      b.resize(b.size() - 3);
      fixup = true;
    }
    if (fixup) {
      if (ends_with(b, "at") || ends_with(b, "bl") || ends_with(b, "iz")) {
        b += 'e';
      } else if (double_consonant(b) && !ends_with(b, "l") &&
                 !ends_with(b, "s") && !ends_with(b, "z")) {
        b.resize(b.size() - 1);
      } else if (measure(b, b.size()) == 1 && cvc(b)) {
        b += 'e';
      }
    }
  }

  static void step1c(std::string& b) {
    if (ends_with(b, "y") && has_vowel(b, b.size() - 1)) b.back() = 'i';
  }

  static void step2(std::string& b) {
    static const std::pair<const char*, const char*> rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"}};
    for (const auto& [suf, repl] : rules)
      if (replace(b, suf, repl, 0)) return;
  }

  static void step3(std::string& b) {
    static const std::pair<const char*, const char*> rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
    for (const auto& [suf, repl] : rules)
      if (replace(b, suf, repl, 0)) return;
  }

  static void step4(std::string& b) {
    static const char* suffixes[] = {"al",    "ance", "ence", "er",  "ic",
                                     "able",  "ible", "ant",  "ement", "ment",
                                     "ent",   "ou",   "ism",  "ate", "iti",
                                     "ous",   "ive",  "ize"};
    for (const char* suf : suffixes) {
      if (!ends_with(b, suf)) continue;
      std::size_t stem_len = b.size() - std::char_traits<char>::length(suf);
      if (measure(b, stem_len) > 1) b.resize(stem_len);
      return;
    }
    if (ends_with(b, "ion")) {
      std::size_t stem_len = b.size() - 3;
      if (measure(b, stem_len) > 1 && stem_len > 0 &&
          (b[stem_len - 1] == 's' || b[stem_len - 1] == 't'))
        b.resize(stem_len);
    }
  }

  static void step5(std::string& b) {
    // 5a
    if (ends_with(b, "e")) {
      int m = measure(b, b.size() - 1);
      if (m > 1) {
        b.pop_back();
      } else if (m == 1) {
        std::string without = b.substr(0, b.size() - 1);
        if (!cvc(without)) b.pop_back();
      }
    }
    // 5b
    if (measure(b, b.size()) > 1 && double_consonant(b) && ends_with(b, "l"))
      b.pop_back();
  }
};

}  // namespace tcsum
