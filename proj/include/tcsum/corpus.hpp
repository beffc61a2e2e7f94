#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcsum/text.hpp"

namespace tcsum {

namespace detail {

inline void check_fields(const nlohmann::json& obj,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& optional,
                         const std::string& where) {
  for (const auto& f : required)
    if (!obj.contains(f))
      throw std::runtime_error(where + ": missing required field '" + f + "'");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& key = it.key();
    bool known = false;
    for (const auto& f : required)
      if (key == f) known = true;
    for (const auto& f : optional)
      if (key == f) known = true;
    if (!known)
      throw std::runtime_error(where + ": unknown field '" + key + "'");
  }
}

}  // namespace detail

// One JSON object per line: {"id": str, "category": str, "text": str}.
inline std::vector<LabeledDoc> read_classification_corpus(
    const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("read_classification_corpus: cannot open " +
                             path);
  std::vector<LabeledDoc> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
    const std::string where = path + ":" + std::to_string(line_no);
    detail::check_fields(obj, {"id", "category", "text"}, {}, where);
    LabeledDoc doc;
    doc.id = obj.at("id").get<std::string>();
    doc.category = obj.at("category").get<std::string>();
    doc.sentences = tokenize(obj.at("text").get<std::string>());
    docs.push_back(std::move(doc));
  }
  return docs;
}

inline void write_classification_corpus(const std::vector<LabeledDoc>& docs,
                                        const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_classification_corpus: cannot open " +
                             path);
  for (const auto& doc : docs) {
    std::string text;
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      if (i) text += ' ';
      text += doc.sentences[i].source_text;
    }
    nlohmann::json obj{{"id", doc.id}, {"category", doc.category},
                       {"text", text}};
    out << obj.dump() << '\n';
  }
}

// One JSON object per line:
// {"id": str, "category": str|null, "documents": [[str, ...], ...],
//  "references": [str, ...], "budget": {"unit": "words"|"bytes", "value": int}}
inline std::vector<ClusterRecord> read_cluster_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_cluster_corpus: cannot open " + path);
  std::vector<ClusterRecord> clusters;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
    const std::string where = path + ":" + std::to_string(line_no);
    detail::check_fields(
        obj, {"id", "category", "documents", "references", "budget"}, {},
        where);
    ClusterRecord rec;
    rec.id = obj.at("id").get<std::string>();
    if (!obj.at("category").is_null())
      rec.category = obj.at("category").get<std::string>();
    for (const auto& doc : obj.at("documents")) {
      std::vector<SentenceTokens> sentences;
      for (const auto& sent : doc) {
        auto toks = tokenize(sent.get<std::string>());
        // Each array element is one pre-split sentence; re-tokenizing may
        // split further, keep all pieces.
        for (auto& t : toks) sentences.push_back(std::move(t));
      }
      rec.documents.push_back(std::move(sentences));
    }
    if (rec.documents.empty())
      throw std::runtime_error(where + ": record '" + rec.id +
                               "' has no documents");
    for (const auto& ref : obj.at("references"))
      rec.references.push_back(ref.get<std::string>());
    const auto& budget = obj.at("budget");
    detail::check_fields(budget, {"unit", "value"}, {},
                         where + " (budget)");
    const std::string unit = budget.at("unit").get<std::string>();
    if (unit == "words")
      rec.budget.unit = Budget::Unit::Words;
    else if (unit == "bytes")
      rec.budget.unit = Budget::Unit::Bytes;
    else
      throw std::runtime_error(where + ": record '" + rec.id +
                               "': budget unit must be 'words' or 'bytes'");
    const long long value = budget.at("value").get<long long>();
    if (value <= 0)
      throw std::runtime_error(where + ": record '" + rec.id +
                               "': budget value must be positive");
    rec.budget.value = static_cast<std::size_t>(value);
    clusters.push_back(std::move(rec));
  }
  return clusters;
}

inline void write_cluster_corpus(const std::vector<ClusterRecord>& clusters,
                                 const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_cluster_corpus: cannot open " + path);
  for (const auto& rec : clusters) {
    nlohmann::json docs = nlohmann::json::array();
    for (const auto& doc : rec.documents) {
      nlohmann::json sents = nlohmann::json::array();
      for (const auto& sent : doc) sents.push_back(sent.source_text);
      docs.push_back(sents);
    }
    nlohmann::json obj{
        {"id", rec.id},
        {"category",
         rec.category ? nlohmann::json(*rec.category) : nlohmann::json()},
        {"documents", docs},
        {"references", rec.references},
        {"budget",
         {{"unit",
           rec.budget.unit == Budget::Unit::Words ? "words" : "bytes"},
          {"value", rec.budget.value}}}};
    out << obj.dump() << '\n';
  }
}

// Category vocabulary in first-seen order.
inline std::vector<std::string> collect_categories(
    const std::vector<LabeledDoc>& docs) {
  std::vector<std::string> cats;
  for (const auto& doc : docs) {
    bool seen = false;
    for (const auto& c : cats)
      if (c == doc.category) seen = true;
    if (!seen) cats.push_back(doc.category);
  }
  return cats;
}

}  // namespace tcsum
