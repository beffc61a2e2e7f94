#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tcsum/summarizer.hpp"

namespace tcsum {

namespace detail {

inline nlohmann::json tensor_to_json(const Tensor2& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < t.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < t.cols; ++c) row.push_back(t.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Tensor2 tensor_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::runtime_error("model: tensor is not an array");
  Tensor2 t;
  t.rows = j.size();
  t.cols = t.rows ? j.front().size() : 0;
  for (const auto& row : j) {
    if (row.size() != t.cols)
      throw std::runtime_error("model: ragged tensor rows");
    for (const auto& v : row) t.data.push_back(v.get<double>());
  }
  return t;
}

}  // namespace detail

inline nlohmann::json model_to_json(const TcsumModel& model) {
  nlohmann::json j;
  j["version"] = 1;
  j["dims"] = {{"k", model.word_dim},
               {"m", model.feature_dim},
               {"h", model.window}};
  j["categories"] = model.categories;
  j["w_alpha"] = detail::tensor_to_json(model.encoder.w_alpha);
  j["w_beta"] = detail::tensor_to_json(model.classifier.w_beta);
  j["mode"] = to_string(model.summarizer.mode);
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& sub : model.summarizer.sub_matrices)
    subs.push_back(detail::tensor_to_json(sub));
  j["sub_matrices"] = std::move(subs);
  return j;
}

inline TcsumModel model_from_json(const nlohmann::json& j) {
  if (!j.contains("version") || j.at("version").get<int>() != 1)
    throw std::runtime_error("model: unsupported or missing version");
  TcsumModel model;
  model.word_dim = j.at("dims").at("k").get<std::size_t>();
  model.feature_dim = j.at("dims").at("m").get<std::size_t>();
  model.window = j.at("dims").at("h").get<std::size_t>();
  model.categories = j.at("categories").get<std::vector<std::string>>();
  model.encoder.w_alpha = detail::tensor_from_json(j.at("w_alpha"));
  model.encoder.window = model.window;
  model.encoder.feature_dim = model.feature_dim;
  model.encoder.word_dim = model.word_dim;
  model.classifier.w_beta = detail::tensor_from_json(j.at("w_beta"));
  model.classifier.categories = model.categories;
  model.summarizer.mode = mode_from_string(j.at("mode").get<std::string>());
  for (const auto& sub : j.at("sub_matrices"))
    model.summarizer.sub_matrices.push_back(detail::tensor_from_json(sub));
  return model;
}

inline void save_model(const TcsumModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out << model_to_json(model).dump(2) << '\n';
}

inline TcsumModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("load_model: " + path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace tcsum
