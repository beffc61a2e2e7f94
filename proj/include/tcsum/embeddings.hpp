#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcsum/tensor.hpp"

namespace tcsum {

namespace detail {

// FNV-1a, 64 bit. Seeds the OOV vector generator so unknown tokens map to
// the same vector on every run and platform.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

// Immutable token -> vector table. Lookup is total: out-of-vocabulary tokens
// get a deterministic hash-seeded vector in [-0.1, 0.1]^dim.
class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dim,
                 std::unordered_map<std::string, std::vector<double>> entries)
      : dim_(dim), entries_(std::move(entries)) {
    for (const auto& [tok, vec] : entries_)
      if (vec.size() != dim_)
        throw std::invalid_argument("EmbeddingTable: vector for '" + tok +
                                    "' has wrong dimension");
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }

  bool contains(const std::string& token) const {
    return entries_.count(token) != 0;
  }

  std::vector<double> lookup(const std::string& token) const {
    auto it = entries_.find(token);
    if (it != entries_.end()) return it->second;
    Rng rng(detail::fnv1a64(token));
    std::vector<double> v(dim_);
    for (double& x : v) x = rng.uniform(-0.1, 0.1);
    return v;
  }

  const std::unordered_map<std::string, std::vector<double>>& entries() const {
    return entries_;
  }

 private:
  std::size_t dim_;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

// Text format: header "count dim", then one "token v1 ... v_dim" per line.
inline EmbeddingTable load_embeddings(const std::string& path,
                                      std::ostream* warnings = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_embeddings: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_embeddings: " + path + ": empty file");
  std::istringstream header(line);
  std::size_t count = 0, dim = 0;
  if (!(header >> count >> dim) || dim == 0)
    throw std::runtime_error("load_embeddings: " + path +
                             ": malformed header at line 1");
  std::unordered_map<std::string, std::vector<double>> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string token;
    if (!(row >> token))
      throw std::runtime_error("load_embeddings: " + path +
                               ": malformed line " + std::to_string(line_no));
    std::vector<double> vec(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!(row >> vec[i]))
        throw std::runtime_error("load_embeddings: " + path + ": line " +
                                 std::to_string(line_no) +
                                 ": expected " + std::to_string(dim) +
                                 " numeric values for token '" + token + "'");
    }
    double extra;
    if (row >> extra)
      throw std::runtime_error("load_embeddings: " + path + ": line " +
                               std::to_string(line_no) +
                               ": too many values for token '" + token + "'");
    if (entries.count(token) && warnings)
      *warnings << "warning: duplicate token '" << token << "' at line "
                << line_no << ", last occurrence wins\n";
    entries[token] = std::move(vec);
  }
  if (entries.size() != count && warnings)
    *warnings << "warning: header declared " << count << " entries, found "
              << entries.size() << "\n";
  return EmbeddingTable(dim, std::move(entries));
}

inline void save_embeddings(const EmbeddingTable& table,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_embeddings: cannot open " + path);
  // Sorted for reproducible files.
  std::vector<std::string> tokens;
  tokens.reserve(table.size());
  for (const auto& [tok, vec] : table.entries()) tokens.push_back(tok);
  std::sort(tokens.begin(), tokens.end());
  out << table.size() << ' ' << table.dim() << '\n';
  out.precision(17);
  for (const auto& tok : tokens) {
    out << tok;
    for (double v : table.entries().at(tok)) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace tcsum
