#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defo/errors.hpp"

namespace defo {

/// Finite-dimensional Z-graded vector space with a named basis in each degree.
/// Basis vectors also carry a global index: ordered by degree, then by position.
class GradedSpace {
 public:
  GradedSpace() = default;

  explicit GradedSpace(const std::map<int, std::vector<std::string>>& degrees) {
    for (const auto& [d, names] : degrees) {
      if (names.empty()) continue;
      if (min_ > max_) min_ = max_ = d;
      min_ = std::min(min_, d);
      max_ = std::max(max_, d);
    }
    for (const auto& [d, names] : degrees) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) throw ParseError("empty basis name in degree " + std::to_string(d));
        if (!lookup_.emplace(names[i], std::make_pair(d, static_cast<int>(i))).second)
          throw ParseError("duplicate basis name '" + names[i] + "'");
      }
      if (!names.empty()) names_[d] = names;
    }
    for (const auto& [d, names] : names_) {
      offset_[d] = static_cast<int>(global_.size());
      for (std::size_t i = 0; i < names.size(); ++i) global_.emplace_back(d, static_cast<int>(i));
    }
  }

  /// Empty window is reported as min > max.
  int min_degree() const { return min_; }
  int max_degree() const { return max_; }
  bool empty() const { return global_.empty(); }

  std::size_t dim(int d) const {
    auto it = names_.find(d);
    return it == names_.end() ? 0 : it->second.size();
  }
  const std::string& name(int d, std::size_t i) const { return names_.at(d).at(i); }
  const std::vector<std::string>& names(int d) const {
    static const std::vector<std::string> none;
    auto it = names_.find(d);
    return it == names_.end() ? none : it->second;
  }
  const std::map<int, std::vector<std::string>>& all_names() const { return names_; }

  std::optional<std::pair<int, int>> find(const std::string& n) const {
    auto it = lookup_.find(n);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  std::pair<int, int> at(const std::string& n) const {
    auto f = find(n);
    if (!f) throw ParseError("unknown basis name '" + n + "'");
    return *f;
  }

  std::size_t total_dim() const { return global_.size(); }
  int global(int d, int i) const { return offset_.at(d) + i; }
  std::pair<int, int> local(int g) const { return global_.at(g); }
  int degree_of(int g) const { return global_.at(g).first; }
  const std::string& name_of(int g) const { return name(global_[g].first, global_[g].second); }

  bool operator==(const GradedSpace& o) const { return names_ == o.names_; }

 private:
  int min_ = 1, max_ = 0;
  std::map<int, std::vector<std::string>> names_;
  std::map<std::string, std::pair<int, int>> lookup_;
  std::map<int, int> offset_;
  std::vector<std::pair<int, int>> global_;
};

}  // namespace defo
