#include "clg/reuse.hpp"

#include <omp.h>

#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace clg::reuse {

namespace {

void collect_ids(const doc::Element& e, std::string_view attribute, std::vector<std::string>& out) {
  if (const auto* value = e.attribute(attribute)) out.push_back(*value);
  for (const auto& child : e.children)
    if (const auto* c = child.element()) collect_ids(*c, attribute, out);
}

void require_attribute(std::string_view id_attribute) {
  if (id_attribute.empty()) throw std::invalid_argument("id attribute name must not be empty");
}

}  // namespace

ReuseStats compute_reuse_stats_serial(std::span<const doc::Document> corpus, std::string_view id_attribute) {
  require_attribute(id_attribute);
  std::vector<std::string> ids;
  for (const auto& d : corpus) collect_ids(d.root, id_attribute, ids);
  const std::unordered_set<std::string> unique(ids.begin(), ids.end());
  return {ids.size(), unique.size()};
}

ReuseStats compute_reuse_stats(std::span<const doc::Document> corpus, std::string_view id_attribute) {
  require_attribute(id_attribute);
  const auto n = static_cast<std::int64_t>(corpus.size());
  std::vector<std::vector<std::string>> per_document(corpus.size());

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) collect_ids(corpus[i].root, id_attribute, per_document[i]);

  ReuseStats stats;
  std::unordered_set<std::string> unique;
  for (auto& ids : per_document) {
    stats.total_instances += ids.size();
    for (auto& id : ids) unique.insert(std::move(id));
  }
  stats.unique_modules = unique.size();
  return stats;
}

std::string format_ratio(const ReuseStats& stats) {
  auto num = stats.ratio_numerator();
  auto den = stats.ratio_denominator();
  const auto g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace clg::reuse
