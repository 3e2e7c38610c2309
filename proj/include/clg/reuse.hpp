#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "clg/docmodel.hpp"

namespace clg::reuse {

// Module instances across a corpus. An instance is an element carrying the
// id attribute; two instances are the same module iff the values are equal.
struct ReuseStats {
  std::uint64_t total_instances = 0;
  std::uint64_t unique_modules = 0;

  // (total - unique) / total as a fraction; 0/1 for an empty corpus.
  std::uint64_t ratio_numerator() const { return total_instances - unique_modules; }
  std::uint64_t ratio_denominator() const { return total_instances == 0 ? 1 : total_instances; }
  double reuse_ratio() const {
    return static_cast<double>(ratio_numerator()) / static_cast<double>(ratio_denominator());
  }

  bool operator==(const ReuseStats&) const = default;
};

// Parallel over documents; counts merge commutatively.
ReuseStats compute_reuse_stats(std::span<const doc::Document> corpus, std::string_view id_attribute = "id");

// Single-threaded reference used to check the parallel kernel.
ReuseStats compute_reuse_stats_serial(std::span<const doc::Document> corpus, std::string_view id_attribute = "id");

// "n/d" reduced to lowest terms.
std::string format_ratio(const ReuseStats& stats);

}  // namespace clg::reuse
