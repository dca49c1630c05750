#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "absprob/abstraction.hpp"
#include "absprob/document.hpp"
#include "absprob/mapping.hpp"

namespace absprob::testing {

inline std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(ABSPROB_FIXTURES) / relative;
}

inline WeightedTheory load_weighted(const std::string& relative) {
  return load_theory(fixture_path(relative)).build();
}

struct FixtureTriple {
  WeightedTheory high;
  WeightedTheory low;
  RefinementMapping m;
};

/// Loads "<dir>/<low>", "<dir>/<high>" and "<dir>/<map>".
inline FixtureTriple load_triple(const std::string& dir, const std::string& low, const std::string& high,
                                 const std::string& map) {
  WeightedTheory l = load_weighted(dir + "/" + low);
  WeightedTheory h = load_weighted(dir + "/" + high);
  auto entries = load_mapping(fixture_path(dir + "/" + map), h.theory.vocabulary());
  RefinementMapping m(h.theory.vocabulary_ptr(), l.theory.vocabulary_ptr(), std::move(entries));
  return {std::move(h), std::move(l), std::move(m)};
}

inline FixtureTriple university() { return load_triple("university", "low.thy", "high.thy", "mapping.map"); }

}  // namespace absprob::testing
