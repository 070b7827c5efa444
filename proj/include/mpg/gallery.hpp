#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpg/instance.hpp"

namespace mpg {

// a named executable assertion; returns a failure detail, or nothing on pass
struct GalleryCheck {
  std::string name;
  std::function<std::optional<std::string>()> run;
};

struct GalleryEntry {
  std::string name;
  GameInstance instance;
  StartSpec start;
  std::vector<GalleryCheck> checklist;
};

// fig2 | chase | irrational | integer
std::vector<std::string> gallery_names();
GalleryEntry build_example(const std::string& name);

enum class EdgeClass { plus, minus, zero };

struct WalkStatistics {
  long n = 0;
  Rational p_plus, p_minus, p_zero;  // exact frequencies, sum to 1
};

// classes indexed by edge; every walk edge must be covered
WalkStatistics walk_statistics(const std::vector<int>& walk, const std::vector<EdgeClass>& classes);

// plus/minus by edge id ("e+" / "e-"), zero elsewhere
std::vector<EdgeClass> plus_minus_classes(const GameInstance& inst);

// The committed walks that defeat every periodic opponent: for integer, the
// growing double-loop blocks; for irrational, the balanced irrational-slope
// bit schedule.  Returns edge indices into that entry's Alice graph.
std::vector<int> nonperiodic_walk(const std::string& name, long length);

}  // namespace mpg
