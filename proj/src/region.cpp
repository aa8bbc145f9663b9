#include "covmur/region.hpp"

#include <cmath>

namespace covmur {

std::vector<bool> RegionBoundary::flagged() const {
  std::vector<bool> out(rows.size(), false);
  for (const auto& check : checks) {
    for (std::size_t i = 0; i < rows.size() && i < check.values.size(); ++i) {
      if (!(std::abs(check.values[i]) <= check.tolerance)) out[i] = true;
    }
  }
  return out;
}

bool RegionBoundary::all_verified() const {
  for (bool f : flagged())
    if (f) return false;
  return true;
}

}  // namespace covmur
