#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace covmur {

/// Ordered boundary points of an uncertainty region.
///
/// `columns`/`rows` are the emitted data. `checks` hold per-point verification
/// residuals (not all of them are emitted as CSV columns); a row is flagged
/// when any residual exceeds its check's tolerance.
struct RegionBoundary {
  struct Check {
    std::string name;
    double tolerance = 0.0;
    std::vector<double> values;  // one per row

    bool operator==(const Check&) const = default;
  };

  std::string family;  // "pauli" or "fourier"
  std::string p;       // "inf", "1", "2", ...
  int dim = 0;         // Hilbert-space dimension
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> extra;  // emitted as "# key=value"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Check> checks;

  std::vector<bool> flagged() const;
  bool all_verified() const;
  bool operator==(const RegionBoundary& other) const = default;
};

}  // namespace covmur
