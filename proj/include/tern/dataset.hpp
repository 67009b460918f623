#pragma once

#include <string>
#include <vector>

namespace tern {

// Observed-data container covering the three input schemas the library
// understands. `kind` says which member columns are meaningful.
struct Dataset {
  enum class Kind { Normal, TwoSample, Gravity };

  Kind kind = Kind::Normal;
  std::vector<double> x;               // Normal: observations
  std::vector<double> a, b;            // TwoSample: per-group observations
  std::vector<double> height, time;    // Gravity: paired columns

  static Dataset normal(std::vector<double> x);
  static Dataset two_sample(std::vector<double> a, std::vector<double> b);
  static Dataset gravity(std::vector<double> height, std::vector<double> time);

  std::size_t size() const;
};

const char* dataset_kind_name(Dataset::Kind kind);

}  // namespace tern
