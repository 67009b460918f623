#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace tern {

// One-dimensional interval with independent open/closed endpoint flags.
// Infinite endpoints are always open; factories normalize this.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  static Interval make(double lo, double hi, bool lo_open, bool hi_open);
  static Interval closed(double lo, double hi);
  static Interval open(double lo, double hi);
  static Interval point(double x);
  static Interval all();
  static Interval at_least(double c);  // [c, +inf)
  static Interval above(double c);     // (c, +inf)
  static Interval at_most(double c);   // (-inf, c]
  static Interval below(double c);     // (-inf, c)

  bool empty() const;
  bool contains(double x) const;
  bool degenerate() const;  // non-empty single point
  std::string describe() const;
};

Interval intersect(const Interval& a, const Interval& b);
bool disjoint(const Interval& a, const Interval& b);
bool subset(const Interval& a, const Interval& b);
// Set difference a \ b as up to two ordered pieces (empty pieces dropped).
std::vector<Interval> subtract(const Interval& a, const Interval& b);

// Axis-aligned product of intervals.
struct Box {
  std::vector<Interval> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  bool empty() const;
  bool contains(const Eigen::VectorXd& x) const;
};

enum class HalfSpaceDir { Geq, Gt, Leq, Lt };

// Finite union of boxes in R^dim. Membership, subset and disjointness
// queries are exact (interval arithmetic on endpoints, no sampling).
class ParameterRegion {
 public:
  static ParameterRegion from_interval(const Interval& iv);
  static ParameterRegion from_intervals(const std::vector<Interval>& ivs);
  static ParameterRegion from_box(Box box);
  static ParameterRegion union_of(int dim, std::vector<Box> boxes);
  static ParameterRegion point(const Eigen::VectorXd& x);
  static ParameterRegion point1(double x);
  static ParameterRegion half_space(int dim, int coord, HalfSpaceDir dir,
                                    double bound);
  static ParameterRegion all(int dim);
  static ParameterRegion empty(int dim);

  int dim() const { return dim_; }
  bool is_empty() const;
  const std::vector<Box>& boxes() const { return boxes_; }

  bool contains(const Eigen::VectorXd& x) const;
  bool contains(double x) const;  // dim-1 shorthand

  bool is_subset_of(const ParameterRegion& other) const;
  // True iff this region and `other` are disjoint (this is a subset of the
  // complement of `other`).
  bool is_subset_of_complement(const ParameterRegion& other) const;

  ParameterRegion complement() const;
  ParameterRegion intersect_with(const ParameterRegion& other) const;

  bool same_set_as(const ParameterRegion& other) const;

  // dim-1 helpers: canonical merged components and their hull.
  std::vector<Interval> components1() const;
  Interval hull1() const;

  std::string describe() const;

 private:
  int dim_ = 1;
  std::vector<Box> boxes_;  // may be empty (empty set); boxes are non-empty
};

}  // namespace tern
