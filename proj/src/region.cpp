#include "tern/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tern/errors.hpp"
#include "tern/io.hpp"

namespace tern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(const ParameterRegion& a, const ParameterRegion& b,
                const char* op) {
  if (a.dim() != b.dim()) {
    throw UsageError(std::string(op) + ": dimension mismatch (" +
                     std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                     ")");
  }
}

// Remainder pieces of box \ cut, disjoint by construction. Standard sweep:
// carve off the part outside cut along each coordinate in turn, shrinking the
// core to the overlap as we go.
void subtract_box(const Box& box, const Box& cut, std::vector<Box>* out) {
  Box core = box;
  for (int k = 0; k < box.dim(); ++k) {
    const Interval& b = core.coords[static_cast<std::size_t>(k)];
    const Interval& c = cut.coords[static_cast<std::size_t>(k)];
    for (const Interval& piece : subtract(b, c)) {
      Box part = core;
      part.coords[static_cast<std::size_t>(k)] = piece;
      if (!part.empty()) out->push_back(part);
    }
    Interval overlap = intersect(b, c);
    if (overlap.empty()) return;  // everything already emitted
    core.coords[static_cast<std::size_t>(k)] = overlap;
  }
  // core lies inside cut; dropped.
}

std::vector<Box> subtract_union(std::vector<Box> pieces,
                                const std::vector<Box>& cuts) {
  for (const Box& cut : cuts) {
    std::vector<Box> next;
    for (const Box& piece : pieces) {
      subtract_box(piece, cut, &next);
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return pieces;
}

bool boxes_disjoint(const Box& a, const Box& b) {
  for (int k = 0; k < a.dim(); ++k) {
    if (intersect(a.coords[static_cast<std::size_t>(k)],
                  b.coords[static_cast<std::size_t>(k)])
            .empty()) {
      return true;
    }
  }
  return false;
}

}  // namespace

Interval Interval::make(double lo, double hi, bool lo_open, bool hi_open) {
  if (std::isnan(lo) || std::isnan(hi)) {
    throw UsageError("Interval: endpoints must not be NaN");
  }
  Interval iv;
  iv.lo = lo;
  iv.hi = hi;
  iv.lo_open = lo_open || lo == -kInf;
  iv.hi_open = hi_open || hi == kInf;
  if (lo == kInf || hi == -kInf) {
    // Degenerate specification; normalize to a canonical empty interval.
    iv.lo = 1.0;
    iv.hi = 0.0;
    iv.lo_open = iv.hi_open = true;
  }
  return iv;
}

Interval Interval::closed(double lo, double hi) { return make(lo, hi, false, false); }
Interval Interval::open(double lo, double hi) { return make(lo, hi, true, true); }
Interval Interval::point(double x) { return make(x, x, false, false); }
Interval Interval::all() { return make(-kInf, kInf, true, true); }
Interval Interval::at_least(double c) { return make(c, kInf, false, true); }
Interval Interval::above(double c) { return make(c, kInf, true, true); }
Interval Interval::at_most(double c) { return make(-kInf, c, true, false); }
Interval Interval::below(double c) { return make(-kInf, c, true, true); }

bool Interval::empty() const {
  if (lo > hi) return true;
  if (lo == hi && (lo_open || hi_open)) return true;
  return false;
}

bool Interval::contains(double x) const {
  if (empty()) return false;
  const bool above_lo = x > lo || (x == lo && !lo_open);
  const bool below_hi = x < hi || (x == hi && !hi_open);
  return above_lo && below_hi;
}

bool Interval::degenerate() const { return !empty() && lo == hi; }

std::string Interval::describe() const {
  if (empty()) return "{}";
  std::ostringstream os;
  os << (lo_open ? '(' : '[');
  os << (lo == -kInf ? std::string("-inf") : format_double(lo));
  os << ", ";
  os << (hi == kInf ? std::string("inf") : format_double(hi));
  os << (hi_open ? ')' : ']');
  return os.str();
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_open = a.lo_open;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_open = b.lo_open;
  } else {
    r.lo = a.lo;
    r.lo_open = a.lo_open || b.lo_open;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_open = a.hi_open;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_open = b.hi_open;
  } else {
    r.hi = a.hi;
    r.hi_open = a.hi_open || b.hi_open;
  }
  return r;
}

bool disjoint(const Interval& a, const Interval& b) {
  return intersect(a, b).empty();
}

bool subset(const Interval& a, const Interval& b) {
  if (a.empty()) return true;
  if (b.empty()) return false;
  const bool lo_ok = b.lo < a.lo || (b.lo == a.lo && (!b.lo_open || a.lo_open));
  const bool hi_ok = b.hi > a.hi || (b.hi == a.hi && (!b.hi_open || a.hi_open));
  return lo_ok && hi_ok;
}

std::vector<Interval> subtract(const Interval& a, const Interval& b) {
  std::vector<Interval> out;
  if (a.empty()) return out;
  if (b.empty()) {
    out.push_back(a);
    return out;
  }
  // Portion of a strictly below b, then strictly above b. The piece keeps
  // b.lo iff b is open there.
  Interval below_b = Interval::make(-kInf, b.lo, true, !b.lo_open);
  Interval above_b = Interval::make(b.hi, kInf, !b.hi_open, true);
  Interval left = intersect(a, below_b);
  Interval right = intersect(a, above_b);
  if (!left.empty()) out.push_back(left);
  if (!right.empty()) out.push_back(right);
  return out;
}

bool Box::empty() const {
  for (const Interval& iv : coords) {
    if (iv.empty()) return true;
  }
  return coords.empty();
}

bool Box::contains(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) {
    throw UsageError("Box::contains: point has dimension " +
                     std::to_string(x.size()) + ", box has " +
                     std::to_string(dim()));
  }
  for (int k = 0; k < dim(); ++k) {
    if (!coords[static_cast<std::size_t>(k)].contains(x[k])) return false;
  }
  return true;
}

ParameterRegion ParameterRegion::from_interval(const Interval& iv) {
  ParameterRegion r;
  r.dim_ = 1;
  if (!iv.empty()) r.boxes_.push_back(Box{{iv}});
  return r;
}

ParameterRegion ParameterRegion::from_intervals(const std::vector<Interval>& ivs) {
  ParameterRegion r;
  r.dim_ = 1;
  for (const Interval& iv : ivs) {
    if (!iv.empty()) r.boxes_.push_back(Box{{iv}});
  }
  return r;
}

ParameterRegion ParameterRegion::from_box(Box box) {
  if (box.dim() == 0) {
    throw UsageError("ParameterRegion: box must have at least one coordinate");
  }
  ParameterRegion r;
  r.dim_ = box.dim();
  if (!box.empty()) r.boxes_.push_back(std::move(box));
  return r;
}

ParameterRegion ParameterRegion::union_of(int dim, std::vector<Box> boxes) {
  if (dim < 1) {
    throw UsageError("ParameterRegion: dim must be positive");
  }
  ParameterRegion r;
  r.dim_ = dim;
  for (Box& b : boxes) {
    if (b.dim() != dim) {
      throw UsageError("ParameterRegion::union_of: member box has dimension " +
                       std::to_string(b.dim()) + ", expected " +
                       std::to_string(dim));
    }
    if (!b.empty()) r.boxes_.push_back(std::move(b));
  }
  return r;
}

ParameterRegion ParameterRegion::point(const Eigen::VectorXd& x) {
  if (x.size() < 1) {
    throw UsageError("ParameterRegion::point: empty vector");
  }
  Box b;
  b.coords.reserve(static_cast<std::size_t>(x.size()));
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    b.coords.push_back(Interval::point(x[k]));
  }
  return from_box(std::move(b));
}

ParameterRegion ParameterRegion::point1(double x) {
  return from_interval(Interval::point(x));
}

ParameterRegion ParameterRegion::half_space(int dim, int coord, HalfSpaceDir dir,
                                            double bound) {
  if (dim < 1) throw UsageError("half_space: dim must be positive");
  if (coord < 0 || coord >= dim) {
    throw UsageError("half_space: coord out of range");
  }
  Box b;
  b.coords.assign(static_cast<std::size_t>(dim), Interval::all());
  Interval iv;
  switch (dir) {
    case HalfSpaceDir::Geq:
      iv = Interval::at_least(bound);
      break;
    case HalfSpaceDir::Gt:
      iv = Interval::above(bound);
      break;
    case HalfSpaceDir::Leq:
      iv = Interval::at_most(bound);
      break;
    case HalfSpaceDir::Lt:
      iv = Interval::below(bound);
      break;
  }
  b.coords[static_cast<std::size_t>(coord)] = iv;
  return from_box(std::move(b));
}

ParameterRegion ParameterRegion::all(int dim) {
  if (dim < 1) throw UsageError("ParameterRegion::all: dim must be positive");
  Box b;
  b.coords.assign(static_cast<std::size_t>(dim), Interval::all());
  return from_box(std::move(b));
}

ParameterRegion ParameterRegion::empty(int dim) {
  if (dim < 1) throw UsageError("ParameterRegion::empty: dim must be positive");
  ParameterRegion r;
  r.dim_ = dim;
  return r;
}

bool ParameterRegion::is_empty() const { return boxes_.empty(); }

bool ParameterRegion::contains(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) {
    throw UsageError("ParameterRegion::contains: point has dimension " +
                     std::to_string(x.size()) + ", region has " +
                     std::to_string(dim_));
  }
  for (const Box& b : boxes_) {
    if (b.contains(x)) return true;
  }
  return false;
}

bool ParameterRegion::contains(double x) const {
  Eigen::VectorXd v(1);
  v[0] = x;
  return contains(v);
}

bool ParameterRegion::is_subset_of(const ParameterRegion& other) const {
  check_dims(*this, other, "is_subset_of");
  for (const Box& b : boxes_) {
    if (!subtract_union({b}, other.boxes_).empty()) return false;
  }
  return true;
}

bool ParameterRegion::is_subset_of_complement(const ParameterRegion& other) const {
  check_dims(*this, other, "is_subset_of_complement");
  for (const Box& a : boxes_) {
    for (const Box& b : other.boxes_) {
      if (!boxes_disjoint(a, b)) return false;
    }
  }
  return true;
}

ParameterRegion ParameterRegion::complement() const {
  Box whole;
  whole.coords.assign(static_cast<std::size_t>(dim_), Interval::all());
  std::vector<Box> rem = subtract_union({whole}, boxes_);
  ParameterRegion r;
  r.dim_ = dim_;
  r.boxes_ = std::move(rem);
  return r;
}

ParameterRegion ParameterRegion::intersect_with(const ParameterRegion& other) const {
  check_dims(*this, other, "intersect_with");
  ParameterRegion r;
  r.dim_ = dim_;
  for (const Box& a : boxes_) {
    for (const Box& b : other.boxes_) {
      Box c;
      c.coords.reserve(static_cast<std::size_t>(dim_));
      for (int k = 0; k < dim_; ++k) {
        c.coords.push_back(intersect(a.coords[static_cast<std::size_t>(k)],
                                     b.coords[static_cast<std::size_t>(k)]));
      }
      if (!c.empty()) r.boxes_.push_back(std::move(c));
    }
  }
  return r;
}

bool ParameterRegion::same_set_as(const ParameterRegion& other) const {
  return is_subset_of(other) && other.is_subset_of(*this);
}

std::vector<Interval> ParameterRegion::components1() const {
  if (dim_ != 1) {
    throw UsageError("components1: defined for one-dimensional regions only");
  }
  std::vector<Interval> ivs;
  ivs.reserve(boxes_.size());
  for (const Box& b : boxes_) ivs.push_back(b.coords[0]);
  std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_open && b.lo_open;
  });
  std::vector<Interval> merged;
  for (const Interval& iv : ivs) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      // Overlapping, or touching with at least one closed side.
      const bool joins =
          iv.lo < last.hi ||
          (iv.lo == last.hi && (!iv.lo_open || !last.hi_open));
      if (joins) {
        if (iv.hi > last.hi || (iv.hi == last.hi && last.hi_open && !iv.hi_open)) {
          last.hi = iv.hi;
          last.hi_open = iv.hi_open;
        }
        continue;
      }
    }
    merged.push_back(iv);
  }
  return merged;
}

Interval ParameterRegion::hull1() const {
  std::vector<Interval> comps = components1();
  if (comps.empty()) {
    throw UsageError("hull1: region is empty");
  }
  return Interval::make(comps.front().lo, comps.back().hi, comps.front().lo_open,
                        comps.back().hi_open);
}

std::string ParameterRegion::describe() const {
  if (boxes_.empty()) return "{}";
  if (dim_ == 1) {
    std::vector<Interval> comps = components1();
    std::string s;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i) s += " u ";
      s += comps[i].describe();
    }
    return s;
  }
  std::string s;
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    if (i) s += " u ";
    s += "(";
    for (int k = 0; k < dim_; ++k) {
      if (k) s += " x ";
      s += boxes_[i].coords[static_cast<std::size_t>(k)].describe();
    }
    s += ")";
  }
  return s;
}

}  // namespace tern
