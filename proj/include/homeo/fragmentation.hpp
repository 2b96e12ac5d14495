#pragma once

#include "homeo/pl_map.hpp"
#include "homeo/support.hpp"

#include <optional>
#include <vector>

namespace homeo {

// Finite open cover {E_1..E_m} of the interval or circle; each element is a
// union of pairwise disjoint open arcs.
struct OpenCover1D {
  Domain domain;
  std::vector<std::vector<OpenArc>> elements;
};

// Throws InvariantViolation for overlapping arcs inside an element or an
// empty cover, NoOverlap when the arcs do not cover the manifold.
void validate(const OpenCover1D& cover);

// Linear (interval) or cyclic (circle) chain of arcs from the cover. Segment
// i runs between consecutive cut points and is owned by one element; each
// cut sits at the midpoint of the overlap of its two neighbouring arcs.
struct CutSchedule {
  struct Segment {
    std::size_t element;
    Rational lo;  // lift coordinates
    Rational hi;
  };
  struct Cut {
    Rational point;
    Rational half_width;  // a quarter of the overlap width
    std::size_t left;     // segment indices
    std::size_t right;
  };
  // Set when one element is the whole manifold.
  std::optional<std::size_t> whole_element;
  std::vector<Segment> segments;
  std::vector<Cut> cuts;
};

CutSchedule plan_cuts(const OpenCover1D& cover);

// Largest displacement below which fragment() is guaranteed to succeed;
// nullopt stands for +infinity (a one-piece cover).
std::optional<Rational> fragmentation_threshold(const OpenCover1D& cover);

// Pieces g_1..g_m with g_1 o g_2 o ... o g_m = f and supp(g_i) inside E_i.
// Throws NotFragmentable when the cut points cannot be matched.
std::vector<PLMap> fragment(const PLMap& f, const OpenCover1D& cover);

}  // namespace homeo
