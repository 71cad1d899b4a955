#pragma once

#include <span>

#include "ballconv/bodies.hpp"

namespace ballconv {

struct Disk {
    Point center;
    double radius = 1.0;
};

// Boundary of the intersection of the given disks as an ArcBody2D whose
// normal angles increase by 2*pi around the loop. Throws GeometryError when
// the intersection has empty interior or the origin is not interior.
ArcBody2D disk_intersection(std::span<const Disk> disks);

// Single full circle (the disk itself).
ArcBody2D full_circle(const Disk& d);

// True when every boundary point of `inner`'s circle lies in some disk of
// `cover` (so inner is contained in the union, given it meets both).
bool circle_covered_by(const Disk& inner, std::span<const Disk> cover);

} // namespace ballconv
