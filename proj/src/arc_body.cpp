#include "ballconv/arc_body.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ballconv/errors.hpp"
#include "ballconv/numerics.hpp"

namespace ballconv {

namespace {

double wrap_2pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

Point circle_point(const Disk& d, double psi) {
    return d.center + d.radius * Vec(std::cos(psi), std::sin(psi));
}

bool inside_all(const Point& p, std::span<const Disk> disks, std::size_t skip, double tol) {
    for (std::size_t j = 0; j < disks.size(); ++j) {
        if (j == skip) continue;
        if (norm(p - disks[j].center) > disks[j].radius + tol) return false;
    }
    return true;
}

struct RawArc {
    std::size_t disk;
    double lo, hi; // position (= normal) angles on the disk's circle, hi > lo
};

} // namespace

bool circle_covered_by(const Disk& inner, std::span<const Disk> cover) {
    const int N = 4096;
    for (int k = 0; k < N; ++k) {
        Point p = circle_point(inner, 2.0 * kPi * k / N);
        bool ok = false;
        for (const Disk& d : cover)
            if (norm(p - d.center) <= d.radius + 1e-12) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

ArcBody2D full_circle(const Disk& d) {
    ArcBody2D body;
    body.arcs.push_back(Arc{d.center, d.radius, 0.0, 2.0 * kPi});
    return body;
}

ArcBody2D disk_intersection(std::span<const Disk> disks) {
    if (disks.empty()) throw ParamError("disk_intersection: needs at least one disk");
    for (const Disk& d : disks)
        if (!(d.radius > 0.0)) throw ParamError("disk_intersection: radii must be positive");

    const double tol = 1e-12;
    std::vector<RawArc> raw;

    for (std::size_t i = 0; i < disks.size(); ++i) {
        const Disk& di = disks[i];
        // Crossing angles with every other circle partition circle i.
        std::vector<double> events;
        bool dead = false;
        for (std::size_t j = 0; j < disks.size() && !dead; ++j) {
            if (j == i) continue;
            Vec d = disks[j].center - di.center;
            double L = norm(d);
            if (L < tol) {
                if (disks[j].radius < di.radius - tol) dead = true; // circle i strictly outside
                continue;
            }
            double c = (di.radius * di.radius + L * L - disks[j].radius * disks[j].radius) /
                       (2.0 * di.radius * L);
            if (c >= 1.0) {
                // Circle i entirely outside disk j unless internally tangent.
                dead = true;
            } else if (c > -1.0) {
                double beta = std::atan2(d[1], d[0]);
                double gamma = std::acos(c);
                events.push_back(wrap_2pi(beta - gamma));
                events.push_back(wrap_2pi(beta + gamma));
            }
            // c <= -1: circle i entirely inside disk j, no events.
        }
        if (dead) continue;
        if (events.empty()) {
            if (inside_all(circle_point(di, 0.0), disks, i, tol))
                raw.push_back(RawArc{i, 0.0, 2.0 * kPi});
            continue;
        }
        std::sort(events.begin(), events.end());
        // Midpoint test on each event gap.
        for (std::size_t k = 0; k < events.size(); ++k) {
            double lo = events[k];
            double hi = (k + 1 < events.size()) ? events[k + 1] : events[0] + 2.0 * kPi;
            if (hi - lo < 1e-13) continue;
            double mid = 0.5 * (lo + hi);
            if (inside_all(circle_point(di, mid), disks, i, tol)) raw.push_back(RawArc{i, lo, hi});
        }
    }

    if (raw.empty()) throw GeometryError("disk_intersection: empty or degenerate intersection");

    // Merge adjacent kept pieces of the same circle (events from non-binding disks).
    std::sort(raw.begin(), raw.end(), [](const RawArc& a, const RawArc& b) {
        return a.disk == b.disk ? a.lo < b.lo : a.disk < b.disk;
    });
    std::vector<RawArc> merged;
    for (const RawArc& a : raw) {
        if (!merged.empty() && merged.back().disk == a.disk &&
            std::abs(merged.back().hi - a.lo) < 1e-10) {
            merged.back().hi += a.hi - a.lo;
        } else {
            merged.push_back(a);
        }
    }
    // Wraparound merge on the same circle (piece ending at 2*pi continuing at 0).
    for (std::size_t i = 0; i < merged.size(); ++i) {
        for (std::size_t j = 0; j < merged.size(); ++j) {
            if (i == j || merged[i].disk != merged[j].disk) continue;
            double end_i = wrap_2pi(merged[i].hi);
            double lo_j = wrap_2pi(merged[j].lo);
            double full = merged[i].hi - merged[i].lo + merged[j].hi - merged[j].lo;
            if (std::abs(end_i - lo_j) < 1e-10 && full < 2.0 * kPi - 1e-9) {
                merged[i].hi += merged[j].hi - merged[j].lo;
                merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(j));
                if (j < i) --i;
                break;
            }
        }
    }

    // Chain arcs end-to-start into one loop.
    std::vector<RawArc> chain;
    std::vector<bool> used(merged.size(), false);
    chain.push_back(merged[0]);
    used[0] = true;
    while (chain.size() < merged.size()) {
        const RawArc& cur = chain.back();
        Point end = circle_point(disks[cur.disk], cur.hi);
        double best = 1e300;
        std::size_t pick = merged.size();
        for (std::size_t j = 0; j < merged.size(); ++j) {
            if (used[j]) continue;
            double gap = norm(circle_point(disks[merged[j].disk], merged[j].lo) - end);
            if (gap < best) {
                best = gap;
                pick = j;
            }
        }
        if (pick == merged.size() || best > 1e-8)
            throw GeometryError("disk_intersection: boundary arcs do not chain into a loop");
        chain.push_back(merged[pick]);
        used[pick] = true;
    }

    // Normal angles must be globally nondecreasing over one revolution.
    ArcBody2D body;
    double base = wrap_2pi(chain[0].lo);
    double prev_end = base;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const RawArc& a = chain[k];
        double span = a.hi - a.lo;
        double lo = base;
        if (k > 0) {
            double jump = wrap_2pi(wrap_2pi(a.lo) - wrap_2pi(prev_end));
            if (jump > 2.0 * kPi - 1e-6) jump = 0.0; // tiny negative noise at a smooth joint
            lo = prev_end + jump;
        }
        Arc arc{disks[a.disk].center, disks[a.disk].radius, lo, lo + span};
        prev_end = arc.normal_end;
        body.arcs.push_back(arc);
    }
    double closing = wrap_2pi(base + 2.0 * kPi - prev_end);
    if (closing > 2.0 * kPi - 1e-6) closing = 0.0;
    double total_turn = prev_end - base + closing;
    if (std::abs(total_turn - 2.0 * kPi) > 1e-6)
        throw GeometryError("disk_intersection: normal turn is not a full revolution");
    validate(ConvexBody{body});
    return body;
}

} // namespace ballconv
