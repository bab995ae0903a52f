#include "vortsol/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vortsol {

namespace {

struct Box {
    Interval x;
    bool unique;
    int iterations;
};

double split_point(const Interval& x) {
    if (x.lo() > 0 && x.hi() > 4.0 * x.lo()) return std::sqrt(x.lo()) * std::sqrt(x.hi());
    if (x.hi() < 0 && x.lo() < 4.0 * x.hi()) return -std::sqrt(-x.lo()) * std::sqrt(-x.hi());
    return x.mid();
}

bool try_eval(const IntervalFunction& f, const Interval& x, Interval& out) {
    try {
        out = f(x);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

// Touching boxes are merged. The merged box keeps the uniqueness certificate when one
// piece proved existence and f' excludes 0 on the whole hull.
void merge_touching(std::vector<RootEnclosure>& roots, const IntervalFunction& f_prime) {
    std::sort(roots.begin(), roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
        return a.interval.lo() < b.interval.lo();
    });
    std::vector<RootEnclosure> out;
    for (const auto& r : roots) {
        if (!out.empty() && r.interval.lo() <= out.back().interval.hi()) {
            auto& b = out.back();
            const bool existence = b.unique || r.unique;
            b.interval = hull(b.interval, r.interval);
            Interval d;
            b.unique = existence && try_eval(f_prime, b.interval, d) && !d.contains_zero();
            b.contracted = b.contracted && r.contracted;
            b.iterations = std::max(b.iterations, r.iterations);
        } else {
            out.push_back(r);
        }
    }
    roots.swap(out);
}

// Epsilon inflation: a Newton image strictly inside the inflated box proves a unique root there.
void certify(RootEnclosure& r, const IntervalFunction& f, const IntervalFunction& f_prime) {
    Interval y = r.interval;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double pad = 0.1 * y.width() + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(y.mid()) +
                           std::numeric_limits<double>::min();
        y = Interval(round_down(y.lo() - pad), round_up(y.hi() + pad));
        Interval dy, fm;
        if (!try_eval(f_prime, y, dy) || dy.contains_zero()) return;
        const double m = y.mid();
        if (!try_eval(f, Interval(m), fm)) return;
        const Interval N = Interval(m) - fm / dy;
        if (N.interior_of(y)) {
            Interval next;
            r.interval = intersect(N, r.interval, next) ? next : N;
            r.unique = true;
            return;
        }
    }
}

} // namespace

std::vector<RootEnclosure> interval_newton(const IntervalFunction& f,
                                           const IntervalFunction& f_prime,
                                           const Interval& search, double width_target,
                                           const NewtonOptions& opts) {
    if (!(width_target > 0)) throw std::invalid_argument("width_target must be positive");
    std::vector<RootEnclosure> roots;
    std::vector<Box> stack{{search, false, 0}};
    int total = 0;

    while (!stack.empty()) {
        Box b = stack.back();
        stack.pop_back();
        if (++total > opts.max_iterations) {
            roots.push_back({b.x, b.unique, false, b.iterations});
            continue;
        }
        ++b.iterations;

        Interval fx;
        const bool at_resolution = b.x.width() <= 4.0 * std::abs(b.x.mid()) * 1e-15 ||
                                   split_point(b.x) <= b.x.lo() || split_point(b.x) >= b.x.hi();
        if (try_eval(f, b.x, fx) && !fx.contains_zero()) continue;

        Interval dx;
        const bool have_dx = try_eval(f_prime, b.x, dx);
        if (!have_dx || dx.contains_zero()) {
            if (at_resolution) {
                roots.push_back({b.x, false, b.x.width() <= width_target, b.iterations});
                continue;
            }
            const double m = split_point(b.x);
            stack.push_back({Interval(m, b.x.hi()), false, b.iterations});
            stack.push_back({Interval(b.x.lo(), m), false, b.iterations});
            continue;
        }

        const double m = b.x.mid();
        Interval fm;
        if (!try_eval(f, Interval(m), fm)) {
            const double s = split_point(b.x);
            stack.push_back({Interval(s, b.x.hi()), b.unique, b.iterations});
            stack.push_back({Interval(b.x.lo(), s), b.unique, b.iterations});
            continue;
        }
        const Interval N = Interval(m) - fm / dx;
        Interval next;
        if (!intersect(b.x, N, next)) continue;
        if (opts.on_step) opts.on_step(b.x, next);
        const bool unique = b.unique || N.interior_of(b.x);

        if (next.width() <= width_target) {
            roots.push_back({next, unique, true, b.iterations});
            continue;
        }
        if (next.width() > 0.5 * b.x.width()) {
            if (at_resolution || next.width() <= 4.0 * std::abs(next.mid()) * 1e-15) {
                roots.push_back({next, unique, false, b.iterations});
                continue;
            }
            const double s = split_point(next);
            if (s > next.lo() && s < next.hi()) {
                stack.push_back({Interval(s, next.hi()), unique, b.iterations});
                stack.push_back({Interval(next.lo(), s), unique, b.iterations});
                continue;
            }
        }
        stack.push_back({next, unique, b.iterations});
    }
    merge_touching(roots, f_prime);
    for (auto& r : roots)
        if (!r.unique) certify(r, f, f_prime);
    return roots;
}

VStarResult compute_vstar(double width_target) {
    const auto roots = interval_newton(
        [](const Interval& v) { return f_of_V(v); },
        [](const Interval& v) { return f_prime_of_V(v); }, Interval(1e-7, 1e7), width_target);
    VStarResult r;
    r.roots_found = static_cast<int>(roots.size());
    if (!roots.empty()) r.enclosure = roots.front();
    r.inside_target = roots.size() == 1 && roots.front().unique &&
                      roots.front().interval.subset_of(Interval(0.110335, 0.110336)) &&
                      roots.front().interval.width() <= width_target;
    return r;
}

} // namespace vortsol
