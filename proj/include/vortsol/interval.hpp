#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortsol {

class IntervalDivisionError : public std::domain_error {
public:
    IntervalDivisionError() : std::domain_error("interval division by an interval containing 0") {}
};

class IntervalDomainError : public std::domain_error {
public:
    explicit IntervalDomainError(const std::string& what) : std::domain_error(what) {}
};

// Closed interval [lo, hi]; every operation rounds outward by one ulp per bound.
class Interval {
public:
    Interval() = default;
    Interval(double x);  // NOLINT: point intervals convert implicitly
    Interval(double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double width() const noexcept { return hi_ - lo_; }
    double mid() const noexcept;
    double mag() const noexcept;

    bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    bool contains_zero() const noexcept { return lo_ <= 0 && 0 <= hi_; }
    bool subset_of(const Interval& o) const noexcept { return o.lo_ <= lo_ && hi_ <= o.hi_; }
    bool interior_of(const Interval& o) const noexcept { return o.lo_ < lo_ && hi_ < o.hi_; }
    bool positive() const noexcept { return lo_ > 0; }
    bool negative() const noexcept { return hi_ < 0; }

    Interval operator-() const noexcept;
    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

private:
    double lo_ = 0;
    double hi_ = 0;
};

Interval operator+(Interval a, const Interval& b);
Interval operator-(Interval a, const Interval& b);
Interval operator*(Interval a, const Interval& b);
Interval operator/(Interval a, const Interval& b);

Interval sqrt(const Interval& x);
Interval cbrt(const Interval& x);
Interval pow(const Interval& x, int n);
Interval sqr(const Interval& x);
Interval hull(const Interval& a, const Interval& b);
// Empty optional-like result: returns false when the intersection is empty.
bool intersect(const Interval& a, const Interval& b, Interval& out);

double round_down(double x);
double round_up(double x);

// Value and derivative enclosures for forward-mode differentiation.
struct Dual {
    Interval v;
    Interval d;
    Dual() = default;
    Dual(double x) : v(x), d(0.0) {}  // NOLINT
    Dual(Interval x) : v(x), d(0.0) {}  // NOLINT
    Dual(Interval x, Interval dx) : v(x), d(dx) {}
    static Dual variable(const Interval& x) { return {x, Interval(1.0)}; }
};

Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator-(const Dual& a);
Dual operator*(const Dual& a, const Dual& b);
Dual operator/(const Dual& a, const Dual& b);
Dual sqrt(const Dual& a);
Dual cbrt(const Dual& a);

// Enclosures of the radicals pipeline at V.
Interval omega_plus_enclosure(const Interval& V);
Interval f_of_V(const Interval& V);
Interval f_prime_of_V(const Interval& V);

struct RootEnclosure {
    Interval interval;
    bool unique = false;
    bool contracted = true;
    int iterations = 0;
};

struct NewtonOptions {
    int max_iterations = 100000;
    // Called for each Newton contraction with the box before and after.
    std::function<void(const Interval&, const Interval&)> on_step;
};

using IntervalFunction = std::function<Interval(const Interval&)>;

std::vector<RootEnclosure> interval_newton(const IntervalFunction& f,
                                           const IntervalFunction& f_prime,
                                           const Interval& search, double width_target,
                                           const NewtonOptions& opts = {});

struct VStarResult {
    RootEnclosure enclosure;
    int roots_found = 0;
    bool inside_target = false;
};

// Searches [1e-7, 1e7] for roots of f(V).
VStarResult compute_vstar(double width_target = 1e-9);

struct AsymptoticSample {
    double V;
    Interval f;
    Interval omega_plus;
    Interval y0;
    bool sign_ok;
    bool bracket_ok;        // brackets that hold for the exact roots
    // power-law brackets for omega_plus: (-2^{1/3}, -1) G^{1/3} / sqrt 3 for small G,
    // (-sqrt G, -0.99 sqrt G + G^{1/4}) for large G
    bool power_law_bracket_ok;
};

struct AsymptoticReport {
    std::vector<AsymptoticSample> large_V;  // V in [1e6, 1e7]: f < 0
    std::vector<AsymptoticSample> small_V;  // V in [1e-7, 1e-6]: f > 0
    bool signs_ok = true;
    bool brackets_ok = true;
    bool power_law_brackets_ok = true;
    std::vector<std::string> failures;
};

AsymptoticReport verify_asymptotics(int interior_points = 50);

} // namespace vortsol
