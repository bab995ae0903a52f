#include "vortsol/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vortsol {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double round_down(double x) { return std::nextafter(x, -kInf); }
double round_up(double x) { return std::nextafter(x, kInf); }

Interval::Interval(double x) : lo_(x), hi_(x) {
    if (std::isnan(x)) throw IntervalDomainError("NaN interval endpoint");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi)) throw IntervalDomainError("NaN interval endpoint");
    if (lo > hi) throw IntervalDomainError("interval with lo > hi");
}

double Interval::mid() const noexcept {
    if (lo_ == -hi_) return 0.0;
    return lo_ + 0.5 * (hi_ - lo_);
}

double Interval::mag() const noexcept { return std::max(std::abs(lo_), std::abs(hi_)); }

Interval Interval::operator-() const noexcept {
    Interval r;
    r.lo_ = -hi_;
    r.hi_ = -lo_;
    return r;
}

Interval& Interval::operator+=(const Interval& o) {
    *this = Interval(round_down(lo_ + o.lo_), round_up(hi_ + o.hi_));
    return *this;
}

Interval& Interval::operator-=(const Interval& o) {
    *this = Interval(round_down(lo_ - o.hi_), round_up(hi_ - o.lo_));
    return *this;
}

Interval& Interval::operator*=(const Interval& o) {
    const double p[4] = {lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_, hi_ * o.hi_};
    double lo = p[0], hi = p[0];
    for (double v : p) {
        // 0 * inf never arises for finite operands
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    *this = Interval(round_down(lo), round_up(hi));
    return *this;
}

Interval& Interval::operator/=(const Interval& o) {
    if (o.contains_zero()) throw IntervalDivisionError();
    const double q[4] = {lo_ / o.lo_, lo_ / o.hi_, hi_ / o.lo_, hi_ / o.hi_};
    double lo = q[0], hi = q[0];
    for (double v : q) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    *this = Interval(round_down(lo), round_up(hi));
    return *this;
}

Interval operator+(Interval a, const Interval& b) { return a += b; }
Interval operator-(Interval a, const Interval& b) { return a -= b; }
Interval operator*(Interval a, const Interval& b) { return a *= b; }
Interval operator/(Interval a, const Interval& b) { return a /= b; }

Interval sqrt(const Interval& x) {
    if (x.hi() < 0) throw IntervalDomainError("sqrt of a negative interval");
    const double lo = x.lo() <= 0 ? 0.0 : std::max(0.0, round_down(std::sqrt(x.lo())));
    return {lo, round_up(std::sqrt(x.hi()))};
}

namespace {

// Bounds on a^n for a >= 0 by repeated multiplication, each product rounded outward.
double pow_down(double a, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r = std::max(0.0, round_down(r * a));
    return r;
}

double pow_up(double a, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r = round_up(r * a);
    return r;
}

double cube_up(double r) { return r >= 0 ? pow_up(r, 3) : -pow_down(-r, 3); }
double cube_down(double r) { return r >= 0 ? pow_down(r, 3) : -pow_up(-r, 3); }

double cbrt_up(double x);

// Cubes of tiny roots underflow, so tiny arguments are scaled by 2^600 (exact) first.
double cbrt_down(double x) {
    if (x != 0 && std::abs(x) < 0x1p-900) return std::ldexp(cbrt_down(std::ldexp(x, 600)), -200);
    double r = std::cbrt(x);
    while (cube_up(r) > x) r = round_down(r);
    return r;
}

double cbrt_up(double x) {
    if (x != 0 && std::abs(x) < 0x1p-900) return std::ldexp(cbrt_up(std::ldexp(x, 600)), -200);
    double r = std::cbrt(x);
    while (cube_down(r) < x) r = round_up(r);
    return r;
}

} // namespace

Interval cbrt(const Interval& x) { return {cbrt_down(x.lo()), cbrt_up(x.hi())}; }

Interval pow(const Interval& x, int n) {
    if (n < 0) return Interval(1.0) / pow(x, -n);
    if (n == 0) return Interval(1.0);
    const double a = x.lo(), b = x.hi();
    if (n % 2 == 1) {
        const double lo = a >= 0 ? pow_down(a, n) : -pow_up(-a, n);
        const double hi = b >= 0 ? pow_up(b, n) : -pow_down(-b, n);
        return {lo, hi};
    }
    if (a >= 0) return {pow_down(a, n), pow_up(b, n)};
    if (b <= 0) return {pow_down(-b, n), pow_up(-a, n)};
    return {0.0, pow_up(x.mag(), n)};
}

Interval sqr(const Interval& x) { return pow(x, 2); }

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

bool intersect(const Interval& a, const Interval& b, Interval& out) {
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (lo > hi) return false;
    out = Interval(lo, hi);
    return true;
}

Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }

Dual operator/(const Dual& a, const Dual& b) {
    const Interval q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}

Dual sqrt(const Dual& a) {
    const Interval s = sqrt(a.v);
    return {s, a.d / (Interval(2.0) * s)};
}

Dual cbrt(const Dual& a) {
    const Interval r = cbrt(a.v);
    return {r, a.d / (Interval(3.0) * sqr(r))};
}

namespace {

template <class T>
struct PipelineValues {
    T y0;
    T omega_plus;
};

template <class T>
PipelineValues<T> radicals_pipeline(const T& G) {
    const T sqrt3 = sqrt(T(3.0));
    const T two53 = cbrt(T(32.0));
    T z1;
    if (G.v_or_self().hi() < 1e-30) {
        const T w = T(32.0) * G + T(27.0) + T(3.0) * sqrt3 * sqrt(T(27.0) + T(64.0) * G);
        z1 = two53 * cbrt(G) / cbrt(w);
    } else if (G.v_or_self().lo() > 1e30) {
        const T iG = T(1.0) / G;
        const T w = T(32.0) + T(27.0) * iG + T(3.0) * sqrt3 * sqrt(T(27.0) * iG * iG + T(64.0) * iG);
        z1 = two53 / cbrt(w);
    } else {
        const T G2 = G * G;
        const T G4 = G2 * G2;
        const T z0 = T(32.0) * G2 * G + T(27.0) * G2 + T(3.0) * sqrt3 * sqrt(T(27.0) * G4 + T(64.0) * G4 * G);
        z1 = two53 * G / cbrt(z0);
    }
    const T y0 = T(2.0) * G / T(3.0) * (T(1.0) + z1 + T(1.0) / z1);
    const T s2y = sqrt(T(2.0) * y0);
    const T rad = T(4.0) * G + T(4.0) * G / s2y - T(2.0) * y0;
    const T omega_plus = (sqrt(rad) - s2y) / T(2.0);
    return {y0, omega_plus};
}

// Lets the pipeline branch on the value enclosure for both Interval and Dual.
struct IV {
    Interval x;
    IV() = default;
    IV(double d) : x(d) {}  // NOLINT
    IV(Interval i) : x(i) {}  // NOLINT
    const Interval& v_or_self() const { return x; }
};
IV operator+(const IV& a, const IV& b) { return a.x + b.x; }
IV operator-(const IV& a, const IV& b) { return a.x - b.x; }
IV operator*(const IV& a, const IV& b) { return a.x * b.x; }
IV operator/(const IV& a, const IV& b) { return a.x / b.x; }
IV sqrt(const IV& a) { return sqrt(a.x); }
IV cbrt(const IV& a) { return cbrt(a.x); }

struct DV {
    Dual x;
    DV() = default;
    DV(double d) : x(d) {}  // NOLINT
    DV(Dual d) : x(d) {}  // NOLINT
    const Interval& v_or_self() const { return x.v; }
};
DV operator+(const DV& a, const DV& b) { return a.x + b.x; }
DV operator-(const DV& a, const DV& b) { return a.x - b.x; }
DV operator*(const DV& a, const DV& b) { return a.x * b.x; }
DV operator/(const DV& a, const DV& b) { return a.x / b.x; }
DV sqrt(const DV& a) { return sqrt(a.x); }
DV cbrt(const DV& a) { return cbrt(a.x); }

void require_positive(const Interval& V) {
    if (!(V.lo() > 0)) throw IntervalDomainError("f(V) requires V > 0");
}

} // namespace

Interval omega_plus_enclosure(const Interval& V) {
    require_positive(V);
    const IV G = Interval(1.0) / V;
    return radicals_pipeline(G).omega_plus.x;
}

Interval f_of_V(const Interval& V) {
    require_positive(V);
    const IV G = Interval(1.0) / V;
    const Interval w = radicals_pipeline(G).omega_plus.x;
    return -(Interval(3.0) * V * pow(w, 3)) / Interval(2.0) - Interval(1.0);
}

Interval f_prime_of_V(const Interval& V) {
    require_positive(V);
    const Dual v = Dual::variable(V);
    const DV G = Dual(1.0) / v;
    const Dual w = radicals_pipeline(G).omega_plus.x;
    const Dual w3 = w * w * w;
    const Dual f = -(Dual(3.0) * v * w3) / Dual(2.0) - Dual(1.0);
    return f.d;
}

namespace {

Interval y0_enclosure(const Interval& V) {
    const IV G = Interval(1.0) / V;
    return radicals_pipeline(G).y0.x;
}

std::vector<double> log_samples(double a, double b, int count) {
    std::vector<double> out;
    const double la = std::log10(a), lb = std::log10(b);
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        out.push_back(std::pow(10.0, la + t * (lb - la)));
    }
    return out;
}

} // namespace

AsymptoticReport verify_asymptotics(int interior_points) {
    AsymptoticReport rep;
    auto evaluate = [&](double V, bool large_V) {
        AsymptoticSample s{};
        s.V = V;
        const Interval Vi(V);
        const Interval G = Interval(1.0) / Vi;
        s.f = f_of_V(Vi);
        s.omega_plus = omega_plus_enclosure(Vi);
        s.y0 = y0_enclosure(Vi);
        const Interval w = s.omega_plus;
        if (large_V) {
            // small G: omega_plus = -G/2 + G^2/4 + ..., y0 = 2^{-1/3} G^{2/3} + 2G/3 + ...
            s.sign_ok = s.f.negative();
            const Interval half = G / Interval(2.0);
            const Interval g23 = pow(cbrt(G), 2) / cbrt(Interval(2.0));
            s.bracket_ok = (-half).hi() < w.lo() && w.hi() < (sqr(G) - half).lo() &&
                           g23.hi() < s.y0.lo() && s.y0.hi() < (g23 + G).lo();
            const Interval g13 = cbrt(G) / sqrt(Interval(3.0));
            s.power_law_bracket_ok = (-(cbrt(Interval(2.0)) * g13)).hi() < w.lo() && w.hi() < (-g13).lo();
        } else {
            // large G: y0 - 2G increases towards 1/8
            s.sign_ok = s.f.positive();
            const Interval rg = sqrt(G);
            s.bracket_ok = (Interval(2.0) * G).hi() < s.y0.lo() &&
                           s.y0.hi() < (Interval(2.0) * G + Interval(0.13)).lo() &&
                           (-rg).hi() < w.lo();
            const Interval upper = -(Interval(99.0) * rg) / Interval(100.0) + sqrt(rg);
            s.power_law_bracket_ok = (-rg).hi() < w.lo() && w.hi() < upper.lo();
        }
        if (!s.sign_ok) rep.failures.push_back("f has the wrong sign at V = " + std::to_string(V));
        rep.signs_ok = rep.signs_ok && s.sign_ok;
        rep.brackets_ok = rep.brackets_ok && s.bracket_ok;
        rep.power_law_brackets_ok = rep.power_law_brackets_ok && s.power_law_bracket_ok;
        (large_V ? rep.large_V : rep.small_V).push_back(s);
    };
    for (double V : log_samples(1e6, 1e7, interior_points)) evaluate(V, true);
    for (double V : log_samples(1e-7, 1e-6, interior_points)) evaluate(V, false);
    return rep;
}

} // namespace vortsol
