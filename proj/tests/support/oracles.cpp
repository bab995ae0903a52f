#include "support/oracles.hpp"

#include "vortsol/interval.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/cbrt.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace oracle {

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

big quartic(const big& G, const big& k) { return k * k * k * k - 2 * G * k * k + 2 * G * k + G * G; }
big quartic_d(const big& G, const big& k) { return 4 * k * k * k - 4 * G * k + 2 * G; }

// Roots of the quartic in the scaled variable x = k / s.
std::vector<cld> scaled_quartic_roots(double G, long double& s) {
    const long double g = G;
    // x^4 + b2 x^2 + b1 x + b0 after dividing by s^4
    long double b2, b1, b0;
    if (G >= 1) {
        s = std::sqrt(g);
        b2 = -2;
        b1 = 2 / s;
        b0 = 1;
    } else {
        s = std::cbrt(g);
        b2 = -2 * s;
        b1 = 2;
        b0 = s * s;
    }
    Eigen::Matrix<long double, 4, 4> C = Eigen::Matrix<long double, 4, 4>::Zero();
    C(1, 0) = 1;
    C(2, 1) = 1;
    C(3, 2) = 1;
    C(0, 3) = -b0;
    C(1, 3) = -b1;
    C(2, 3) = -b2;
    C(3, 3) = 0;
    Eigen::EigenSolver<Eigen::Matrix<long double, 4, 4>> es(C, false);
    std::vector<cld> out;
    for (int i = 0; i < 4; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

std::vector<double> real_scaled_roots(double G, long double& s) {
    std::vector<double> xs;
    for (const cld& z : scaled_quartic_roots(G, s))
        if (std::abs(z.imag()) <= 1e-6L * (1 + std::abs(z))) xs.push_back(static_cast<double>(z.real()));
    std::sort(xs.begin(), xs.end());
    return xs;
}

} // namespace

int quartic_real_root_count(double G) {
    long double s;
    return static_cast<int>(real_scaled_roots(G, s).size());
}

std::pair<double, double> quartic_negative_roots(double G) {
    long double s;
    std::vector<double> roots;
    const big Gb = G;
    for (double x : real_scaled_roots(G, s)) {
        big k = big(x) * big(s);
        for (int it = 0; it < 200; ++it) {
            const big step = quartic(Gb, k) / quartic_d(Gb, k);
            k -= step;
            if (abs(step) <= abs(k) * big("1e-45")) break;
        }
        if (k < 0) roots.push_back(static_cast<double>(k));
    }
    if (roots.size() != 2) throw std::runtime_error("companion matrix did not give two negative roots");
    std::sort(roots.begin(), roots.end());
    return {roots[0], roots[1]};
}

std::vector<double> critical_velocities_bisection(double g, double sigma, double gamma) {
    const big G = g, S = sigma, Gm = gamma;
    auto h = [&](const big& c) { return c * c * c * c - 4 * S * Gm * c - 4 * S * G; };
    const big sg = S * Gm;
    const big cm = sg >= 0 ? big(boost::math::cbrt(sg)) : big(-boost::math::cbrt(big(-sg)));
    std::vector<double> out;
    if (!(h(cm) < 0)) return out;
    for (int side : {-1, 1}) {
        big a = cm, step = 1;
        big b = cm + side * step;
        while (h(b) < 0) {
            step *= 2;
            b = cm + side * step;
        }
        for (int it = 0; it < 400; ++it) {
            const big mid = (a + b) / 2;
            if (h(mid) < 0) a = mid;
            else b = mid;
        }
        const big c = (a + b) / 2;
        const big lin = G + c * Gm;
        if (lin > big("1e-12") * (abs(G) + abs(c * Gm) + S)) out.push_back(static_cast<double>(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double resolvent_root_cardano(double G) {
    const big g = G;
    // y = t + 2G/3 turns y^3 - 2G y^2 - G^2/2 into t^3 + p t + q
    const big p = -4 * g * g / 3;
    const big q = -16 * g * g * g / 27 - g * g / 2;
    const big disc = q * q / 4 + p * p * p / 27;
    const big r = sqrt(disc);
    const big u = boost::math::cbrt(big(-q / 2 + r));
    const big v_arg = -q / 2 - r;
    const big v = v_arg >= 0 ? big(boost::math::cbrt(v_arg)) : big(-boost::math::cbrt(big(-v_arg)));
    return static_cast<double>(u + v + 2 * g / 3);
}

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

int freq_of(int m, int n) { return m <= n / 2 ? m : m - n; }

std::vector<cld> dft_sum(const std::vector<cld>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<cld> tw(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) tw[static_cast<size_t>(j)] = std::polar(1.0L, -kTwoPi * j / n);
    std::vector<cld> out(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) {
        cld acc = 0;
        for (int j = 0; j < n; ++j) acc += v[static_cast<size_t>(j)] * tw[static_cast<size_t>((static_cast<long>(j) * m) % n)];
        out[static_cast<size_t>(m)] = acc / static_cast<long double>(n);
    }
    return out;
}

// Synthesis on N points of coefficients given at integer frequencies.
std::vector<long double> synth(const std::vector<std::pair<int, cld>>& coeffs, int N) {
    std::vector<cld> tw(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) tw[static_cast<size_t>(j)] = std::polar(1.0L, kTwoPi * j / N);
    std::vector<long double> out(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        cld acc = 0;
        for (const auto& [f, c] : coeffs) {
            const long idx = ((static_cast<long>(f) * j) % N + N) % N;
            acc += c * tw[static_cast<size_t>(idx)];
        }
        out[static_cast<size_t>(j)] = acc.real();
    }
    return out;
}

std::vector<cld> to_complex(const std::vector<long double>& v) { return {v.begin(), v.end()}; }

} // namespace

std::vector<cld> direct_dft(const std::vector<double>& v) {
    std::vector<cld> c(v.begin(), v.end());
    return dft_sum(c);
}

std::vector<double> direct_idft_real(const std::vector<cld>& c) {
    const int n = static_cast<int>(c.size());
    std::vector<std::pair<int, cld>> coeffs;
    for (int m = 0; m < n; ++m) coeffs.emplace_back(m, c[static_cast<size_t>(m)]);
    const auto v = synth(coeffs, n);
    return {v.begin(), v.end()};
}

std::vector<double> direct_product(const std::vector<std::vector<double>>& fields) {
    const int n = static_cast<int>(fields.front().size());
    const int K = n / 2 - 1;  // largest representable frequency without Nyquist
    // acc[f + offset] holds the coefficient at frequency f
    std::vector<cld> acc(1, 1.0L);
    int off = 0;
    for (const auto& f : fields) {
        const auto c = direct_dft(f);
        std::vector<cld> next(acc.size() + static_cast<size_t>(2 * K), 0.0L);
        for (size_t a = 0; a < acc.size(); ++a) {
            for (int k = -K; k <= K; ++k) {
                next[a + static_cast<size_t>(k + K)] += acc[a] * c[static_cast<size_t>((k + n) % n)];
            }
        }
        acc.swap(next);
        off += K;
    }
    std::vector<std::pair<int, cld>> coeffs;
    for (int k = -K; k <= K; ++k) coeffs.emplace_back(k, acc[static_cast<size_t>(k + off)]);
    const auto v = synth(coeffs, n);
    return {v.begin(), v.end()};
}

std::vector<double> babenko_residual_direct(const std::vector<double>& Uv, double L, double c, double g,
                                            double sigma, double gamma, int refine) {
    const int n = static_cast<int>(Uv.size()), N = refine * n;
    const long double dk = kTwoPi / L;
    auto C = direct_dft(Uv);
    C[static_cast<size_t>(n / 2)] = 0;

    std::vector<std::pair<int, cld>> cu, cd, ca;
    for (int m = 0; m < n; ++m) {
        const int f = freq_of(m, n);
        const long double k = dk * f;
        const cld v = C[static_cast<size_t>(m)];
        cu.emplace_back(f, v);
        cd.emplace_back(f, v * std::abs(k));
        ca.emplace_back(f, v * cld(0, k));
    }
    const auto U = synth(cu, N), DU = synth(cd, N), Ua = synth(ca, N);

    std::vector<long double> U2(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) U2[static_cast<size_t>(j)] = U[static_cast<size_t>(j)] * U[static_cast<size_t>(j)];
    const auto cU2 = dft_sum(to_complex(U2));
    std::vector<std::pair<int, cld>> cdu2;
    for (int m = 0; m < N; ++m) {
        const int f = freq_of(m, N);
        if (2 * std::abs(f) == N) continue;
        cdu2.emplace_back(f, cU2[static_cast<size_t>(m)] * std::abs(dk * f));
    }
    const auto DU2 = synth(cdu2, N);

    const long double G = g, S = sigma, gm2 = static_cast<long double>(gamma) * gamma;
    std::vector<long double> plain(static_cast<size_t>(N)), absd(static_cast<size_t>(N)), deriv(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        const size_t i = static_cast<size_t>(j);
        const long double u = U[i], d = DU[i], a = Ua[i];
        const long double J = (1 + d) * (1 + d) + a * a;
        const long double rJ = 1 / std::sqrt(J);
        plain[i] = gm2 * u * u / 2 + G * u * d - gm2 / 2 * u * DU2[i] + gm2 / 2 * u * u * d;
        absd[i] = S * ((1 + d) * rJ - 1) + G / 2 * u * u + gm2 / 6 * u * u * u;
        deriv[i] = S * a * rJ;
    }
    const auto P = dft_sum(to_complex(plain)), A = dft_sum(to_complex(absd)), D = dft_sum(to_complex(deriv));

    std::vector<std::pair<int, cld>> cr;
    const long double cc = c;
    for (int m = 0; m < n; ++m) {
        const int f = freq_of(m, n);
        if (2 * std::abs(f) == n) continue;
        const long double k = dk * f;
        const size_t fi = static_cast<size_t>((f + N) % N);
        const cld lin = (G + cc * gamma - cc * cc * std::abs(k)) * C[static_cast<size_t>(m)];
        cr.emplace_back(f, lin + P[fi] + std::abs(k) * A[fi] - cld(0, k) * D[fi]);
    }
    const auto r = synth(cr, n);
    return {r.begin(), r.end()};
}

namespace {

struct Node {
    enum Kind { var, constant, neg, sqrt_, cbrt_, sqr_, pow_, add, sub, mul, div } kind;
    int index = 0;     // variable index or power
    double value = 0;  // constant
    std::unique_ptr<Node> a, b;
};

std::unique_ptr<Node> random_tree(std::mt19937_64& rng, int depth, int nvars) {
    auto node = std::make_unique<Node>();
    std::uniform_int_distribution<int> pick(0, 99);
    const int r = pick(rng);
    if (depth == 0 || r < 20) {
        if (r % 4 == 0) {
            node->kind = Node::constant;
            node->value = std::uniform_real_distribution<double>(-5, 5)(rng);
        } else {
            node->kind = Node::var;
            node->index = std::uniform_int_distribution<int>(0, nvars - 1)(rng);
        }
        return node;
    }
    const int op = std::uniform_int_distribution<int>(0, 9)(rng);
    static const Node::Kind kinds[] = {Node::neg, Node::sqrt_, Node::cbrt_, Node::sqr_, Node::pow_,
                                       Node::add, Node::sub,   Node::mul,   Node::div,  Node::add};
    node->kind = kinds[op];
    if (node->kind == Node::pow_) node->index = std::uniform_int_distribution<int>(2, 4)(rng);
    node->a = random_tree(rng, depth - 1, nvars);
    if (node->kind >= Node::add) node->b = random_tree(rng, depth - 1, nvars);
    return node;
}

vortsol::Interval eval_interval(const Node& n, const std::vector<vortsol::Interval>& x) {
    using vortsol::Interval;
    switch (n.kind) {
    case Node::var: return x[static_cast<size_t>(n.index)];
    case Node::constant: return Interval(n.value);
    case Node::neg: return -eval_interval(*n.a, x);
    case Node::sqrt_: return sqrt(eval_interval(*n.a, x));
    case Node::cbrt_: return cbrt(eval_interval(*n.a, x));
    case Node::sqr_: return sqr(eval_interval(*n.a, x));
    case Node::pow_: return pow(eval_interval(*n.a, x), n.index);
    case Node::add: return eval_interval(*n.a, x) + eval_interval(*n.b, x);
    case Node::sub: return eval_interval(*n.a, x) - eval_interval(*n.b, x);
    case Node::mul: return eval_interval(*n.a, x) * eval_interval(*n.b, x);
    case Node::div: return eval_interval(*n.a, x) / eval_interval(*n.b, x);
    }
    throw std::logic_error("bad node");
}

std::optional<big> eval_point(const Node& n, const std::vector<big>& x) {
    auto un = [&](const std::function<std::optional<big>(const big&)>& f) -> std::optional<big> {
        const auto a = eval_point(*n.a, x);
        if (!a) return std::nullopt;
        return f(*a);
    };
    auto bin = [&](const std::function<std::optional<big>(const big&, const big&)>& f) -> std::optional<big> {
        const auto a = eval_point(*n.a, x);
        const auto b = eval_point(*n.b, x);
        if (!a || !b) return std::nullopt;
        return f(*a, *b);
    };
    switch (n.kind) {
    case Node::var: return x[static_cast<size_t>(n.index)];
    case Node::constant: return big(n.value);
    case Node::neg: return un([](const big& a) { return std::optional<big>(-a); });
    case Node::sqrt_:
        return un([](const big& a) { return a < 0 ? std::nullopt : std::optional<big>(sqrt(a)); });
    case Node::cbrt_:
        return un([](const big& a) {
            return std::optional<big>(a < 0 ? big(-boost::math::cbrt(big(-a))) : big(boost::math::cbrt(a)));
        });
    case Node::sqr_: return un([](const big& a) { return std::optional<big>(a * a); });
    case Node::pow_: {
        const int p = n.index;
        return un([p](const big& a) {
            big r = 1;
            for (int i = 0; i < p; ++i) r *= a;
            return std::optional<big>(r);
        });
    }
    case Node::add: return bin([](const big& a, const big& b) { return std::optional<big>(a + b); });
    case Node::sub: return bin([](const big& a, const big& b) { return std::optional<big>(a - b); });
    case Node::mul: return bin([](const big& a, const big& b) { return std::optional<big>(a * b); });
    case Node::div:
        return bin([](const big& a, const big& b) { return b == 0 ? std::nullopt : std::optional<big>(a / b); });
    }
    return std::nullopt;
}

} // namespace

FuzzStats interval_containment_fuzz(long trees, int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    FuzzStats st;
    constexpr int kVars = 3;
    while (st.trees < trees) {
        std::vector<vortsol::Interval> X;
        std::vector<std::pair<double, double>> box;
        for (int v = 0; v < kVars; ++v) {
            const double lo = std::uniform_real_distribution<double>(-4, 4)(rng);
            const int shape = std::uniform_int_distribution<int>(0, 3)(rng);
            double w = 0;
            if (shape == 1) w = std::pow(10.0, std::uniform_real_distribution<double>(-12, -4)(rng));
            else if (shape >= 2) w = std::pow(10.0, std::uniform_real_distribution<double>(-3, 0.7)(rng));
            box.emplace_back(lo, lo + w);
            X.emplace_back(lo, lo + w);
        }
        const auto tree = random_tree(rng, 4, kVars);
        vortsol::Interval Y;
        try {
            Y = eval_interval(*tree, X);
        } catch (const std::domain_error&) {
            ++st.rejected;
            continue;
        }
        if (!std::isfinite(Y.lo()) || !std::isfinite(Y.hi())) {
            ++st.rejected;
            continue;
        }
        ++st.trees;
        for (int p = 0; p < points; ++p) {
            std::vector<big> x;
            for (const auto& [lo, hi] : box) {
                double t;
                if (p == 0) t = lo;
                else if (p == 1) t = hi;
                else t = std::clamp(lo + std::uniform_real_distribution<double>(0, 1)(rng) * (hi - lo), lo, hi);
                x.emplace_back(t);
            }
            const auto y = eval_point(*tree, x);
            if (!y) continue;
            ++st.evaluations;
            if (*y < big(Y.lo()) || *y > big(Y.hi())) {
                if (st.violations == 0) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "value " << static_cast<double>(*y) << " outside [" << Y.lo() << ", " << Y.hi() << "]";
                    st.first_violation = os.str();
                }
                ++st.violations;
            }
        }
    }
    return st;
}

} // namespace oracle
