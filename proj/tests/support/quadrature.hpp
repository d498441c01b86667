#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

// Gauss-Legendre quadrature, used as the independent integration oracle in the
// test suites. Nodes and weights come from Newton iteration on the Legendre
// recurrence and are cached per order.
namespace testsup {

struct GaussRule {
    std::vector<double> x; // nodes on (-1, 1)
    std::vector<double> w;
};

inline GaussRule make_gauss_rule(std::size_t n) {
    GaussRule r;
    r.x.assign(n, 0.0);
    r.w.assign(n, 0.0);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
        double z1 = z + 1.0, pp = 0.0;
        while (std::abs(z - z1) > 1e-15) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * double(j) + 1.0) * z * p2 - double(j) * p3) / (double(j) + 1.0);
            }
            pp = double(n) * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

inline const GaussRule& gauss_rule(std::size_t n) {
    static std::map<std::size_t, GaussRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
    return it->second;
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        std::size_t order = 64) {
    const GaussRule& r = gauss_rule(order);
    const double c = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + c * r.x[i]);
    return c * s;
}

// Splits [a, b] into equal panels before applying the rule; for integrands
// whose oscillation outruns a single high-order rule.
inline double integrate_panels(const std::function<double(double)>& f, double a, double b,
                               std::size_t panels, std::size_t order = 32) {
    double s = 0.0;
    const double h = (b - a) / double(panels);
    for (std::size_t p = 0; p < panels; ++p)
        s += integrate(f, a + double(p) * h, a + double(p + 1) * h, order);
    return s;
}

} // namespace testsup
