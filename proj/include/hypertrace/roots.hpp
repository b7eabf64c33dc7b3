#ifndef HYPERTRACE_ROOTS_HPP
#define HYPERTRACE_ROOTS_HPP

#include <complex>
#include <vector>

namespace hypertrace {

/// All complex roots of a polynomial (coefficient i multiplies x^i) by
/// Durand-Kerner iteration. Intended for the small degrees met here.
inline std::vector<std::complex<double>> complex_roots(std::vector<std::complex<double>> c) {
    using C = std::complex<double>;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    const size_t n = c.size() - 1;
    const C lead = c.back();
    for (auto& v : c) v /= lead;
    double bound = 1.0;
    for (size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]));
    bound += 1.0;
    std::vector<C> z(n);
    C seed(0.4, 0.9);
    C cur(1.0, 0.0);
    for (size_t i = 0; i < n; ++i) {
        cur *= seed;
        z[i] = cur * bound;
    }
    auto eval = [&](C x) {
        C r(0.0, 0.0);
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double delta = 0.0;
        for (size_t i = 0; i < n; ++i) {
            C denom(1.0, 0.0);
            for (size_t j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            C step = eval(z[i]) / denom;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-14 * bound) break;
    }
    return z;
}

}  // namespace hypertrace

#endif
