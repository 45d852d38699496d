#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature in long double.
//
// Infinite ranges are mapped onto (0,1) with x = lo + scale * t / (1 - t).
// Integrable endpoint singularities are handled by seeding the panel list
// with a geometrically graded mesh toward the singular end, so the error
// certificate is computed from panels that actually resolve the blow-up.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace infomeasures::quad {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

struct Result {
    long double value = 0;
    long double abs_error = 0;
    int panels = 0;
};

namespace detail {

inline constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L,
};
inline constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L,
};
// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
inline constexpr long double kWg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L,
};

struct Panel {
    long double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, long double a, long double b) {
    const long double centre = 0.5L * (a + b);
    const long double half = 0.5L * (b - a);
    const long double fc = f(centre);
    long double kronrod = fc * kWgk[7];
    long double gauss = fc * kWg[3];
    long double abs_sum = std::abs(kronrod);
    long double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const long double dx = half * kXgk[j];
        fv1[j] = f(centre - dx);
        fv2[j] = f(centre + dx);
        kronrod += kWgk[j] * (fv1[j] + fv2[j]);
        abs_sum += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * (fv1[j] + fv2[j]);
    }
    const long double mean = 0.5L * kronrod;
    long double asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const long double scale = std::abs(half);
    const long double value = kronrod * half;
    long double err = std::abs((kronrod - gauss) * half);
    asc *= scale;
    abs_sum *= scale;
    if (asc != 0 && err != 0) err = asc * std::min(1.0L, std::pow(200.0L * err / asc, 1.5L));
    const long double round_floor = 50 * std::numeric_limits<long double>::epsilon() * abs_sum;
    err = std::max(err, round_floor);
    if (!std::isfinite(value) || !std::isfinite(err)) {
        throw NonConvergence("quadrature: non-finite integrand value on [" +
                             std::to_string(static_cast<double>(a)) + ", " +
                             std::to_string(static_cast<double>(b)) + "]");
    }
    return {a, b, value, err};
}

}  // namespace detail

/// Adaptive integration over the consecutive panels given by `breakpoints`.
template <class F>
Result integrate_panels(F&& f, std::span<const long double> breakpoints, const Options& opt) {
    if (breakpoints.size() < 2) throw DomainError("quadrature: need at least two breakpoints");
    std::priority_queue<detail::Panel> heap;
    long double total = 0, total_err = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] == breakpoints[i]) continue;
        auto p = detail::gauss_kronrod_15(f, breakpoints[i], breakpoints[i + 1]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    if (heap.empty()) return {};
    int panels = static_cast<int>(heap.size());
    auto tolerance = [&] {
        return std::max<long double>(opt.abs_tol, opt.rel_tol * std::abs(total));
    };
    while (total_err > tolerance()) {
        if (panels >= opt.max_subdivisions) {
            throw NonConvergence("quadrature: subdivision budget of " +
                                 std::to_string(opt.max_subdivisions) +
                                 " exhausted with error estimate " +
                                 std::to_string(static_cast<double>(total_err)));
        }
        const detail::Panel worst = heap.top();
        heap.pop();
        const long double mid = 0.5L * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw NonConvergence("quadrature: panel width underflow");
        }
        auto left = detail::gauss_kronrod_15(f, worst.a, mid);
        auto right = detail::gauss_kronrod_15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Re-sum from scratch to drop the drift of the running totals.
    Result r;
    r.panels = panels;
    while (!heap.empty()) {
        r.value += heap.top().value;
        r.abs_error += heap.top().error;
        heap.pop();
    }
    return r;
}

template <class F>
Result integrate(F&& f, long double a, long double b, const Options& opt) {
    const long double bp[2] = {a, b};
    return integrate_panels(f, std::span<const long double>(bp, 2), opt);
}

/// Geometric mesh 0 < ... < t_max accumulating toward 0 with ratio 1/16,
/// down to roughly 1e-200, preceded by 0.
inline std::vector<long double> graded_mesh_toward_zero(long double t_max) {
    std::vector<long double> mesh;
    for (long double t = t_max; t > 1e-200L; t /= 16) mesh.push_back(t);
    mesh.push_back(0);
    std::reverse(mesh.begin(), mesh.end());
    return mesh;
}

/// ∫_lo^∞ f(x) dx with x = lo + scale * t/(1-t). `singular_at_lo` seeds a
/// graded mesh toward t = 0.
template <class F>
Result integrate_half_line(F&& f, long double lo, long double scale, const Options& opt,
                           bool singular_at_lo = false) {
    auto mapped = [&](long double t) -> long double {
        const long double one_minus = 1 - t;
        if (one_minus <= 0) return 0;
        const long double x = lo + scale * t / one_minus;
        const long double jac = scale / (one_minus * one_minus);
        const long double v = f(x);
        return v == 0 ? 0 : v * jac;
    };
    std::vector<long double> bp;
    if (singular_at_lo) {
        bp = graded_mesh_toward_zero(0.5L);
    } else {
        bp = {0.0L, 0.5L};
    }
    bp.push_back(1.0L);
    return integrate_panels(mapped, bp, opt);
}

/// ∫_{-∞}^{hi} f(x) dx by reflection onto a half-line.
template <class F>
Result integrate_lower_half_line(F&& f, long double hi, long double scale, const Options& opt) {
    auto reflected = [&](long double u) { return f(2 * hi - u); };
    return integrate_half_line(reflected, hi, scale, opt);
}

/// ∫_ℝ f(x) dx, split at the given ascending breakpoints (at least one).
/// The outer pieces become half-lines; interior pieces are finite panels.
template <class F>
Result integrate_real_line(F&& f, std::span<const long double> splits, long double scale,
                           const Options& opt) {
    if (splits.empty()) throw DomainError("quadrature: whole-line integral needs a split point");
    // Each piece gets the full tolerance budget scaled by the number of pieces.
    Options piece = opt;
    const auto pieces = static_cast<double>(splits.size() + 1);
    piece.abs_tol = opt.abs_tol / pieces;
    Result total;
    auto accumulate = [&](const Result& r) {
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.panels += r.panels;
    };
    accumulate(integrate_lower_half_line(f, splits.front(), scale, piece));
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        accumulate(integrate(f, splits[i], splits[i + 1], piece));
    }
    accumulate(integrate_half_line(f, splits.back(), scale, piece));
    return total;
}

}  // namespace infomeasures::quad
