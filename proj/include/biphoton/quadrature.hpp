#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "biphoton/errors.hpp"

namespace biphoton
{
struct SimpsonOptions
{
    double relative_tolerance = 1e-8;
    int min_panels = 64;
    int max_depth = 40;
};

/// Adaptive Simpson quadrature of f over [a, b]. The interval is first split
/// into `min_panels` panels; each panel is refined recursively until the
/// Richardson error estimate is below its share of
/// relative_tolerance * integral of |f|. Works for real and complex f.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, const SimpsonOptions& opts = {})
{
    using Value = decltype(f(a));
    using std::abs;

    struct Panel
    {
        double a, b;
        Value fa, fm, fb, whole;
    };

    const int n = opts.min_panels > 0 ? opts.min_panels : 1;
    const double h = (b - a) / n;

    // Coarse pass: samples at panel ends and midpoints; scale from sum |f|.
    std::vector<Value> ends(n + 1);
    std::vector<Value> mids(n);
    for (int i = 0; i <= n; ++i)
        ends[i] = f(a + i * h);
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
    {
        mids[i] = f(a + (i + 0.5) * h);
        scale += (abs(ends[i]) + 4.0 * abs(mids[i]) + abs(ends[i + 1])) * h / 6.0;
    }
    if (!std::isfinite(scale))
        throw NumericalError("adaptive Simpson: non-finite integrand");

    const double abs_tol = opts.relative_tolerance * (scale > 0.0 ? scale : 1.0);
    long evaluations = 2L * n + 1;

    auto refine = [&](auto&& self, const Panel& p, double tol, int depth) -> Value {
        const double m = 0.5 * (p.a + p.b);
        const Value flm = f(0.5 * (p.a + m));
        const Value frm = f(0.5 * (m + p.b));
        evaluations += 2;
        const double hh = (p.b - p.a) / 12.0;
        const Value left = hh * (p.fa + 4.0 * flm + p.fm);
        const Value right = hh * (p.fm + 4.0 * frm + p.fb);
        const Value delta = left + right - p.whole;
        if (abs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        if (depth >= opts.max_depth)
        {
            std::ostringstream msg;
            msg << "adaptive Simpson did not converge: depth " << depth << " at [" << p.a << ", "
                << p.b << "], step " << (p.b - p.a) << ", error estimate " << abs(delta) / 15.0
                << " > " << tol << " after " << evaluations << " evaluations";
            throw NumericalError(msg.str());
        }
        return self(self, Panel{p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1) +
               self(self, Panel{m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1);
    };

    Value total{};
    for (int i = 0; i < n; ++i)
    {
        const double pa = a + i * h;
        const double pb = a + (i + 1) * h;
        const Value whole = (pb - pa) / 6.0 * (ends[i] + 4.0 * mids[i] + ends[i + 1]);
        total += refine(refine, Panel{pa, pb, ends[i], mids[i], ends[i + 1], whole}, abs_tol / n, 0);
    }
    return total;
}
}  // namespace biphoton
