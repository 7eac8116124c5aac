#include "rsp/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rsp {
namespace {

struct Simplex {
    std::vector<std::vector<double>> x;
    std::vector<double> f;
};

void sort_simplex(Simplex& s)
{
    std::vector<std::size_t> idx(s.f.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // stable: ties keep insertion order, which keeps runs reproducible
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
    Simplex out;
    for (std::size_t i : idx) {
        out.x.push_back(std::move(s.x[i]));
        out.f.push_back(s.f[i]);
    }
    s = std::move(out);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opt)
{
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty starting point");
    const double dn = static_cast<double>(n);
    const double c_reflect = 1.0;
    const double c_expand = 2.0;
    const double c_contract = 0.5;
    const double c_shrink = 0.5;

    NelderMeadResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    auto build = [&](const std::vector<double>& base, double fbase, double step) {
        Simplex s;
        s.x.push_back(base);
        s.f.push_back(fbase);
        for (std::size_t i = 0; i < n; ++i) {
            auto v = base;
            v[i] += step;
            s.f.push_back(eval(v));
            s.x.push_back(std::move(v));
        }
        sort_simplex(s);
        return s;
    };

    Simplex s = build(x0, eval(x0), opt.initial_step);
    int restarts_left = opt.restarts;
    double step = opt.initial_step;

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (res.iterations < opt.max_iter) {
        if (s.f[n] - s.f[0] <= opt.ftol) {
            if (restarts_left-- <= 0) {
                res.converged = true;
                break;
            }
            const double before = s.f[0];
            step *= 0.5;
            auto best = s.x[0];
            s = build(best, before, step);
            if (before - s.f[0] < opt.ftol && s.f[n] - s.f[0] <= opt.ftol) {
                res.converged = true;
                break;
            }
            continue;
        }
        ++res.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += s.x[i][k] / dn;

        const auto& worst = s.x[n];
        for (std::size_t k = 0; k < n; ++k) xr[k] = centroid[k] + c_reflect * (centroid[k] - worst[k]);
        const double fr = eval(xr);

        bool shrink = false;
        if (fr < s.f[0]) {
            for (std::size_t k = 0; k < n; ++k) xe[k] = centroid[k] + c_expand * (xr[k] - centroid[k]);
            const double fe = eval(xe);
            if (fe < fr) {
                s.x[n] = xe;
                s.f[n] = fe;
            } else {
                s.x[n] = xr;
                s.f[n] = fr;
            }
        } else if (fr < s.f[n - 1]) {
            s.x[n] = xr;
            s.f[n] = fr;
        } else if (fr < s.f[n]) {
            // outside contraction
            for (std::size_t k = 0; k < n; ++k) xc[k] = centroid[k] + c_contract * (xr[k] - centroid[k]);
            const double fc = eval(xc);
            if (fc <= fr) {
                s.x[n] = xc;
                s.f[n] = fc;
            } else {
                shrink = true;
            }
        } else {
            // inside contraction
            for (std::size_t k = 0; k < n; ++k) xc[k] = centroid[k] - c_contract * (centroid[k] - worst[k]);
            const double fc = eval(xc);
            if (fc < s.f[n]) {
                s.x[n] = xc;
                s.f[n] = fc;
            } else {
                shrink = true;
            }
        }

        if (shrink) {
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t k = 0; k < n; ++k) s.x[i][k] = s.x[0][k] + c_shrink * (s.x[i][k] - s.x[0][k]);
                s.f[i] = eval(s.x[i]);
            }
        }
        sort_simplex(s);
    }

    res.x = s.x[0];
    res.f = s.f[0];
    return res;
}

}  // namespace rsp
