#include "qebp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qebp {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::string format_point(const std::vector<double>& x) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
    out << ")";
    return out.str();
}

}  // namespace

std::vector<double> central_difference_gradient(const Objective& f, const std::vector<double>& x,
                                                double h) {
    std::vector<double> g(x.size());
    std::vector<double> probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double fp = f(probe);
        probe[i] = x[i] - h;
        const double fm = f(probe);
        probe[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

MinimizeResult minimize_bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& opts) {
    const std::size_t dim = x0.size();
    double fx = f(x0);
    if (!std::isfinite(fx))
        throw std::runtime_error("minimize_bfgs: non-finite objective at " + format_point(x0));

    std::vector<double> x = std::move(x0);
    std::vector<double> g = central_difference_gradient(f, x, opts.grad_step);

    // Inverse Hessian approximation, row-major.
    std::vector<double> hinv(dim * dim, 0.0);
    auto reset_hinv = [&] {
        std::fill(hinv.begin(), hinv.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) hinv[i * dim + i] = 1.0;
    };
    reset_hinv();

    MinimizeResult best{x, fx, g, 0};
    int iter = 0;
    int stalled = 0;
    for (; iter < opts.max_iter; ++iter) {
        if (norm(g) < opts.g_tol) break;

        std::vector<double> dir(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) dir[i] -= hinv[i * dim + j] * g[j];
        double slope = dot(dir, g);
        if (!(slope < 0.0)) {
            reset_hinv();
            for (std::size_t i = 0; i < dim; ++i) dir[i] = -g[i];
            slope = dot(dir, g);
            if (!(slope < 0.0)) break;  // zero gradient
        }

        // Armijo backtracking.
        const double c1 = 1e-4;
        double step = 1.0;
        double f_new = std::numeric_limits<double>::infinity();
        std::vector<double> x_new(dim);
        bool accepted = false;
        for (int bt = 0; bt < 50; ++bt) {
            for (std::size_t i = 0; i < dim; ++i) x_new[i] = x[i] + step * dir[i];
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= fx + c1 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> g_new = central_difference_gradient(f, x_new, opts.grad_step);
        std::vector<double> s(dim), y(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = g_new[i] - g[i];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * norm(s) * norm(y)) {
            // hinv <- (I - rho s y^T) hinv (I - rho y s^T) + rho s s^T
            const double rho = 1.0 / sy;
            std::vector<double> hy(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) hy[i] += hinv[i * dim + j] * y[j];
            const double yhy = dot(y, hy);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    hinv[i * dim + j] += rho * rho * yhy * s[i] * s[j] -
                                         rho * (s[i] * hy[j] + hy[i] * s[j]) +
                                         rho * s[i] * s[j];
                }
            }
        } else {
            reset_hinv();
        }

        const double df = fx - f_new;
        x = std::move(x_new);
        fx = f_new;
        g = std::move(g_new);
        if (fx < best.f) best = {x, fx, g, iter + 1};
        stalled = df < opts.f_tol ? stalled + 1 : 0;
        if ((df < opts.f_tol && norm(g) <= opts.g_accept) || stalled >= 3) {
            ++iter;
            break;
        }
    }
    if (fx <= best.f) best = {x, fx, g, iter};
    best.iterations = iter;
    return best;
}

MinimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0, double scale,
                                    const NelderMeadOptions& opts) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += scale;
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(pts[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> p2(dim + 1);
        std::vector<double> f2(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) {
            p2[i] = pts[idx[i]];
            f2[i] = fv[idx[i]];
        }
        pts = std::move(p2);
        fv = std::move(f2);
    };

    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        order();
        double spread = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            spread = std::max(spread, std::abs(pts[dim][i] - pts[0][i]));
        if (spread < opts.x_tol && std::abs(fv[dim] - fv[0]) < opts.f_tol) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
        }
        for (std::size_t j = 0; j < dim; ++j) centroid[j] /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j) p[j] = centroid[j] + t * (pts[dim][j] - centroid[j]);
            return p;
        };

        std::vector<double> refl = blend(-1.0);
        const double f_refl = f(refl);
        if (f_refl < fv[0]) {
            std::vector<double> expd = blend(-2.0);
            const double f_expd = f(expd);
            if (f_expd < f_refl) {
                pts[dim] = std::move(expd);
                fv[dim] = f_expd;
            } else {
                pts[dim] = std::move(refl);
                fv[dim] = f_refl;
            }
        } else if (f_refl < fv[dim - 1]) {
            pts[dim] = std::move(refl);
            fv[dim] = f_refl;
        } else {
            std::vector<double> contr = blend(f_refl < fv[dim] ? -0.5 : 0.5);
            const double f_contr = f(contr);
            if (f_contr < std::min(f_refl, fv[dim])) {
                pts[dim] = std::move(contr);
                fv[dim] = f_contr;
            } else {
                for (std::size_t i = 1; i <= dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j)
                        pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    order();
    return {pts[0], fv[0], {}, iter};
}

}  // namespace qebp
