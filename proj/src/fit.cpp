#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "vortexsim/errors.hpp"
#include "vortexsim/lab.hpp"

namespace vortexsim {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTol = 1e-8;

// Weighted least squares of counts against N0 * p(x; theta) with Poisson
// weights w = 1/max(counts, 1). The amplitude enters linearly, so the grid
// search solves it in closed form per candidate and the refinement treats it
// as one more parameter.
struct Problem {
    std::span<const SweepRecord> data;
    std::function<double(double, const double*)> p_model;  // nonlinear params only
    int n_params;
    std::vector<double> lo, hi;
    std::vector<std::vector<double>> grid_axes;
};

struct EngineResult {
    double amplitude;
    std::vector<double> theta;
    double residual;
    int iterations;
    std::vector<bool> frozen;
};

std::vector<double> poisson_weights(std::span<const SweepRecord> data) {
    std::vector<double> w(data.size());
    for (size_t i = 0; i < data.size(); ++i)
        w[i] = 1.0 / std::max(static_cast<double>(data[i].counts), 1.0);
    return w;
}

std::vector<double> eval_curve(const Problem& pr, const std::vector<double>& theta) {
    std::vector<double> p(pr.data.size());
    for (size_t i = 0; i < pr.data.size(); ++i) p[i] = pr.p_model(pr.data[i].x, theta.data());
    return p;
}

double closed_form_amplitude(std::span<const SweepRecord> data, const std::vector<double>& w,
                             const std::vector<double>& p) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < data.size(); ++i) {
        num += w[i] * static_cast<double>(data[i].counts) * p[i];
        den += w[i] * p[i] * p[i];
    }
    return den > 0.0 ? std::max(num / den, 0.0) : 0.0;
}

double chi_squared(std::span<const SweepRecord> data, const std::vector<double>& w,
                   const std::vector<double>& p, double amplitude) {
    double acc = 0.0;
    for (size_t i = 0; i < data.size(); ++i) {
        const double r = static_cast<double>(data[i].counts) - amplitude * p[i];
        acc += w[i] * r * r;
    }
    return acc;
}

// Gaussian elimination with partial pivoting; k <= 3 here.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (std::abs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (int row = n - 1; row >= 0; --row) {
        double acc = b[row];
        for (int k = row + 1; k < n; ++k) acc -= a[row][k] * out[k];
        out[row] = acc / a[row][row];
    }
    return true;
}

std::vector<double> central_difference(const Problem& pr, const std::vector<double>& theta,
                                       int j, double h) {
    std::vector<double> hi_theta = theta, lo_theta = theta;
    hi_theta[j] += h;
    lo_theta[j] -= h;
    const std::vector<double> ph = eval_curve(pr, hi_theta);
    const std::vector<double> pl = eval_curve(pr, lo_theta);
    std::vector<double> d(pr.data.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = (ph[i] - pl[i]) / (2.0 * h);
    return d;
}

EngineResult fit_engine(const Problem& pr) {
    if (pr.data.size() < 5) throw fit_error("fit requires at least 5 records");
    bool any_counts = false;
    for (const SweepRecord& rec : pr.data) any_counts |= rec.counts > 0;
    if (!any_counts) throw fit_error("all counts are zero; amplitude is unidentifiable");

    const std::vector<double> w = poisson_weights(pr.data);

    // Coarse grid search with the amplitude solved in closed form.
    std::vector<double> best_theta(pr.n_params, 0.0);
    double best_chi2 = std::numeric_limits<double>::infinity();
    double best_amp = 0.0;
    std::vector<int> index(pr.n_params, 0);
    for (;;) {
        std::vector<double> theta(pr.n_params);
        for (int j = 0; j < pr.n_params; ++j) theta[j] = pr.grid_axes[j][index[j]];
        const std::vector<double> p = eval_curve(pr, theta);
        const double amp = closed_form_amplitude(pr.data, w, p);
        const double c2 = chi_squared(pr.data, w, p, amp);
        if (c2 < best_chi2) {
            best_chi2 = c2;
            best_theta = theta;
            best_amp = amp;
        }
        int j = 0;
        while (j < pr.n_params && ++index[j] == static_cast<int>(pr.grid_axes[j].size())) {
            index[j] = 0;
            ++j;
        }
        if (j == pr.n_params) break;
    }

    // Parameters the data carries no information about are frozen at the
    // grid optimum instead of wandering in a flat valley.
    std::vector<bool> frozen(pr.n_params, false);
    std::vector<std::vector<double>> dp(pr.n_params);
    const std::vector<double> p_best = eval_curve(pr, best_theta);
    double ref = 0.0;
    for (size_t i = 0; i < pr.data.size(); ++i)
        ref += w[i] * best_amp * p_best[i] * best_amp * p_best[i];
    ref = std::sqrt(ref) + 1e-300;
    for (int j = 0; j < pr.n_params; ++j) {
        dp[j] = central_difference(pr, best_theta, j, 1e-6);
        double sens = 0.0;
        for (size_t i = 0; i < pr.data.size(); ++i)
            sens += w[i] * best_amp * dp[j][i] * best_amp * dp[j][i];
        frozen[j] = std::sqrt(sens) <= 1e-8 * ref;
    }

    std::vector<int> active;
    for (int j = 0; j < pr.n_params; ++j)
        if (!frozen[j]) active.push_back(j);

    // Damped Gauss-Newton on [amplitude, active nonlinear params].
    const int k = 1 + static_cast<int>(active.size());
    double amp = best_amp;
    std::vector<double> theta = best_theta;
    double chi2_now = best_chi2;
    double lambda = 1e-3;
    int iterations = 0;

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        iterations = iter + 1;
        const std::vector<double> p = eval_curve(pr, theta);
        for (size_t aj = 0; aj < active.size(); ++aj)
            dp[active[aj]] = central_difference(pr, theta, active[aj], 1e-6);

        // Normal equations JtJ d = -Jt r with r_i = sqrt(w)(c_i - amp p_i).
        std::vector<std::vector<double>> jtj(k, std::vector<double>(k, 0.0));
        std::vector<double> jtr(k, 0.0);
        for (size_t i = 0; i < pr.data.size(); ++i) {
            std::vector<double> grad(k);  // of model counts
            grad[0] = p[i];
            for (size_t aj = 0; aj < active.size(); ++aj)
                grad[1 + aj] = amp * dp[active[aj]][i];
            const double resid = static_cast<double>(pr.data[i].counts) - amp * p[i];
            for (int r = 0; r < k; ++r) {
                jtr[r] += w[i] * grad[r] * resid;
                for (int c = 0; c < k; ++c) jtj[r][c] += w[i] * grad[r] * grad[c];
            }
        }

        bool moved = false;
        while (lambda < 1e14) {
            std::vector<std::vector<double>> damped = jtj;
            for (int r = 0; r < k; ++r) damped[r][r] += lambda * (jtj[r][r] + 1e-12);
            std::vector<double> step;
            if (!solve_linear(damped, jtr, step)) {
                lambda *= 10.0;
                continue;
            }
            double amp_try = std::max(amp + step[0], 0.0);
            std::vector<double> theta_try = theta;
            for (size_t aj = 0; aj < active.size(); ++aj) {
                const int j = active[aj];
                theta_try[j] = std::clamp(theta[j] + step[1 + aj], pr.lo[j], pr.hi[j]);
            }
            const std::vector<double> p_try = eval_curve(pr, theta_try);
            const double chi2_try = chi_squared(pr.data, w, p_try, amp_try);
            if (chi2_try <= chi2_now) {
                double scaled = std::abs(amp_try - amp) / std::max(1.0, std::abs(amp));
                for (size_t aj = 0; aj < active.size(); ++aj) {
                    const int j = active[aj];
                    scaled = std::max(scaled, std::abs(theta_try[j] - theta[j]) /
                                                  std::max(1.0, std::abs(theta[j])));
                }
                amp = amp_try;
                theta = theta_try;
                chi2_now = chi2_try;
                lambda = std::max(lambda * 0.3, 1e-14);
                moved = true;
                if (scaled < kStepTol) return {amp, theta, chi2_now, iterations, frozen};
                break;
            }
            lambda *= 10.0;
        }
        if (!moved) break;  // damping exhausted; stationary point
    }
    return {amp, theta, chi2_now, iterations, frozen};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

double delta_p(const DeltaFringeModel& model, double x, double g2, double offset) {
    const double delta = x - offset;
    const SingleParticleUnitary u = qplate_unitary(delta, model.alpha0);
    const double p1 =
        coincidence_probability(input_pair_state(model.input_pair, 1.0), u, model.basis);
    const double p0 =
        coincidence_probability(input_pair_state(model.input_pair, 0.0), u, model.basis);
    // Linear in g2 by the mixture law, so evaluation stays valid when finite
    // differences probe slightly outside [0, 1].
    return g2 * p1 + (1.0 - g2) * p0;
}

struct DelayEndpoints {
    double p1, p0;
};

DelayEndpoints delay_endpoints(const DelayDipModel& model) {
    const SingleParticleUnitary u = qplate_unitary(model.fixed_delta, model.alpha0);
    return DelayEndpoints{
        coincidence_probability(input_pair_state(model.input_pair, 1.0), u, model.basis),
        coincidence_probability(input_pair_state(model.input_pair, 0.0), u, model.basis)};
}

double delay_p(const DelayEndpoints& ep, double x, double log_tau) {
    const double tau = std::exp(log_tau);
    const double g2 = std::exp(-x * x / (2.0 * tau * tau));
    return g2 * ep.p1 + (1.0 - g2) * ep.p0;
}

}  // namespace

FitResult fit_fringe(std::span<const SweepRecord> records, const DeltaFringeModel& model) {
    Problem pr;
    pr.data = records;
    pr.n_params = 2;  // |gamma|^2, delta offset
    pr.p_model = [&model](double x, const double* th) {
        return delta_p(model, x, th[0], th[1]);
    };
    pr.lo = {0.0, -kPi / 4};
    pr.hi = {1.0, kPi / 4};
    pr.grid_axes = {linspace(0.0, 1.0, 11), linspace(-kPi / 4, kPi / 4, 17)};

    const EngineResult res = fit_engine(pr);
    return FitResult{res.amplitude, std::clamp(res.theta[0], 0.0, 1.0), res.theta[1],
                     res.residual, res.iterations, !res.frozen[0]};
}

FitResult fit_fringe(std::span<const SweepRecord> records, const DelayDipModel& model) {
    const DelayEndpoints ep = delay_endpoints(model);

    double span = 0.0;
    for (const SweepRecord& rec : records) span = std::max(span, std::abs(rec.x));

    Problem pr;
    pr.data = records;
    pr.n_params = 1;  // log tau_c
    pr.p_model = [ep](double x, const double* th) { return delay_p(ep, x, th[0]); };
    if (span > 0.0) {
        pr.lo = {std::log(span) - 12.0};
        pr.hi = {std::log(span) + 6.0};
        pr.grid_axes = {linspace(std::log(span / 50.0), std::log(span * 4.0), 40)};
    } else {
        pr.lo = {-12.0};
        pr.hi = {12.0};
        pr.grid_axes = {linspace(-2.0, 2.0, 9)};
    }

    const EngineResult res = fit_engine(pr);
    return FitResult{res.amplitude, std::exp(res.theta[0]), 0.0,
                     res.residual, res.iterations, !res.frozen[0]};
}

std::vector<std::pair<double, double>> fit_curve_samples(const FitResult& fit,
                                                         const DeltaFringeModel& model,
                                                         double xmin, double xmax, int n) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double x = xmin + (xmax - xmin) * i / (n - 1);
        curve.emplace_back(
            x, fit.amplitude * delta_p(model, x, fit.indistinguishability, fit.delta_offset));
    }
    return curve;
}

std::vector<std::pair<double, double>> fit_curve_samples(const FitResult& fit,
                                                         const DelayDipModel& model,
                                                         double xmin, double xmax, int n) {
    const DelayEndpoints ep = delay_endpoints(model);
    std::vector<std::pair<double, double>> curve;
    curve.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double x = xmin + (xmax - xmin) * i / (n - 1);
        curve.emplace_back(
            x, fit.amplitude * delay_p(ep, x, std::log(fit.indistinguishability)));
    }
    return curve;
}

}  // namespace vortexsim
