#include "panogaze/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panogaze::predict {

namespace {

double wrap_unit(double x) {
    double w = std::fmod(x, 1.0);
    if (w < 0.0) w += 1.0;
    if (w >= 1.0) w = 0.0;
    return w;
}

// least-squares polynomial coefficients (ascending powers) on (s, u)
bool polyfit(std::span<const double> s, std::span<const double> u, int degree,
             std::vector<double>& coeffs) {
    const int p = degree + 1;
    std::vector<double> a(static_cast<std::size_t>(p) * p, 0.0);
    std::vector<double> b(static_cast<std::size_t>(p), 0.0);
    std::vector<double> powers(static_cast<std::size_t>(2 * degree) + 1, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        double v = 1.0;
        for (int k = 0; k <= 2 * degree; ++k) {
            powers[static_cast<std::size_t>(k)] = v;
            v *= s[i];
        }
        for (int r = 0; r < p; ++r) {
            for (int c = 0; c < p; ++c)
                a[static_cast<std::size_t>(r) * p + c] += powers[static_cast<std::size_t>(r + c)];
            b[static_cast<std::size_t>(r)] += powers[static_cast<std::size_t>(r)] * u[i];
        }
    }
    if (!solve_linear_system(a, b, p)) return false;
    coeffs = std::move(b);
    return true;
}

double polyval(std::span<const double> coeffs, double s) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * s + coeffs[k];
    return v;
}

// LSQ line through (0..n-1, u), evaluated `steps` past the last index.
double linear_extrapolate(std::span<const double> u, double steps) {
    const auto n = static_cast<double>(u.size());
    if (u.size() == 1) return u[0];
    double sum_i = 0.0, sum_ii = 0.0, sum_u = 0.0, sum_iu = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto x = static_cast<double>(i);
        sum_i += x;
        sum_ii += x * x;
        sum_u += u[i];
        sum_iu += x * u[i];
    }
    const double det = n * sum_ii - sum_i * sum_i;
    if (std::abs(det) < 1e-12) return u.back();
    const double slope = (n * sum_iu - sum_i * sum_u) / det;
    const double intercept = (sum_u - slope * sum_i) / n;
    return intercept + slope * (n - 1.0 + steps);
}

} // namespace

bool solve_linear_system(std::vector<double>& a, std::vector<double>& b, int n) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double tol = scale > 0.0 ? scale * 1e-12 : 1e-300;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[static_cast<std::size_t>(r) * n + col]) >
                std::abs(a[static_cast<std::size_t>(pivot) * n + col]))
                pivot = r;
        if (std::abs(a[static_cast<std::size_t>(pivot) * n + col]) <= tol) return false;
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<std::size_t>(col) * n + c],
                          a[static_cast<std::size_t>(pivot) * n + c]);
            std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot)]);
        }
        const double d = a[static_cast<std::size_t>(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double f = a[static_cast<std::size_t>(r) * n + col] / d;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<std::size_t>(r) * n + c] -=
                    f * a[static_cast<std::size_t>(col) * n + c];
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double v = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c)
            v -= a[static_cast<std::size_t>(r) * n + c] * b[static_cast<std::size_t>(c)];
        b[static_cast<std::size_t>(r)] = v / a[static_cast<std::size_t>(r) * n + r];
    }
    return true;
}

std::vector<double> unwrap_x(std::span<const NormalizedPoint> points) {
    std::vector<double> u(points.size());
    if (points.empty()) return u;
    u[0] = points[0].x;
    for (std::size_t i = 1; i < points.size(); ++i)
        u[i] = u[i - 1] + geo::wraparound_dx(points[i - 1].x, points[i].x);
    return u;
}

NormalizedPoint polyreg_predict(std::span<const NormalizedPoint> history, double dt,
                                double horizon, int degree) {
    if (degree < 0) throw std::invalid_argument("polyreg_predict: degree must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("polyreg_predict: dt must be positive");
    const std::size_t n = history.size();
    if (n < static_cast<std::size_t>(degree) + 1)
        throw std::invalid_argument("polyreg_predict: history shorter than degree + 1");

    // centered, scaled abscissa for conditioning
    const double t_last = static_cast<double>(n - 1) * dt;
    const double t_mid = t_last / 2.0;
    const double t_scale = std::max(t_last / 2.0, dt);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (static_cast<double>(i) * dt - t_mid) / t_scale;
    const double s_eval = (t_last + horizon - t_mid) / t_scale;

    const std::vector<double> ux = unwrap_x(history);
    std::vector<double> uy(n);
    for (std::size_t i = 0; i < n; ++i) uy[i] = history[i].y;

    NormalizedPoint out;
    std::vector<double> coeffs;
    if (polyfit(s, ux, degree, coeffs))
        out.x = wrap_unit(polyval(coeffs, s_eval));
    else
        out.x = wrap_unit(linear_extrapolate(ux, horizon / dt));
    if (polyfit(s, uy, degree, coeffs))
        out.y = std::clamp(polyval(coeffs, s_eval), 0.0, 1.0);
    else
        out.y = std::clamp(linear_extrapolate(uy, horizon / dt), 0.0, 1.0);
    return out;
}

namespace {

// AR(order) with intercept on one axis; returns the value horizon_steps
// ahead or nullopt when the fit is singular.
bool ar_axis_forecast(std::span<const double> u, int horizon_steps, int order, double& result) {
    const auto n = static_cast<long long>(u.size());
    const int p = order + 1;
    const long long rows = n - order;
    if (rows < p) return false;

    std::vector<double> a(static_cast<std::size_t>(p) * p, 0.0);
    std::vector<double> b(static_cast<std::size_t>(p), 0.0);
    std::vector<double> reg(static_cast<std::size_t>(p));
    for (long long t = order; t < n; ++t) {
        reg[0] = 1.0;
        for (int i = 1; i <= order; ++i) reg[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(t - i)];
        for (int r = 0; r < p; ++r) {
            for (int c = 0; c < p; ++c)
                a[static_cast<std::size_t>(r) * p + c] +=
                    reg[static_cast<std::size_t>(r)] * reg[static_cast<std::size_t>(c)];
            b[static_cast<std::size_t>(r)] += reg[static_cast<std::size_t>(r)] * u[static_cast<std::size_t>(t)];
        }
    }
    if (!solve_linear_system(a, b, p)) return false;

    std::vector<double> tail(u.end() - order, u.end());
    double value = u.back();
    for (int step = 0; step < horizon_steps; ++step) {
        value = b[0];
        for (int i = 1; i <= order; ++i)
            value += b[static_cast<std::size_t>(i)] * tail[static_cast<std::size_t>(order - i)];
        if (!std::isfinite(value)) return false;
        tail.erase(tail.begin());
        tail.push_back(value);
    }
    result = value;
    return true;
}

} // namespace

ArForecast ar_forecast(std::span<const NormalizedPoint> history, int horizon_steps, int order) {
    if (order < 1) throw std::invalid_argument("ar_forecast: order must be >= 1");
    if (horizon_steps < 0) throw std::invalid_argument("ar_forecast: horizon_steps must be >= 0");
    if (history.size() < 2) throw std::invalid_argument("ar_forecast: history too short");

    const std::vector<double> ux = unwrap_x(history);
    std::vector<double> uy(history.size());
    for (std::size_t i = 0; i < history.size(); ++i) uy[i] = history[i].y;

    ArForecast out;
    if (horizon_steps == 0) {
        out.point = NormalizedPoint{wrap_unit(ux.back()), std::clamp(uy.back(), 0.0, 1.0)};
        return out;
    }

    const bool enough = history.size() >= static_cast<std::size_t>(3) * static_cast<std::size_t>(order);
    double fx = 0.0, fy = 0.0;
    bool okx = enough && ar_axis_forecast(ux, horizon_steps, order, fx);
    bool oky = enough && ar_axis_forecast(uy, horizon_steps, order, fy);
    if (!okx) {
        fx = linear_extrapolate(ux, horizon_steps);
        out.fell_back = true;
    }
    if (!oky) {
        fy = linear_extrapolate(uy, horizon_steps);
        out.fell_back = true;
    }
    out.point = NormalizedPoint{wrap_unit(fx), std::clamp(fy, 0.0, 1.0)};
    return out;
}

} // namespace panogaze::predict
