#include "heterovar/quadrature.hpp"
#include "heterovar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace heterovar {

namespace {

// 15-point Kronrod abscissae on [-1, 1] and weights; the embedded 7-point
// Gauss rule uses the odd-indexed abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }

    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));

    const double value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    if (eps > 0.0) err = std::max(err, eps);

    return Segment{a, b, value, err};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           double abs_tol, std::size_t max_intervals, double rel_tol) {
    if (!(abs_tol > 0.0)) throw invalid_config("quadrature: abs_tol must be positive");
    if (rel_tol < 0.0) throw invalid_config("quadrature: rel_tol must be nonnegative");
    if (a == b) return {0.0, 0.0, 0};

    std::priority_queue<Segment> queue;
    queue.push(gk15(f, a, b));
    double total = queue.top().value;
    double total_err = queue.top().error;
    std::size_t count = 1;

    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (count >= max_intervals)
            throw tolerance_error("quadrature: failed to reach tolerance " +
                                  std::to_string(abs_tol) + " within " +
                                  std::to_string(max_intervals) + " intervals");
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw tolerance_error("quadrature: interval collapsed before reaching tolerance");
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++count;
    }

    return {total, total_err, count};
}

} // namespace heterovar
