#include "twcut/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace twcut {

namespace {

double beta_cf(double a, double b, double x) {
    const double fpmin = 1e-300;
    const int max_iter = 500;
    const double eps = 1e-15;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("x must be in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                   b * std::log(1.0 - x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided(double t, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("dof must be positive");
    return incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    const double mu = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return s / static_cast<double>(v.size() - 1);
}

TTestResult t_test_one_sample(const std::vector<double>& values) {
    if (values.size() < 2) throw std::invalid_argument("need at least 2 values");
    const double n = static_cast<double>(values.size());
    const double mu = mean(values);
    const double var = sample_variance(values);
    if (var <= 0.0) throw std::invalid_argument("degenerate variance");
    TTestResult r;
    r.t = mu / std::sqrt(var / n);
    r.dof = n - 1.0;
    r.p = student_t_two_sided(r.t, r.dof);
    return r;
}

TTestResult t_test_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("need at least 2 values each");
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double va = sample_variance(a), vb = sample_variance(b);
    if (va <= 0.0 && vb <= 0.0) throw std::invalid_argument("degenerate variance");
    const double se2 = va / na + vb / nb;
    TTestResult r;
    r.t = (mean(a) - mean(b)) / std::sqrt(se2);
    // Welch-Satterthwaite degrees of freedom.
    r.dof = se2 * se2 / (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
    r.p = student_t_two_sided(r.t, r.dof);
    return r;
}

}  // namespace twcut
