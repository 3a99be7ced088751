#pragma once

#include <utility>
#include <vector>

namespace twcut {

// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability P(|T_dof| > t).
double student_t_two_sided(double t, double dof);

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    double dof = 0.0;
};

// One-sample t-test of the mean against zero.
TTestResult t_test_one_sample(const std::vector<double>& values);

// Welch's two-sample t-test.
TTestResult t_test_two_sample(const std::vector<double>& a, const std::vector<double>& b);

double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v);

}  // namespace twcut
