#pragma once

namespace cointegra {

/// P(X > x) for X ~ chi-square(dof); 1 for x <= 0.
double chi2_upper_tail(double x, double dof);

/// Inverse CDF of chi-square(dof).
double chi2_quantile(double p, double dof);

/// Two-sided p-value of a t statistic with `dof` degrees of freedom.
double student_t_two_sided(double t, double dof);

}  // namespace cointegra
