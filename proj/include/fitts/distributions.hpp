#pragma once

namespace fitts::stats {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// Continued fraction (modified Lentz), evaluated on whichever side of the
/// mean converges faster.
double incomplete_beta(double a, double b, double x);

/// P(F > f) for F ~ F(d1, d2).
double f_upper_tail(double f, double d1, double d2);

/// P(T <= t) for Student's t with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

/// Inverse of student_t_cdf; `probability` in (0, 1).
double student_t_quantile(double probability, double dof);

}  // namespace fitts::stats
