#pragma once

// Thin wrappers over Boost.Math so the rest of the code has one place to look.

namespace pvpower {

double norm_cdf(double z);
double norm_sf(double z);   // 1 - Phi(z) without cancellation
double norm_ppf(double p);  // Phi^{-1}, p in (0,1)
double norm_pdf(double z);

// Upper p-value from a chi-square(1) statistic on the side implied by `below`:
// below = true gives [1 - F(s)]/2, false gives [1 + F(s)]/2.
double chi1_half_tail(double s, bool below);

double gamma_q(double a, double x);  // regularized upper incomplete gamma
double gamma_p(double a, double x);
double beta_quantile(double a, double b, double p);
double beta_cdf(double a, double b, double x);

const char* special_backend_id();

}  // namespace pvpower
