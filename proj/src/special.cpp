#include "pvpower/special.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/version.hpp>

#include "pvpower/errors.hpp"

namespace pvpower {

namespace bm = boost::math;

double norm_cdf(double z) { return 0.5 * bm::erfc(-z / std::sqrt(2.0)); }
double norm_sf(double z) { return 0.5 * bm::erfc(z / std::sqrt(2.0)); }
double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }

double norm_ppf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("norm_ppf: p must be in (0,1)");
    return -std::sqrt(2.0) * bm::erfc_inv(2.0 * p);
}

double chi1_half_tail(double s, bool below) {
    // F_{chi2_1}(s) = erf(sqrt(s/2)); the erfc form keeps small tails accurate.
    const double t = 0.5 * bm::erfc(std::sqrt(0.5 * s));
    return below ? t : 1.0 - t;
}

double gamma_q(double a, double x) { return bm::gamma_q(a, x); }
double gamma_p(double a, double x) { return bm::gamma_p(a, x); }
double beta_cdf(double a, double b, double x) { return bm::ibeta(a, b, x); }
double beta_quantile(double a, double b, double p) { return bm::ibeta_inv(a, b, p); }

const char* special_backend_id() {
    static const std::string id = "boost.math " + std::to_string(BOOST_VERSION / 100000) + "." +
                                  std::to_string(BOOST_VERSION / 100 % 1000) + "." +
                                  std::to_string(BOOST_VERSION % 100);
    return id.c_str();
}

}  // namespace pvpower
