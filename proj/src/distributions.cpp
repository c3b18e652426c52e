#include "cointegra/distributions.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

namespace cointegra {

double chi2_upper_tail(double x, double dof) {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    const boost::math::chi_squared dist(dof);
    return std::clamp(boost::math::cdf(boost::math::complement(dist, x)), 0.0, 1.0);
}

double chi2_quantile(double p, double dof) {
    const boost::math::chi_squared dist(dof);
    return boost::math::quantile(dist, p);
}

double student_t_two_sided(double t, double dof) {
    if (std::isnan(t)) return 1.0;
    if (std::isinf(t)) return 0.0;
    const boost::math::students_t dist(dof);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
}

}  // namespace cointegra
