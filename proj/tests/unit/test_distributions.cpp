#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "fitts/distributions.hpp"
#include "oracles.hpp"

using namespace fitts::stats;

TEST_SUITE("distributions") {

TEST_CASE("incomplete beta endpoints and symmetry") {
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  for (double x : {0.05, 0.3, 0.5, 0.77, 0.99}) {
    CHECK(incomplete_beta(2.5, 0.5, x) + incomplete_beta(0.5, 2.5, 1.0 - x) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("incomplete beta matches quadrature and Boost") {
  for (double a : {0.5, 1.0, 1.5, 2.5, 5.0, 20.0}) {
    for (double b : {0.5, 1.0, 2.0, 3.5, 10.0}) {
      for (double x : {0.001, 0.05, 0.2, 0.5, 0.8, 0.95, 0.999}) {
        const double got = incomplete_beta(a, b, x);
        CHECK(std::fabs(got - oracle::incomplete_beta_quadrature(a, b, x)) <= 1e-9);
        CHECK(std::fabs(got - boost::math::ibeta(a, b, x)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("F upper tail: worked example and oracle grid") {
  // r2 = 0.85263, n = 4, p = 1 gives F = 11.571 on (1, 2) degrees of freedom.
  CHECK(f_upper_tail(11.571, 1, 2) == doctest::Approx(0.0766).epsilon(1e-3));
  CHECK(f_upper_tail(0.0, 3, 7) == 1.0);

  for (double d1 : {1.0, 2.0, 3.0, 5.0}) {
    for (double d2 : {1.0, 2.0, 4.0, 5.0, 10.0, 30.0}) {
      for (double f : {0.01, 0.5, 1.0, 2.0, 5.0, 11.571, 30.0, 100.0}) {
        const double got = f_upper_tail(f, d1, d2);
        CHECK(std::fabs(got - oracle::f_upper_tail_quadrature(f, d1, d2)) <= 1e-8);
        const boost::math::fisher_f_distribution<double> dist(d1, d2);
        CHECK(std::fabs(got - boost::math::cdf(boost::math::complement(dist, f))) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: F p-value decreases in F") {
  for (double d1 : {1.0, 2.0, 3.0}) {
    for (double d2 : {2.0, 5.0, 12.0}) {
      double previous = 1.0;
      for (double f = 0.05; f < 200.0; f *= 1.3) {
        const double p = f_upper_tail(f, d1, d2);
        CHECK(p < previous);
        CHECK(p >= 0.0);
        previous = p;
      }
    }
  }
}

TEST_CASE("Student t cdf and quantile") {
  CHECK(student_t_quantile(0.975, 2.0) == doctest::Approx(4.302652729911275).epsilon(1e-10));
  for (double dof : {1.0, 2.0, 3.0, 7.0, 19.0, 99.0}) {
    const boost::math::students_t_distribution<double> dist(dof);
    for (double t : {-4.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
      CHECK(std::fabs(student_t_cdf(t, dof) - boost::math::cdf(dist, t)) <= 1e-12);
    }
    for (double p : {0.025, 0.5, 0.9, 0.975, 0.995}) {
      CHECK(student_t_quantile(p, dof) ==
            doctest::Approx(boost::math::quantile(dist, p)).epsilon(1e-9));
    }
  }
}

}  // TEST_SUITE
