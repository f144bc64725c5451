#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "fgb/scalar.hpp"

using fgb::ExactScalar;

TEST_CASE("rational arithmetic is exact") {
  ExactScalar a(1, 3), b(1, 6);
  CHECK(a + b == ExactScalar(1, 2));
  CHECK(a - b == ExactScalar(1, 6));
  CHECK(a * b == ExactScalar(1, 18));
  CHECK(a / b == ExactScalar(2));
  CHECK(ExactScalar(2, 4) == ExactScalar(1, 2));  // canonicalized
  CHECK(-a == ExactScalar(-1, 3));
  CHECK(ExactScalar(-1, 3) == ExactScalar(1, -3));
}

TEST_CASE("ordering and sign") {
  CHECK(ExactScalar(1, 3) < ExactScalar(1, 2));
  CHECK(ExactScalar(-5) < ExactScalar(0));
  CHECK(ExactScalar(0).sign() == 0);
  CHECK(ExactScalar(-2, 7).sign() == -1);
  CHECK(ExactScalar::infinity().sign() == 1);
  CHECK(ExactScalar(3) < ExactScalar::infinity());
  CHECK_FALSE(ExactScalar::infinity() < ExactScalar::infinity());
  CHECK(ExactScalar::infinity() == ExactScalar::infinity());
  CHECK(ExactScalar(-3, 4).abs() == ExactScalar(3, 4));
}

TEST_CASE("infinity conventions") {
  ExactScalar inf = ExactScalar::infinity();
  CHECK((inf + ExactScalar(5)).is_infinite());
  CHECK((inf - ExactScalar(5)).is_infinite());
  CHECK((inf * ExactScalar(2, 3)).is_infinite());
  CHECK(ExactScalar(0) * inf == ExactScalar(0));  // measure-theoretic 0 * inf
  CHECK(inf * ExactScalar(0) == ExactScalar(0));
  CHECK(ExactScalar(7) / inf == ExactScalar(0));
  CHECK_THROWS_AS(inf - inf, std::domain_error);
  CHECK_THROWS_AS(inf * ExactScalar(-1), std::domain_error);
  CHECK_THROWS_AS(ExactScalar(1) / ExactScalar(0), std::domain_error);
  CHECK_THROWS_AS(inf.value(), std::domain_error);
}

TEST_CASE("from_string / to_string round-trip") {
  CHECK(ExactScalar::from_string("7/4") == ExactScalar(7, 4));
  CHECK(ExactScalar::from_string("-3") == ExactScalar(-3));
  CHECK(ExactScalar::from_string("7/1") == ExactScalar(7));
  CHECK(ExactScalar::from_string("inf").is_infinite());
  CHECK(ExactScalar(7, 4).to_string() == "7/4");
  CHECK(ExactScalar(-3).to_string() == "-3");
  CHECK(ExactScalar::infinity().to_string() == "inf");
  for (const char* s : {"3/4", "-11/7", "0", "inf", "25"})
    CHECK(ExactScalar::from_string(ExactScalar::from_string(s).to_string()) ==
          ExactScalar::from_string(s));
  CHECK_THROWS_AS(ExactScalar::from_string("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(ExactScalar::from_string("x"), std::invalid_argument);
  CHECK_THROWS_AS(ExactScalar::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(ExactScalar::from_string("1/0"), std::invalid_argument);
}

TEST_CASE("pow and q_pow") {
  CHECK(ExactScalar(2, 3).pow(3) == ExactScalar(8, 27));
  CHECK(ExactScalar(2, 3).pow(-2) == ExactScalar(9, 4));
  CHECK(ExactScalar(5).pow(0) == ExactScalar(1));
  CHECK(ExactScalar::infinity().pow(2).is_infinite());
  CHECK(ExactScalar::infinity().pow(0) == ExactScalar(1));
  CHECK(ExactScalar::infinity().pow(-1) == ExactScalar(0));
  CHECK_THROWS_AS(ExactScalar(0).pow(-1), std::domain_error);
  CHECK(fgb::q_pow(3, 4) == ExactScalar(81));
  CHECK(fgb::q_pow(3, -2) == ExactScalar(1, 9));
  CHECK(fgb::q_pow(5, 0) == ExactScalar(1));
}

TEST_CASE("stream output and to_double") {
  std::ostringstream os;
  os << ExactScalar(3, 4) << " " << ExactScalar::infinity();
  CHECK(os.str() == "3/4 inf");
  CHECK(ExactScalar(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(ExactScalar::infinity().to_double() > 1e308);
}
