#include <catch2/catch_amalgamated.hpp>
#include "brauer/qpoly.hpp"
using namespace brauer;
TEST_CASE("smoke") {
  REQUIRE(cyclotomic(1).to_string() == "q-1");
  REQUIRE(cyclotomic(2).to_string() == "q+1");
}
