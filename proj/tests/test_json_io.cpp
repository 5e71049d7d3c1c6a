#include <doctest.h>

#include "bellscope/error.hpp"
#include "bellscope/json_io.hpp"
#include "support/fixtures.hpp"

using namespace bellscope;
using fixtures::q;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    correlation_from_text(text, ArithmeticMode::exact);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

}  // namespace

TEST_CASE("correlation vectors parse decimals exactly") {
  const auto p = correlation_from_text(R"({"n":2,"S":[[1,2]],"singles":[0.4,"2/5"],"pairs":{"1,2":0.2}})",
                                       ArithmeticMode::exact);
  CHECK(p.single(0) == q(2, 5));
  CHECK(p.single(1) == q(2, 5));
  CHECK(p.pair(0) == q(1, 5));
  const auto f = correlation_from_text(R"({"n":2,"S":[[1,2]],"singles":[0.4,"2/5"],"pairs":{"1,2":0.2}})",
                                       ArithmeticMode::floating);
  CHECK(f.single(1).to_double() == 0.4);
}

TEST_CASE("Clauser-Horne vectors accept pairs in any key order") {
  const auto p = correlation_from_text(
      R"({"n":4,"S":[[1,3],[1,4],[2,3],[2,4]],"singles":[0.5,0.5,0.5,0.5],
          "pairs":{"2,4":"1/8","1,3":"1/4","2,3":"1/4","1,4":"1/4"}})",
      ArithmeticMode::exact);
  CHECK(p.pair(3) == q(1, 8));
  CHECK(p.pair(0) == q(1, 4));
}

TEST_CASE("round trip through JSON") {
  const auto p = fixtures::vec("2/3,2/3;1/5");
  const auto j = to_json(p);
  CHECK(j["singles"][0] == "2/3");
  CHECK(j["pairs"]["1,2"] == "1/5");
  CHECK(correlation_from_json(j, ArithmeticMode::exact) == p);
}

TEST_CASE("malformed input is a parse error") {
  CHECK(parse_code("") == ErrorCode::parse_error);
  CHECK(parse_code("[1,2]") == ErrorCode::parse_error);
  CHECK(parse_code(R"({"n":2,"S":[[1,2]],"singles":[0.4],"pairs":{"1,2":0.2}})") == ErrorCode::parse_error);
  CHECK(parse_code(R"({"n":2,"S":[[1,2]],"singles":[0.4,0.4],"pairs":{}})") == ErrorCode::parse_error);
  CHECK(parse_code(R"({"n":2,"S":[[1,2]],"singles":[0.4,0.4],"pairs":{"1-2":0.1}})") == ErrorCode::parse_error);
  CHECK(parse_code(R"({"n":2,"S":[[1,2]],"singles":[true,0.4],"pairs":{"1,2":0.1}})") == ErrorCode::parse_error);
  CHECK(parse_code(R"({"n":3,"S":[[1,2]],"singles":[0.4,0.4,0.1],"pairs":{"1,3":0.1}})") == ErrorCode::parse_error);
  CHECK(parse_code(R"({"n":2,"S":[[1,1]],"singles":[0.4,0.4],"pairs":{"1,1":0.1}})") == ErrorCode::invalid_pair);
  CHECK(parse_code(R"({"n":2,"S":[[1,2]],"singles":[1.4,0.4],"pairs":{"1,2":0.1}})") == ErrorCode::invalid_vector);
}

TEST_CASE("matrices and directions") {
  const auto m = ComplexMatrix::identity(2) + cdouble(0, 1) * pauli(2);
  const auto j = to_json(m);
  CHECK((matrix_from_json(j) - m).max_abs() == 0.0);
  CHECK((matrix_from_json(json::parse("[1,0,0,1]")) - ComplexMatrix::identity(2)).max_abs() == 0.0);
  CHECK(direction_from_json(json::parse("[0,0,1]")) == Direction{0, 0, 1});
  CHECK_THROWS_AS(matrix_from_json(json::parse("[1,0,[0],1]")), Error);
  CHECK_THROWS_AS(direction_from_json(json::parse("[0,1]")), Error);
}

TEST_CASE("membership reports serialize weights or certificates") {
  const auto inside = to_json(membership(fixtures::vec("2/5,2/5;1/5"), Family::classical));
  CHECK(inside["inside"] == true);
  CHECK(inside["coefficients"].size() == 4);
  CHECK_FALSE(inside.contains("certificate"));
  const auto outside = to_json(membership(fixtures::vec("2/3,2/3;1/5"), Family::classical));
  CHECK(outside["inside"] == false);
  CHECK(outside["certificate"]["value"] == "17/15");
}
