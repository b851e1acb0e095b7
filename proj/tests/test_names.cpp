#include <catch2/catch_amalgamated.hpp>

#include "itlp/names.hpp"

using namespace itlp;

TEST_CASE("benchmark label encoding") {
  CHECK(encode_name(10, 10, 2, "TL") == "10C10L2TL");
  CHECK(encode_name(20, 20, 8, "T") == "20C20L8T");
  CHECK(encode_name(10, 10, 4, 4) == "10C10L4T4TL");
  CHECK_THROWS_AS(encode_name(10, 10, 2, "X"), std::invalid_argument);
}

TEST_CASE("benchmark label parsing") {
  const InstanceName a = parse_name("10C10L2TL");
  CHECK(a.n == 10);
  CHECK(a.p == 10);
  REQUIRE(a.links);
  CHECK(*a.links == 2);
  CHECK_FALSE(a.terminals);

  const InstanceName b = parse_name("20C20L8T");
  CHECK(b.n == 20);
  CHECK(b.p == 20);
  REQUIRE(b.terminals);
  CHECK(*b.terminals == 8);
  CHECK_FALSE(b.links);

  const InstanceName c = parse_name("10C10L4T4TL");
  REQUIRE(c.terminals);
  REQUIRE(c.links);
  CHECK(*c.terminals == 4);
  CHECK(*c.links == 4);
}

TEST_CASE("label round trip") {
  for (const char *s : {"10C10L2TL", "20C20L8T", "10C10L4T4TL", "90C40L12TL", "5C3L0T"})
    CHECK(parse_name(s).str() == s);
}

TEST_CASE("malformed labels name the offending token") {
  using Catch::Matchers::ContainsSubstring;
  CHECK_THROWS_WITH(parse_name("10X10L2TL"), ContainsSubstring("expected 'C'"));
  CHECK_THROWS_WITH(parse_name("10C10L2"), ContainsSubstring("expected 'T' or 'TL'"));
  CHECK_THROWS_WITH(parse_name("10C10L2TLx"), ContainsSubstring("trailing"));
  CHECK_THROWS_WITH(parse_name("C10L2TL"), ContainsSubstring("customer count"));
  CHECK_THROWS_WITH(parse_name("10C10L4T4T"), ContainsSubstring("expected trailing 'TL'"));
}
