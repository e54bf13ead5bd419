#include <doctest.h>

#include "cellspec/suites.hpp"
#include "helpers.hpp"

using namespace cellspec;
using testing::error_code;

TEST_CASE("suite registry") {
  const auto& names = suites::suite_names();
  CHECK(names.size() == 11);
  for (const char* n : {"tech1", "t-family", "witness-family", "tech2", "proj-pullback", "denspec-finite",
                        "alexandrov", "product-spectrum", "chain", "enumeration", "agreement-experiment"}) {
    CHECK(suites::is_suite(n));
  }
  CHECK_FALSE(suites::is_suite("tech3"));
  CHECK(error_code([] { suites::run_suite("tech3", {}); }) == Errc::precondition_unmet);
}

TEST_CASE("reports do not depend on the worker count") {
  suites::SuiteOptions serial;
  serial.random_count = 50;
  auto parallel = serial;
  parallel.jobs = 4;
  for (const char* name : {"tech1", "chain", "agreement-experiment"}) {
    const auto a = suites::run_suite(name, serial);
    const auto b = suites::run_suite(name, parallel);
    CHECK(a.passed());
    CHECK(suites::to_json(a, serial).dump() == suites::to_json(b, parallel).dump());
  }
  CHECK_FALSE(suites::to_json(suites::run_suite("t-family", serial), serial).contains("millis"));
}
