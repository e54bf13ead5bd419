#include <doctest.h>

#include "cellspec/io.hpp"
#include "cli_runner.hpp"

using cellspec::io::Json;

namespace {

const char* kChain4 = R"({"size":4,"leq":[[0,1],[1,2],[2,3]],"closed":false})";
const char* kFlat3 = R"({"size":3,"leq":[[0,0],[1,1],[2,2]],"closed":true})";
const char* kFlat2 = R"({"size":2,"leq":[[0,0],[1,1]],"closed":true})";
const char* kChain2 = R"({"size":2,"leq":[[0,1]],"closed":false})";
const char* kBottomed = R"({"size":3,"leq":[[2,0],[2,1]],"closed":false})";

std::vector<std::size_t> members(const Json& report) {
  return report["spectrum"]["members"].get<std::vector<std::size_t>>();
}

}  // namespace

TEST_CASE("analyze") {
  cli::Sandbox box;
  auto r = box.run("analyze --input " + box.file("c4.json", kChain4));
  REQUIRE(r.status == 0);
  auto j = Json::parse(r.out);
  CHECK(j["c"] == 1);
  CHECK(j["d"] == 1);
  CHECK(j["pc"] == 1);
  CHECK(j["ind_2"] == 1);
  CHECK(j["ind_4"] == 3);
  CHECK(j["version"] == cellspec::io::kVersion);
  CHECK(j.contains("seed"));
  CHECK(j["caps"]["members"] == 8);

  r = box.run("analyze --input " + box.file("f3.json", kFlat3));
  j = Json::parse(r.out);
  CHECK(j["c"] == 3);
  CHECK(j["d"] == 3);
  CHECK(j["pc"] == 3);
  CHECK(j["witnesses"]["cellularity"]["witness"].size() == 3);

  r = box.run("analyze --input " + box.file("bad.json", R"({"size":3,"leq":[[0,1],[1,2]],"closed":true})"));
  CHECK(r.status == 2);
  CHECK(r.err.find("RelationNotReflexive") != std::string::npos);

  r = box.run("analyze --input " +
              box.file("bad2.json", R"({"size":3,"leq":[[0,0],[1,1],[2,2],[0,1],[1,2]],"closed":true})"));
  CHECK(r.status == 2);
  CHECK(r.err.find("RelationNotTransitive") != std::string::npos);

  CHECK(box.run("analyze --input " + box.file("junk.json", "{not json")).status == 2);
  CHECK(box.run("analyze --input " + box.path("missing.json").string()).status == 2);
  CHECK(box.run("analyze").status == 2);
  CHECK(box.run("").status == 2);
}

TEST_CASE("spectrum") {
  cli::Sandbox box;
  auto r = box.run("spectrum --kmax 4 --input " + box.file("b.json", kBottomed));
  REQUIRE(r.status == 0);
  CHECK(members(Json::parse(r.out)) == std::vector<std::size_t>{1, 2, 3, 4});

  r = box.run("spectrum --kmax 4 --mode char --input " + box.file("f3.json", kFlat3));
  auto j = Json::parse(r.out);
  CHECK(members(j) == std::vector<std::size_t>{3, 4});
  CHECK(j["pc"] == 3);

  r = box.run("spectrum --kmax 1 --mode oracle --test-bound 1 --input " + box.file("f2.json", kFlat2));
  j = Json::parse(r.out);
  CHECK(members(j).empty());
  const auto& w = j["spectrum"]["reports"][0]["witness"];
  CHECK(w["kind"] == "test-poset");
  CHECK(w["test"]["size"] == 1);
  CHECK(w["product_antichain"].size() == 2);

  CHECK(box.run("spectrum --mode fast --input " + box.path("f2.json").string()).status == 2);
  CHECK(box.run("spectrum --kmax 0 --input " + box.path("f2.json").string()).status == 2);
  CHECK(box.run("spectrum --caps families=0 --input " + box.path("f2.json").string()).status == 2);
  CHECK(box.run("spectrum --caps size=3 --input " + box.path("f2.json").string()).status == 2);
  CHECK(box.run("spectrum --caps families=10,members=2 --input " + box.path("f2.json").string()).status == 0);
}

TEST_CASE("construct") {
  cli::Sandbox box;
  auto r = box.run("construct fa --family '[[0,1],[1,2]]' --input " + box.file("f3.json", kFlat3));
  REQUIRE(r.status == 0);
  CHECK(Json::parse(r.out)["sets"].size() == 6);

  const auto c2 = box.file("c2.json", kChain2);
  r = box.run("construct product --input " + c2 + " --input " + c2);
  REQUIRE(r.status == 0);
  auto j = Json::parse(r.out);
  CHECK(j["size"] == 4);
  CHECK(j["pairing"] == "index(p, q) = p * 2 + q");

  r = box.run("construct alexandrov --input " + c2);
  CHECK(Json::parse(r.out) == Json::parse(R"({"points":2,"opens":[[],[0],[0,1]]})"));

  r = box.run("construct fsp --input " + box.file("f2.json", kFlat2));
  CHECK(r.status == 2);
  CHECK(r.err.find("NoTopElement") != std::string::npos);

  const auto big = box.file("big.json", R"({"size":100,"leq":[],"closed":false})");
  r = box.run("construct product --input " + big + " --input " + big);
  CHECK(r.status == 2);
  CHECK(r.err.find("SizeOverflow") != std::string::npos);

  CHECK(box.run("construct fa --family '[[0,1]]' --input " + c2).status == 2);
  CHECK(box.run("construct lattice --input " + c2).status == 2);
}

TEST_CASE("verify") {
  cli::Sandbox box;
  auto r = box.run("verify tech1");
  CHECK(r.status == 0);
  auto j = Json::parse(r.out);
  CHECK(j["suite"] == "tech1");
  CHECK(j["violations"].empty());
  CHECK(j["instances"].get<std::size_t>() > 0);

  r = box.run("verify agreement-experiment --out " + box.path("agree.json").string());
  CHECK(r.status == 0);
  j = Json::parse(cli::slurp(box.path("agree.json")));
  CHECK(j["details"]["table"].size() == 46 * 4);

  CHECK(box.run("verify nonsense").status == 2);
  CHECK(box.run("verify tech1 --jobs 0").status == 2);
}

TEST_CASE("streams") {
  cli::Sandbox box;
  auto r = box.run("enumerate --max-size 3");
  REQUIRE(r.status == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 13);
  CHECK(box.run("enumerate --max-size 7").status == 2);

  const auto a = box.run("random --size 5 --count 3 --seed 42");
  const auto b = box.run("random --size 5 --count 3 --seed 42");
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 3);
}
