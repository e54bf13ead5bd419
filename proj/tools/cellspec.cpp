#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cellspec/error.hpp"
#include "cellspec/generators.hpp"
#include "cellspec/invariants.hpp"
#include "cellspec/io.hpp"
#include "cellspec/spectrum.hpp"
#include "cellspec/suites.hpp"
#include "cellspec/topology.hpp"

namespace {

using cellspec::Errc;
using cellspec::Error;
using cellspec::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::vector<std::string> inputs;
  std::string family;
  std::string out;
  std::string caps_text;
  std::size_t kmax = 4;
  std::size_t test_bound = 4;
  std::string mode = "char";
  std::uint64_t seed = 20190601;
  std::size_t jobs = 1;
  bool timings = false;
  // verify
  std::string suite;
  std::size_t random_count = 1000;
  // construct / reserialize
  std::string kind;
  // enumerate / random
  std::size_t max_size = 4;
  std::size_t size = 6;
  std::size_t count = 10;
  double bias = 0.25;
};

cellspec::FamilyCaps parse_caps(const std::string& text) {
  cellspec::FamilyCaps caps;
  if (text.empty()) return caps;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::parse_error, "caps entry \"" + item + "\" is not key=value");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoull(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "caps value in \"" + item + "\" is not a natural number");
    }
    if (key == "families") {
      caps.families = value;
    } else if (key == "members") {
      caps.members = value;
    } else {
      throw Error(Errc::parse_error, "unknown caps key \"" + key + "\"");
    }
  }
  if (caps.families == 0 || caps.members == 0) throw Error(Errc::precondition_unmet, "caps must be positive");
  return caps;
}

Json caps_json(const cellspec::FamilyCaps& caps) {
  return Json{{"families", caps.families}, {"members", caps.members}};
}

Json report_header(const Options& o, const cellspec::FamilyCaps& caps) {
  Json j;
  j["version"] = cellspec::io::kVersion;
  j["seed"] = o.seed;
  j["caps"] = caps_json(caps);
  return j;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Error(Errc::parse_error, "cannot write " + o.out);
  file << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

const std::string& single_input(const Options& o) {
  if (o.inputs.size() != 1) throw Error(Errc::bad_arity, "expected exactly one --input");
  return o.inputs.front();
}

cellspec::Preorder load_preorder(const std::string& path) {
  return cellspec::io::preorder_from_json(cellspec::io::read_json_file(path));
}

Json load_family_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::parse_error, std::string("--family: ") + e.what());
    }
  }
  return cellspec::io::read_json_file(text);
}

Json attained_json(const cellspec::Attained& a) { return Json{{"value", a.value}, {"witness", a.witness}}; }

int cmd_analyze(const Options& o) {
  const auto caps = parse_caps(o.caps_text);
  const auto P = load_preorder(single_input(o));
  const auto chain = cellspec::invariant_chain(P, 4, caps);

  Json j = report_header(o, caps);
  j["input"] = cellspec::io::to_json(P);
  j["c"] = chain.cellularity;
  j["d"] = chain.density;
  for (std::size_t n = 2; n <= 4; ++n) j["ind_" + std::to_string(n)] = chain.linked_free[n - 2];
  j["pc"] = chain.least_spectrum ? Json(*chain.least_spectrum) : Json(nullptr);
  j["spectrum"] = chain.spectrum.members;
  j["undecided"] = chain.spectrum.undecided;
  Json witnesses;
  witnesses["cellularity"] = attained_json(cellspec::cellularity(P));
  witnesses["density"] = attained_json(cellspec::density(P));
  for (std::size_t n = 2; n <= 4; ++n) {
    witnesses["ind_" + std::to_string(n)] = attained_json(cellspec::linked_free_number(P, n));
  }
  Json reports = Json::array();
  for (const auto& r : chain.spectrum.reports) reports.push_back(cellspec::io::to_json(r, {o.timings}));
  witnesses["spectrum"] = std::move(reports);
  j["witnesses"] = std::move(witnesses);
  j["violations"] = chain.violations;
  emit(o, j);
  return kExitOk;
}

int cmd_verify(const Options& o) {
  if (!cellspec::suites::is_suite(o.suite)) {
    std::string known;
    for (const auto& name : cellspec::suites::suite_names()) known += (known.empty() ? "" : ", ") + name;
    throw Error(Errc::precondition_unmet, "unknown suite \"" + o.suite + "\" (known: " + known + ")");
  }
  cellspec::suites::SuiteOptions options;
  options.jobs = o.jobs;
  options.caps = parse_caps(o.caps_text);
  options.seed = o.seed;
  options.random_count = o.random_count;
  options.test_bound = o.test_bound;
  options.timings = o.timings;
  const auto result = cellspec::suites::run_suite(o.suite, options);
  emit(o, cellspec::suites::to_json(result, options));
  std::cerr << result.name << ": " << result.instances << " checks, " << result.violations.size()
            << " violations\n";
  return result.passed() ? kExitOk : kExitViolations;
}

int cmd_spectrum(const Options& o) {
  cellspec::SpectrumQuery query;
  query.test_bound = o.test_bound;
  query.caps = parse_caps(o.caps_text);
  query.validate();
  if (o.kmax == 0) throw Error(Errc::precondition_unmet, "--kmax must be at least 1");
  cellspec::SpectrumMode mode{};
  if (o.mode == "char") {
    mode = cellspec::SpectrumMode::criterion;
  } else if (o.mode == "oracle") {
    mode = cellspec::SpectrumMode::oracle;
  } else {
    throw Error(Errc::parse_error, "--mode must be char or oracle");
  }
  const auto P = load_preorder(single_input(o));
  const auto set = cellspec::spectrum_set(P, o.kmax, mode, query);

  Json j = report_header(o, query.caps);
  j["input"] = cellspec::io::to_json(P);
  j["mode"] = o.mode;
  j["kmax"] = o.kmax;
  if (mode == cellspec::SpectrumMode::oracle) j["test_bound"] = o.test_bound;
  j["pc"] = set.least ? Json(*set.least) : Json(nullptr);
  j["spectrum"] = cellspec::io::to_json(set, {o.timings});
  emit(o, j);
  return kExitOk;
}

int cmd_construct(const Options& o) {
  namespace io = cellspec::io;
  if (o.kind == "fa") {
    const auto base = load_preorder(single_input(o));
    if (o.family.empty()) throw Error(Errc::bad_arity, "fa needs --family");
    emit(o, io::to_json(cellspec::f_poset(io::family_from_json(load_family_json(o.family), base))));
  } else if (o.kind == "product") {
    if (o.inputs.size() != 2) throw Error(Errc::bad_arity, "product needs two --input files");
    const auto P = load_preorder(o.inputs[0]);
    const auto Q = load_preorder(o.inputs[1]);
    emit(o, io::product_to_json(cellspec::product(P, Q), P.size(), Q.size()));
  } else if (o.kind == "fsp") {
    if (o.inputs.empty()) throw Error(Errc::bad_arity, "fsp needs at least one --input");
    std::vector<cellspec::PointedPreorder> factors;
    for (const auto& path : o.inputs) factors.push_back(io::pointed_from_json(io::read_json_file(path)));
    emit(o, io::to_json(cellspec::finite_support_product(factors)));
  } else if (o.kind == "alexandrov") {
    emit(o, io::to_json(cellspec::alexandrov_space(load_preorder(single_input(o)))));
  } else if (o.kind == "openposet") {
    emit(o, io::to_json(cellspec::open_poset(io::space_from_json(io::read_json_file(single_input(o))))));
  } else {
    throw Error(Errc::parse_error, "unknown construction \"" + o.kind + "\"");
  }
  return kExitOk;
}

// Parses a structure file with the library and writes it back out.
int cmd_reserialize(const Options& o) {
  namespace io = cellspec::io;
  const Json j = io::read_json_file(single_input(o));
  if (o.kind == "preorder") {
    emit(o, io::to_json(io::preorder_from_json(j)));
  } else if (o.kind == "product") {
    const auto factors = j.value("factors", Json::array());
    if (factors.size() != 2) throw Error(Errc::parse_error, "product file needs two factor sizes");
    const auto P = io::preorder_from_json(j);
    const std::size_t left = factors[0].get<std::size_t>();
    const std::size_t right = factors[1].get<std::size_t>();
    if (left * right != P.size()) throw Error(Errc::parse_error, "factor sizes do not match the carrier");
    emit(o, io::product_to_json(P, left, right));
  } else if (o.kind == "pointed") {
    emit(o, io::to_json(io::pointed_from_json(j)));
  } else if (o.kind == "fsp") {
    emit(o, io::to_json(io::support_product_from_json(j)));
  } else if (o.kind == "family") {
    emit(o, io::to_json(io::family_from_json(j)));
  } else if (o.kind == "fposet") {
    emit(o, io::to_json(io::fposet_from_json(j)));
  } else if (o.kind == "space") {
    emit(o, io::to_json(io::space_from_json(j)));
  } else {
    throw Error(Errc::parse_error, "unknown structure kind \"" + o.kind + "\"");
  }
  return kExitOk;
}

int cmd_enumerate(const Options& o) {
  auto stream = cellspec::InstanceStream::exhaustive(o.max_size);
  std::string text;
  while (auto P = stream.next()) text += cellspec::io::to_json(*P).dump() + "\n";
  emit(o, text);
  return kExitOk;
}

int cmd_random(const Options& o) {
  if (o.size == 0) throw Error(Errc::precondition_unmet, "--size must be at least 1");
  auto stream = cellspec::InstanceStream::random(o.count, o.size, o.bias, o.seed);
  std::string text;
  while (auto P = stream.next()) text += cellspec::io::to_json(*P).dump() + "\n";
  emit(o, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cellularity and cellular spectra of finite preorders"};
  app.set_version_flag("--version", std::string(cellspec::io::kVersion));
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the result here instead of stdout");
    sub->add_option("--seed", o.seed, "Seed recorded in reports and used for random instances");
    sub->add_option("--caps", o.caps_text, "Family search limits: families=F,members=M");
    sub->add_flag("--timings", o.timings, "Include wall-clock times in reports");
  };

  auto* analyze = app.add_subcommand("analyze", "Invariants c, d, ind_2..ind_4 and pc of a preorder");
  analyze->add_option("--input", o.inputs, "Preorder file")->required();
  common(analyze);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.suite, "Suite name")->required();
  verify->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--test-bound", o.test_bound, "Oracle bound for the agreement experiment");
  verify->add_option("--random-count", o.random_count, "Random instances in the chain suite");
  common(verify);

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum set up to kmax");
  spectrum->add_option("--input", o.inputs, "Preorder file")->required();
  spectrum->add_option("--kmax", o.kmax, "Largest k queried");
  spectrum->add_option("--test-bound", o.test_bound, "Largest test preorder in oracle mode");
  spectrum->add_option("--mode", o.mode, "char or oracle");
  common(spectrum);

  auto* construct = app.add_subcommand("construct", "Build a derived structure");
  construct->add_option("kind", o.kind, "fa, product, fsp, alexandrov or openposet")->required();
  construct->add_option("--input", o.inputs, "Input structure file (repeatable)")->required();
  construct->add_option("--family", o.family, "Family file or inline JSON list of index lists");
  common(construct);

  auto* reserialize = app.add_subcommand("reserialize", "Parse a structure file and write it back");
  reserialize->add_option("kind", o.kind, "preorder, product, pointed, fsp, family, fposet or space")->required();
  reserialize->add_option("--input", o.inputs, "Structure file")->required();
  common(reserialize);

  auto* enumerate = app.add_subcommand("enumerate", "Canonical preorders as JSON lines");
  enumerate->add_option("--max-size", o.max_size, "Largest size (at most 6)");
  common(enumerate);

  auto* random = app.add_subcommand("random", "Seeded random preorders as JSON lines");
  random->add_option("--size", o.size, "Number of elements");
  random->add_option("--count", o.count, "Number of instances");
  random->add_option("--bias", o.bias, "Probability of each pair before closure");
  common(random);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*verify) return cmd_verify(o);
    if (*spectrum) return cmd_spectrum(o);
    if (*construct) return cmd_construct(o);
    if (*reserialize) return cmd_reserialize(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*random) return cmd_random(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
