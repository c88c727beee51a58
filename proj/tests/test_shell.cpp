#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "helpers.hpp"
#include "jacring/cache.hpp"
#include "jacring/cli.hpp"
#include "jacring/parse.hpp"
#include "jacring/specfile.hpp"

using namespace jacring;
using testing_util::random_form;

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("jacring-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct CacheEnv {
  explicit CacheEnv(const fs::path& p) { ::setenv("JACRING_CACHE_DIR", p.c_str(), 1); }
  ~CacheEnv() { ::unsetenv("JACRING_CACHE_DIR"); }
};

std::string preset_text(const std::string& name) { return emit_spec(make_preset(name)); }

nlohmann::json doc_of(const CliResult& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("parse_poly examples") {
  const auto p = parse_poly("x0^3 + 2*x1*x2^2", 2);
  CHECK(p.degree() == 3);
  CHECK(p.size() == 2);
  CHECK(p.coeff(Exponent(std::vector<int>{0, 1, 2})) == 2);

  const auto half = parse_poly("1/2*x0*x1", 2);
  CHECK(half.coeff(Exponent(std::vector<int>{1, 1, 0})) == mpq_class(1, 2));

  try {
    parse_poly("x0^2 + x1", 2);
    FAIL("inhomogeneous input accepted");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("'x0^2'") != std::string::npos);
    CHECK(msg.find("'x1'") != std::string::npos);
    CHECK(msg.find("bytes 0..4") != std::string::npos);
    CHECK(e.offset() == 7);
  }
}

TEST_CASE("parse errors carry byte offsets") {
  struct Case {
    const char* text;
    std::size_t offset;
    const char* fragment;
  };
  for (const auto& c : std::vector<Case>{{"x0 + * x1", 5, "expected"},
                                         {"x3", 0, "out of range"},
                                         {"1/0*x0", 2, "division by zero"},
                                         {"", 0, "empty"},
                                         {"x0^", 3, "integer"},
                                         {"x0 $ x1", 3, "'$'"},
                                         {"2*y1", 2, ""},
                                         {"x0^99999", 3, "too large"},
                                         {"x0 x1", 3, "expected"}}) {
    try {
      parse_poly(c.text, 2);
      FAIL("accepted: " << c.text);
    } catch (const ParseError& e) {
      CHECK_MESSAGE(e.offset() == c.offset, c.text << " -> " << e.what());
      CHECK_MESSAGE(std::string(e.what()).find(c.fragment) != std::string::npos, e.what());
      CHECK(std::string(e.what()).rfind("at byte ", 0) == 0);
    }
  }
}

TEST_CASE("comments, whitespace, signs") {
  CHECK(parse_poly("  x0^2 # trailing\n + x1 ^ 2 ", 2) == parse_poly("x0^2+x1^2", 2));
  CHECK(parse_poly("-x0 - 3*x1", 2) == parse_poly("-1*x0 - 3*x1", 2));
  CHECK(parse_poly("x0*x0*x1", 2) == parse_poly("x0^2*x1", 2));
  CHECK(parse_poly("x0 - x0", 2).is_zero());
  CHECK(parse_poly("0*x0 + x1^2", 2).degree() == 2);
}

TEST_CASE("pretty-print round trip") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 3;
    auto p = random_form(rng, n, 1 + t % 4);
    p = p.scaled(mpq_class(1 + t % 5, 1 + t % 3));
    const std::string text = to_string(p);
    const auto back = parse_poly(text, n);
    CHECK(back == p);
    CHECK(to_string(back) == text);
  }
  CHECK(to_string(parse_poly("x0^3 - 1/2*x1*x2^2", 2)) == "x0^3 - 1/2*x1*x2^2");
}

TEST_CASE("A-elements") {
  const auto spec = make_preset("conic-two-lines");
  const auto x = parse_a_element("x2*lambda1 + 3*x0*lambda2", spec);
  CHECK(x.deg == Bidegree{1, 0});
  CHECK(x.terms.size() == 2);
  CHECK_THROWS_AS(parse_a_element("x2*lambda1 + mu1", spec), ParseError);
  CHECK_THROWS_AS(parse_a_element("lambda3", spec), ParseError);
  CHECK_THROWS_AS(parse_a_element("mu2", spec), ParseError);
  CHECK_THROWS_AS(parse_poly("mu1", 2), ParseError);
}

TEST_CASE("spec files") {
  for (const auto& info : preset_catalog()) {
    const auto spec = make_preset(info.name, 3);
    const auto text = emit_spec(spec);
    const auto back = parse_spec(text);
    CHECK(emit_spec(back) == text);
    CHECK(spec_hash(back) == spec_hash(spec));
  }
  const auto a = parse_spec("# comment\nfield Q\nn 2\nF 3: x0^3 + x1^3 + x2^3\nG 1: x0\noption seed 5\n");
  CHECK(a.seed == 5);
  CHECK(a.r() == 1);
  CHECK(a.s() == 1);
  const auto j = parse_spec(R"({"n": 2, "field": "Q", "F": ["x0^3 + x1^3 + x2^3"], "G": [{"degree": 1, "expr": "x0"}], "seed": 5})");
  CHECK(spec_hash(j) == spec_hash(a));
  const auto g = parse_spec("field gfp 101\nn 2\nF 2: x0^2+x1^2+x2^2\noption assume-smooth\n");
  CHECK(g.field == FieldDesc::prime_field(101));
  CHECK(g.assume_smooth);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("spec file errors are located") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"n 2\nF 3: x0^2\n", "line 2"},
      {"n 2\nF 3: x0^3 + x5\n", "line 2"},
      {"n 2\nH 1: x0\n", "line 2, column 1"},
      {"F 1: x0\n", "byte"},
      {"field gfp 4\nn 2\nF 1: x0\n", "line 1"},
      {"n 1\nF 1: x0\n", "line 1"},
      {"n 2\nF 0: 1\n", "line 2"},
      {"n 2\nF 2: x0^2 + \n", "line 2"},
      {"n 2\noption turbo\n", "line 2"},
      {"{\"n\": 2, \"F\": [\"x0^2\"], \"extra\": 1}", "extra"},
      {"{\"n\": 2, \"F\": [\"x0^2 + x1\"]}", "byte"},
      {"{\"n\": 2, ", "line 1"},
  };
  for (const auto& [text, fragment] : cases) {
    try {
      parse_spec(text);
      FAIL("accepted: " << text);
    } catch (const InputError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, text << " -> " << e.what());
    }
  }
}

TEST_CASE("CLI examples") {
  const auto dir = scratch_dir("cli");
  CacheEnv env(dir);

  const auto preset = cli({"preset", "fermat-quartic"});
  CHECK(preset.code == 0);
  const auto hodge = cli({"hodge"}, preset.out);
  REQUIRE(hodge.code == 0);
  CHECK(doc_of(hodge)["result"]["primitive"] == nlohmann::json::array({1, 19, 1}));

  const auto socle = cli({"socle"}, preset_text("elliptic-line"));
  REQUIRE(socle.code == 0);
  CHECK(doc_of(socle)["result"]["dim"] == 1);

  const auto dim = cli({"dim", "-1", "5"}, preset_text("elliptic-line"));
  REQUIRE(dim.code == 0);
  CHECK(doc_of(dim)["result"]["dim"] == 0);

  const auto csv = cli({"--preset", "fermat-quartic", "--csv", "hodge"});
  CHECK(csv.out.rfind("q,form_degree,piece_q,piece_l,primitive,full\n0,2,0,0,1,1\n1,1,1,0,19,20\n", 0) == 0);

  const auto k2 = cli({"--preset", "conic-two-lines", "kernel2"});
  CHECK(k2.code == 0);
  CHECK(doc_of(k2)["result"]["kernel_dim"] == 1);

  const auto list = cli({"preset", "--list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("cubic-three-lines") != std::string::npos);
}

TEST_CASE("all subcommands run on a small preset") {
  const auto dir = scratch_dir("subs");
  CacheEnv env(dir);
  const auto vfile = dir / "v.txt";
  {
    std::ofstream(vfile) << "# spanning set\nx0^2*mu1\nx0*lambda1 + x2^2*mu1\n\n";
  }
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"dim", "1", "0"},
           {"basis", "0", "1"},
           {"socle"},
           {"pairing", "1", "0"},
           {"kernel2"},
           {"koszul", "0", "1", "0"},
           {"koszul", "0", "1", "0", "--codim", "1"},
           {"koszul", "0", "0", "0", "--V", vfile.string()},
           {"hodge", "1"},
           {"torelli", "1"},
           {"lemma53", "1", "0"},
           {"verify"}}) {
    auto full = args;
    full.insert(full.begin(), {"--preset", "conic-two-lines"});
    const auto r = cli(full);
    CHECK_MESSAGE(r.code == 0, args.front() << ": " << r.err);
    const auto doc = doc_of(r);
    CHECK(doc["command"] == args.front());
    CHECK(doc["spec_hash"] == spec_hash(make_preset("conic-two-lines")));
    CHECK(doc["violation"] == false);
  }
  const auto bounds = cli({"--preset", "quadric-two-planes", "bounds", "1", "0"});
  CHECK(bounds.code == 0);
  CHECK(doc_of(bounds)["result"]["table"].size() == 9);
}

TEST_CASE("exit codes") {
  const auto dir = scratch_dir("codes");
  CacheEnv env(dir);
  auto expect_input_error = [](const CliResult& r, const std::string& fragment) {
    CHECK(r.code == kExitInput);
    CHECK_MESSAGE(r.err.find(fragment) != std::string::npos, r.err);
  };
  expect_input_error(cli({"dim", "0", "0"}, "n 2\nF 3: x0^2\n"), "line 2");
  expect_input_error(cli({"dim", "0", "0"}, "n 2\nF 2: x0^2 + x1 +\n"), "byte");
  expect_input_error(cli({"dim", "0", "0"}, ""), "missing 'n'");
  expect_input_error(cli({"frobnicate"}), "");
  expect_input_error(cli({"dim", "zero", "0"}), "");
  expect_input_error(cli({"--preset", "nodal-cubic", "socle"}), "transversality");
  expect_input_error(cli({"--preset", "triangle", "pairing", "0", "0"}), "socle");
  expect_input_error(cli({"--preset", "conic-two-lines", "torelli", "5"}), "q must");
  expect_input_error(cli({"--preset", "conic-two-lines", "--modp", "4", "dim", "0", "0"}), "not a prime");
  expect_input_error(cli({"--preset", "conic-two-lines", "koszul", "0", "0", "0", "--V", "/nonexistent/v"}), "cannot open");
  expect_input_error(cli({"--preset", "conic-two-lines", "bounds", "1", "0"}), "n - r");
  expect_input_error(cli({"--preset", "no-such-preset", "dim", "0", "0"}), "unknown preset");
  expect_input_error(cli({"--preset", "fermat-quartic", "lemma53", "0", "0"}), "s >= 1");
  expect_input_error(cli({"--spec", "/nonexistent/spec", "dim", "0", "0"}), "cannot open");
  expect_input_error(cli({"dim", "0", "0"}, "field gfp 3\nn 2\nF 2: 1/3*x0^2 + x1^2 + x2^2\n"), "line 3");

  const auto forced = cli({"--preset", "tangent-line", "--assume-smooth", "pairing", "0", "0"});
  CHECK(forced.code == kExitViolation);
  CHECK(doc_of(forced)["violation"] == true);
  CHECK(doc_of(forced)["result"]["perfect"] == false);

  const auto help = cli({"--help"});
  CHECK(help.code == 0);
}

TEST_CASE("V file validation") {
  const auto dir = scratch_dir("vfile");
  CacheEnv env(dir);
  const auto bad = dir / "bad.txt";
  {
    std::ofstream(bad) << "x0*mu1\n";
  }
  const auto r = cli({"--preset", "conic-two-lines", "koszul", "0", "0", "0", "--V", bad.string()});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("line 1") != std::string::npos);
  const auto syntax = dir / "syntax.txt";
  {
    std::ofstream(syntax) << "x0^2*mu1\nx0**lambda1\n";
  }
  const auto s = cli({"--preset", "conic-two-lines", "koszul", "0", "0", "0", "--V", syntax.string()});
  CHECK(s.code == kExitInput);
  CHECK(s.err.find("line 2") != std::string::npos);
  CHECK(s.err.find("at byte") != std::string::npos);
}

TEST_CASE("determinism, cache hits and modular switch") {
  const auto dir = scratch_dir("determinism");
  CacheEnv env(dir);
  const std::vector<std::string> args{"--preset", "cubic-three-lines", "pairing", "0", "1"};
  auto nocache = args;
  nocache.insert(nocache.begin(), "--no-cache");
  const auto a = cli(nocache), b = cli(nocache);
  CHECK(a.out == b.out);
  CHECK(fs::is_empty(dir));
  const auto miss = cli(args);
  const auto hit = cli(args);
  CHECK(miss.out == a.out);
  CHECK(hit.out == a.out);
  CHECK(hit.code == miss.code);
  CHECK_FALSE(fs::is_empty(dir));

  const auto q = doc_of(cli({"--preset", "cubic-three-lines", "dim", "1", "2"}));
  const auto p = doc_of(cli({"--preset", "cubic-three-lines", "--modp", "1125899906842679", "dim", "1", "2"}));
  CHECK(q["result"]["dim"] == p["result"]["dim"]);
  CHECK(p["field"] == "gfp 1125899906842679");
  CHECK(q["spec_hash"] == p["spec_hash"]);
}

TEST_CASE("result cache under concurrent writers") {
  const auto dir = scratch_dir("cache");
  const ResultCache cache(dir);
  const auto key = ResultCache::key("h", "cmd", "args");
  CHECK(key.size() == 64);
  CHECK_FALSE(cache.get(key).has_value());
  std::vector<std::thread> writers;
  for (int t = 0; t < 8; ++t) writers.emplace_back([&] { cache.put(key, "same content"); });
  for (auto& w : writers) w.join();
  REQUIRE(cache.get(key).has_value());
  CHECK(*cache.get(key) == "same content");
  CHECK(ResultCache::key("h", "cmd", "args2") != key);
}

TEST_CASE("malformed input never escapes as an exception") {
  const auto dir = scratch_dir("fuzz");
  CacheEnv env(dir);
  std::mt19937_64 rng(1234);
  const std::string alphabet = "x0123456789^*+-/ #\nFGn:{}[]\",.muλlambda\t";
  const std::string seed_text = "n 2\nF 3: x0^3 + x1^3 + x2^3\nG 1: x0\n";
  for (int t = 0; t < 300; ++t) {
    std::string text = seed_text;
    const int edits = 1 + static_cast<int>(rng() % 6);
    for (int e = 0; e < edits; ++e) {
      const std::size_t pos = rng() % (text.size() + 1);
      const char ch = alphabet[rng() % alphabet.size()];
      switch (rng() % 3) {
        case 0: text.insert(text.begin() + static_cast<long>(pos), ch); break;
        case 1: if (pos < text.size()) text.erase(pos, 1); break;
        default: if (pos < text.size()) text[pos] = ch;
      }
    }
    CliResult r;
    CHECK_NOTHROW(r = cli({"--no-cache", "dim", "1", "0"}, text));
    CHECK((r.code == kExitOk || r.code == kExitInput));
    if (r.code == kExitInput) {
      const bool located = r.err.find("byte") != std::string::npos || r.err.find("line") != std::string::npos ||
                           r.err.find("JSON") != std::string::npos;
      CHECK_MESSAGE(located, text << " -> " << r.err);
    }
  }
}
