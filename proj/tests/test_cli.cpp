#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>

#include "zeq/cli/corpus.hpp"

using namespace zeq;
using namespace zeq::cli;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

MPoly mono(const std::vector<std::string>& vars, std::array<unsigned, 4> e, long n, long d = 1) {
  Monomial m;
  for (std::size_t i = 0; i < vars.size(); ++i) m.exp[i] = static_cast<std::uint16_t>(e[i]);
  Rat c(n, d);
  c.canonicalize();
  return MPoly::monomial(vars, m, c);
}

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& args) {
  std::string cmd = std::string(ZEQ_BINARY) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("zeq_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

Json corpus_entry(const std::string& expr, std::array<unsigned, 4> mu) {
  return Json{{"name", expr},
              {"expression", expr},
              {"expected_mu_seq", Json{{"value", mu}, {"provenance", "trivial"}}}};
}

}  // namespace

TEST(Parse, Examples) {
  EXPECT_EQ(parse_poly("z^2 - x*y", kXYZ), mono(kXYZ, {0, 0, 2}, 1) - mono(kXYZ, {1, 1, 0}, 1));
  std::vector<std::string> xyzt{"x", "y", "z", "t"};
  MPoly bs = mono(xyzt, {0, 0, 5, 0}, 1) + mono(xyzt, {0, 6, 1, 1}, 1) + mono(xyzt, {1, 7, 0, 0}, 1) +
             mono(xyzt, {15, 0, 0, 0}, 1);
  EXPECT_EQ(parse_poly("z^5 + t*y^6*z + x*y^7 + x^15", kXYZ, {"t"}), bs);
  EXPECT_EQ(parse_poly("1/2*x^2", kXYZ), mono(kXYZ, {2, 0, 0}, 1, 2));
}

TEST(Parse, PrecedenceAndUnaryMinus) {
  EXPECT_EQ(parse_poly("-x^2", kXYZ), mono(kXYZ, {2, 0, 0}, -1));
  EXPECT_EQ(parse_poly("2*x^2*y", kXYZ), mono(kXYZ, {2, 1, 0}, 2));
  EXPECT_EQ(parse_poly("x - y - z", kXYZ), parse_poly("x - (y + z)", kXYZ));
  EXPECT_EQ(parse_poly("(x + y)^2", kXYZ), parse_poly("x^2 + 2*x*y + y^2", kXYZ));
  EXPECT_EQ(parse_poly("--x", kXYZ), parse_poly("x", kXYZ));
  EXPECT_EQ(parse_poly("6/4", kXYZ), MPoly::constant(kXYZ, Rat(3, 2)));
}

TEST(Parse, ErrorsCarryPositions) {
  auto position = [](const std::string& s) -> long {
    try {
      parse_poly(s, kXYZ);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  EXPECT_EQ(position("z^2 - x y"), 8);
  EXPECT_EQ(position("z^2 - q"), 6);
  EXPECT_EQ(position("(x + y"), 6);
  EXPECT_EQ(position("x +"), 3);
  EXPECT_EQ(position("x ^ y"), 4);
  EXPECT_EQ(position(""), 0);
  EXPECT_EQ(position("1/0"), 2);
  EXPECT_THROW(parse_poly("x", kXYZ, {"x"}), InputError);
}

TEST(Parse, PrintParseRoundTrip) {
  std::mt19937_64 rng(7);
  std::vector<std::string> vars{"x", "y", "z", "t"};
  for (int k = 0; k < 200; ++k) {
    MPoly p(vars);
    int terms = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < terms; ++i) {
      long n = static_cast<long>(rng() % 41) - 20;
      long d = 1 + static_cast<long>(rng() % 9);
      p += mono(vars, {unsigned(rng() % 4), unsigned(rng() % 4), unsigned(rng() % 4), unsigned(rng() % 3)}, n, d);
    }
    EXPECT_EQ(parse_poly(p.to_string(), vars), p) << p.to_string();
  }
}

TEST(Params, Split) {
  EXPECT_EQ(split_params("t,u"), (std::vector<std::string>{"t", "u"}));
  EXPECT_EQ(split_params(" t , u2 "), (std::vector<std::string>{"t", "u2"}));
  EXPECT_TRUE(split_params("").empty());
  EXPECT_THROW(split_params("t,,u"), InputError);
  EXPECT_THROW(split_params("2t"), InputError);
}

TEST(Report, MusqFieldsAndKeyOrder) {
  Options opt;
  Json j = musq_report("z^2 - x*y", opt);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "input", "mu_seq", "smooth", "reduced", "coord_change",
                                            "transversality", "precision_used"}));
  EXPECT_EQ(j["mu_seq"], Json::array({2, 2, 1, 2}));
  EXPECT_FALSE(j["smooth"].get<bool>());
  EXPECT_EQ(j["coord_change"]["seed"], 1);
  EXPECT_EQ(j["coord_change"]["matrix"].size(), 3u);
  EXPECT_EQ(musq_report("z^2 - x^3", opt)["mu_seq"], Json::array({2, 3, 3, 0}));
  Json smooth = musq_report("z", opt);
  EXPECT_EQ(smooth["mu_seq"], Json::array({1, 0, 1, 0}));
  EXPECT_TRUE(smooth["smooth"].get<bool>());
  EXPECT_TRUE(musq_report("(z^2 - x*y)^2", opt)["reduced"].get<bool>());
}

TEST(Report, FamilyModes) {
  Options opt;
  opt.params = {"t"};
  Json h = family_report("z^2 - x*y", "harness", opt);
  EXPECT_EQ(h["decision"], "yes");
  EXPECT_TRUE(h["consistent"].get<bool>());
  EXPECT_EQ(h["runs"].size(), 2u);
  Json n = family_report("z^2 - x*y - t*x^2", "nustar", opt);
  EXPECT_TRUE(n["constant"].get<bool>());
  EXPECT_EQ(n["witnesses"]["generic"], n["witnesses"]["special"]);
  Json ze = family_report("z^2 - x*y - t*x", "ze", opt);
  EXPECT_EQ(ze["decision"], "no");
  EXPECT_EQ(ze["mode"], "ze");
  EXPECT_EQ(ze["seed"], 1);
  EXPECT_THROW(family_report("z^2 - x*y", "bogus", opt), InputError);
  EXPECT_THROW(family_report("z^2 - x*y", "ze", Options{}), InputError);
  EXPECT_THROW(musq_report("z^2 - t*x", opt), InputError);
}

TEST(Report, Deterministic) {
  Options opt;
  opt.seed = 5;
  EXPECT_EQ(musq_report("z^2 - x*y^2", opt).dump(), musq_report("z^2 - x*y^2", opt).dump());
  opt.params = {"t"};
  EXPECT_EQ(family_report("z^2 - x*y - t*x^2", "harness", opt).dump(),
            family_report("z^2 - x*y - t*x^2", "harness", opt).dump());
}

TEST(Report, TextRendering) {
  std::ostringstream os;
  render_text(os, musq_report("z^2 - x*y", Options{}));
  EXPECT_NE(os.str().find("mu_seq: (2, 2, 1, 2)\n"), std::string::npos) << os.str();
}

TEST(Corpus, SchemaValidation) {
  EXPECT_THROW(parse_corpus(Json::object()), InputError);
  EXPECT_THROW(parse_entry(Json{{"name", "a"}, {"expression", "z"}}), InputError);  // no expectation
  Json bad = corpus_entry("z", {1, 0, 1, 0});
  bad["expected_mu_seq"]["provenance"] = "guess";
  EXPECT_THROW(parse_entry(bad), InputError);
  Json nested = corpus_entry("z", {1, 0, 1, 0});
  nested["expected_mu_seq"]["provenance"] = "derived:";
  EXPECT_THROW(parse_entry(nested), InputError);
  Json wrong_dim = corpus_entry("z - t*x", {1, 0, 1, 0});
  wrong_dim["params"] = {"t"};
  wrong_dim["sample_points"] = Json::array({Json::array({"1", "2"})});
  EXPECT_THROW(parse_entry(wrong_dim), InputError);
  EXPECT_NO_THROW(parse_entry(corpus_entry("z", {1, 0, 1, 0})));
}

TEST(Corpus, NegativeControlAndEmpty) {
  Options opt;
  auto entries = parse_corpus(Json::array({corpus_entry("z^2 - x*y", {2, 2, 1, 2}), corpus_entry("z^2 - x^3", {2, 3, 3, 1})}));
  auto results = run_corpus(entries, opt);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_TRUE(results[0].passed());
  EXPECT_FALSE(results[1].passed());
  Json report = corpus_report(results, opt);
  EXPECT_EQ(report["summary"]["failed"], 1);
  EXPECT_EQ(report["entries"][1]["checks"][0]["detail"]["actual"], Json::array({2, 3, 3, 0}));

  auto none = run_corpus({}, opt);
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(corpus_report(none, opt)["summary"]["total"], 0);
}

TEST(Corpus, ErrorsAreCollectedPerEntry) {
  Json bad = corpus_entry("z^2 + 1", {2, 2, 1, 2});  // not through the origin
  auto results = run_corpus(parse_corpus(Json::array({bad, corpus_entry("z", {1, 0, 1, 0})})), Options{});
  ASSERT_EQ(results.size(), 2u);
  EXPECT_FALSE(results[0].passed());
  EXPECT_EQ(results[0].checks[0].status, "error");
  EXPECT_TRUE(results[1].passed());
}

TEST(Corpus, ParallelMatchesSequential) {
  Json arr = Json::array();
  for (const char* e : {"z^2 - x*y", "z^2 - x^3", "z^2 - x*y^2", "z"}) arr.push_back(corpus_entry(e, {0, 0, 0, 0}));
  auto entries = parse_corpus(arr);
  Options seq, par;
  par.parallel = 3;
  EXPECT_EQ(corpus_report(run_corpus(entries, seq), seq).dump(), corpus_report(run_corpus(entries, par), par).dump());
}

TEST(Corpus, BundledRandomEntriesMatchGenerator) {
  auto entries = load_corpus(std::string(ZEQ_SOURCE_DIR) + "/corpus/corpus.json");
  unsigned k = 0;
  for (const auto& e : entries) {
    if (!e.has_tag("random")) continue;
    EXPECT_EQ(parse_poly(e.expression, geometric_vars()), random_isolated_germ(1, k)) << e.name;
    ++k;
  }
  EXPECT_GE(k, 3u);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run("musq 'z^2 - x*y'").code, 0);
  EXPECT_EQ(run("musq 'z^2 - x y'").code, 2);
  EXPECT_EQ(run("musq 'z^2 + 1'").code, 2);
  EXPECT_EQ(run("check-family 'z^2 - x*y' --mode ze").code, 2);  // no parameters
  EXPECT_EQ(run("check-family 'z^2 - x*y' --params t --mode other").code, 2);
  EXPECT_EQ(run("musq 'z^2 - x^7*y^5' --max-precision 3").code, 3);
  EXPECT_EQ(run("musq 'z^2 - x*y' --params ''").code, 0);
  EXPECT_EQ(run("musq 'z^2 - x*y' --max-trials 1").code, 3);  // only the identity, which fails condition 2
  EXPECT_EQ(run("curve-milnor 'y^2'").code, 2);  // not isolated

  std::string bad = temp_file("bad.json", Json::array({corpus_entry("z^2 - x^3", {2, 3, 3, 1})}).dump());
  EXPECT_EQ(run("corpus " + bad).code, 1);
  EXPECT_EQ(run("corpus " + temp_file("empty.json", "[]")).code, 0);
  EXPECT_EQ(run("corpus " + temp_file("broken.json", "[{")).code, 2);
  EXPECT_EQ(run("corpus /nonexistent/corpus.json").code, 2);
}

TEST(Binary, ByteIdenticalOutput) {
  for (const char* args : {"musq 'z^2 - x*y^2' --seed 3", "check-family 'z^2 - x*y - t*x^2' --params t --mode harness",
                           "curve-milnor 'y^2 - x^5' --format text"}) {
    Outcome a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_FALSE(a.out.empty()) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
  Outcome j = run("musq 'z^2 - x*y'");
  EXPECT_EQ(Json::parse(j.out)["mu_seq"], Json::array({2, 2, 1, 2}));
}
