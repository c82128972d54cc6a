#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string gBinary;

struct RunResult {
  int exitCode;
  std::string out;
};

// Runs the tool with `input` piped to stdin and captures stdout.
RunResult run(const std::string& args, const std::string& input) {
  const std::string cmd =
      "printf '%s' '" + input + "' | " + gBinary + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("classify: boundary pair") {
  const RunResult r = run(
      "classify",
      R"({"m":3,"x":[1,0.7071067811865476,0.7071067811865476],)"
      R"("y":[2,-1.4142135623730951,-1.4142135623730951]})");
  CHECK(r.exitCode == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("status") == "ok");
  CHECK(doc.at("verdict").at("caseTag") == "BdBd");
  CHECK(doc.at("verdict").at("k").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("classify: origin pair and single point") {
  RunResult r = run("classify", R"({"m":2,"x":[0,0],"y":[0,0]})");
  CHECK(r.exitCode == 0);
  CHECK(json::parse(r.out).at("verdict").at("caseTag") == "ZeroZero");

  r = run("classify", R"({"m":3,"x":[2,1,0]})");
  CHECK(r.exitCode == 0);
  CHECK(json::parse(r.out).at("verdict").at("region") == "IntK");
}

TEST_CASE("classify: rejection exit codes") {
  // not complementary
  RunResult r = run("classify", R"({"m":2,"x":[1,0],"y":[1,0]})");
  CHECK(r.exitCode == 3);
  CHECK(json::parse(r.out).at("status") == "error");
  // unknown field
  r = run("classify", R"({"m":2,"x":[1,0],"bogus":1})");
  CHECK(r.exitCode == 2);
  // wrong length
  r = run("classify", R"({"m":3,"x":[1,0]})");
  CHECK(r.exitCode == 2);
  // not JSON
  r = run("classify", "nonsense");
  CHECK(r.exitCode == 2);
}

TEST_CASE("member: limiting certificate at the origin") {
  const RunResult r = run(
      "member",
      R"({"m":3,"x":[0,0,0],"y":[0,0,0],"u":[1,-1,1],"v":[0,0,1],)"
      R"("cone":"limiting"})");
  CHECK(r.exitCode == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("member") == true);
  const json cert = doc.at("verdict").at("certificate");
  CHECK(cert.at("alpha").get<double>() == doctest::Approx(0.5));
  CHECK(cert.at("xi")[0].get<double>() == doctest::Approx(1.0));
  CHECK(cert.at("xi")[1].get<double>() == doctest::Approx(1.0));
  CHECK(cert.at("xi")[2].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("member: exit code distinguishes non-members") {
  // u = v = 0 is in every cone
  RunResult r = run("member",
                    R"({"m":2,"x":[0,0],"y":[1,1],"u":[0,0],"v":[0,0],)"
                    R"("cone":"proximal"})");
  CHECK(r.exitCode == 0);
  // non-member exits 1
  r = run("member",
          R"({"m":2,"x":[0,0],"y":[1,1],"u":[1,1],"v":[2,-2],)"
          R"("cone":"regular"})");
  CHECK(r.exitCode == 1);
  CHECK(json::parse(r.out).at("verdict").at("member") == false);
  // same candidate is a limiting member
  r = run("member",
          R"({"m":2,"x":[0,0],"y":[1,1],"u":[1,1],"v":[2,-2],)"
          R"("cone":"limiting"})");
  CHECK(r.exitCode == 0);
  // bad cone name
  r = run("member",
          R"({"m":2,"x":[0,0],"y":[1,1],"u":[0,0],"v":[0,0],"cone":"x"})");
  CHECK(r.exitCode == 2);
}

TEST_CASE("calculus: project, ddir, jacobian") {
  RunResult r = run("calculus", R"({"m":3,"op":"project","x":[0,3,4]})");
  CHECK(r.exitCode == 0);
  json doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("projection")[0].get<double>() ==
        doctest::Approx(2.5));
  CHECK(doc.at("verdict").at("projection")[1].get<double>() ==
        doctest::Approx(1.5));
  CHECK(doc.at("verdict").at("projection")[2].get<double>() ==
        doctest::Approx(2.0));

  r = run("calculus",
          R"({"m":3,"op":"jacobian",)"
          R"("x":[-1,2.1213203435596424,2.1213203435596424]})");
  CHECK(r.exitCode == 0);
  doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("jacobian")[1][1].get<double>() ==
        doctest::Approx(5.0 / 12.0).epsilon(1e-10));

  // boundary point is not differentiable
  r = run("calculus", R"({"m":2,"op":"jacobian","x":[1,1]})");
  CHECK(r.exitCode == 4);
  CHECK(json::parse(r.out).at("code") == "NotDifferentiable");

  r = run("calculus", R"({"m":2,"op":"ddir","x":[1,1],"h":[0,1]})");
  CHECK(r.exitCode == 0);
  doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("derivative")[0].get<double>() ==
        doctest::Approx(0.5));

  r = run("calculus", R"({"m":2,"op":"calmness","x":[1,1],"h":[0,1]})");
  CHECK(r.exitCode == 0);

  r = run("calculus", R"({"m":2,"op":"nope","x":[1,1]})");
  CHECK(r.exitCode == 2);
}

TEST_CASE("verify: sweep and single-candidate oracle") {
  RunResult r = run("verify",
                    R"({"caseTag":"BdBd","pairs":5,"candidates":4,"seed":7,)"
                    R"("viSamples":500})");
  CHECK(r.exitCode == 0);
  json doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("disagreements").size() == 0);
  CHECK(doc.at("verdict").at("candidates").get<int>() == 20);

  // malformed counts
  r = run("verify", R"({"caseTag":"BdBd","pairs":0,"candidates":4})");
  CHECK(r.exitCode == 2);

  r = run("verify",
          R"({"m":3,"x":[1,0.7071067811865476,0.7071067811865476],)"
          R"("y":[2,-1.4142135623730951,-1.4142135623730951],)"
          R"("u":[0.7071067811865476,-1,0],)"
          R"("v":[0.35355339059327373,0,0.5],"cone":"proximal"})");
  CHECK(r.exitCode == 0);
  doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("oracle") == "ConsistentMember");
}

TEST_CASE("sample: pairs and normals") {
  RunResult r = run("sample",
                    R"({"m":3,"caseTag":"BdBd","kind":"normals","n":5,)"
                    R"("seed":3})");
  CHECK(r.exitCode == 0);
  json doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("items").size() == 5);

  r = run("sample",
          R"({"m":3,"x":[0,0,0],"y":[2,1,0],"kind":"pairs","n":4,)"
          R"("radius":0.01,"seed":3})");
  CHECK(r.exitCode == 0);
  doc = json::parse(r.out);
  CHECK(doc.at("verdict").at("items").size() == 4);
  CHECK(doc.at("verdict").at("anchor").at("caseTag") == "ZeroInt");
}

TEST_CASE("output is deterministic and round-trips") {
  const std::string q =
      R"({"caseTag":"ZeroZero","pairs":3,"candidates":4,"seed":5,)"
      R"("viSamples":200})";
  const RunResult a = run("verify", q);
  const RunResult b = run("verify", q);
  CHECK(a.out == b.out);
  CHECK_NOTHROW(json::parse(a.out));

  // --pretty changes layout, not content
  const RunResult c = run("verify --pretty", q);
  CHECK(json::parse(c.out) == json::parse(a.out));
}

TEST_CASE("tolerance override flag") {
  // a pair slightly off complementarity: rejected at default tolerance,
  // accepted with a loose one
  const std::string q = R"({"m":2,"x":[1,1],"y":[1.0000001,-1],"u":[0,0],)"
                        R"("v":[0,0],"cone":"regular"})";
  CHECK(run("member", q).exitCode == 3);
  CHECK(run("member --tol 1e-3", q).exitCode == 0);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
    return 1;
  }
  gBinary = argv[argc - 1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv);
  return ctx.run();
}
