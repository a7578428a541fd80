#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Run glwb(const std::string& args) {
  const std::string cmd = std::string(GLWB_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "glwb_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("cli: parse and print cycle") {
  Run r = glwb("parse \"<a ; ~b> P\" | " GLWB_CLI " print -");
  CHECK(r.code == 0);
  CHECK(r.out == "<a; ~b> P\n");
  Run j = glwb("parse \"<a^d> -P\"");
  CHECK(j.code == 0);
  CHECK(j.out.find("\"sort\"") != std::string::npos);
  CHECK(glwb("parse \"<a ; > P\"").code == 2);
}

TEST_CASE("cli: fragment membership sets the exit code") {
  CHECK(glwb("--logic rgl fragment --fragment rlGL \"<(rec x.(?P ∪ a;x))> true\"").code == 0);
  CHECK(glwb("--logic rgl fragment --fragment rlGL \"<(rec x.(x;a ∪ ?P))> true\"").code == 1);
}

TEST_CASE("cli: proof checking") {
  Run ok = glwb("proof-check " GLWB_DATA_DIR "/proofs/trap_cancel.proof");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("accepted") != std::string::npos);
  fs::path bad = scratch("bad.proof", "calculus GLs\n1. P BY axiom:Taut\n");
  Run no = glwb("proof-check " + bad.string());
  CHECK(no.code == 1);
  CHECK(glwb("proof-check /nonexistent/file.proof").code == 2);
}

TEST_CASE("cli: equivalence, evaluation and translation") {
  CHECK(glwb("equiv P -- -P").code == 1);
  CHECK(glwb("equiv \"<a;b> P\" \"<a><b> P\"").code == 0);
  fs::path s = scratch("two.st", "states 2\nprop P: 1\n");
  Run e = glwb("--logic rgl --structure " + s.string() + " eval P");
  CHECK(e.code == 0);
  CHECK(e.out.find("{1}") != std::string::npos);
  Run t = glwb("--logic rgl translate --from rgl --to flc \"<a> P\"");
  CHECK(t.code == 0);
  CHECK_FALSE(t.out.empty());
  CHECK(glwb("translate --from gls --to nowhere P").code == 2);
}

TEST_CASE("cli: poison games and campaigns") {
  fs::path g = scratch("loop.graph", "vertices 1\nedge 0 0\n");
  Run p = glwb("poison " + g.string());
  CHECK(p.code == 0);
  CHECK(p.out.find("agree") != std::string::npos);
  Run c = glwb("campaign duality --formulas 10 --structures 2");
  CHECK(c.code == 0);
  CHECK(c.out.find("passed=1") != std::string::npos);
  CHECK(glwb("campaign list").out.find("bekic") != std::string::npos);
  CHECK(glwb("campaign no-such-thing").code == 2);
  CHECK(glwb("campaign duality --formulas 0").code == 2);
}

TEST_CASE("cli: usage errors exit with 2") {
  CHECK(glwb("").code == 2);
  CHECK(glwb("--logic klingon parse P").code == 2);
  CHECK(glwb("gen widget").code == 2);
  CHECK(glwb("gen formula --count 3").code == 0);
}
