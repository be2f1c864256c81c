// Replays tests/golden/cases.txt against the CLI binary. Each case is a
// "$ [!exit] args..." line followed by the exact expected output (stdout and
// stderr interleaved). Every case runs twice to pin determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct golden_case {
  std::string args;
  int expected_exit = 0;
  std::string expected_output;
};

std::string env_or_die(const char* name) {
  const char* v = std::getenv(name);
  REQUIRE_MESSAGE(v != nullptr, "missing environment variable " << name);
  return v;
}

std::vector<golden_case> load_cases(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::vector<golden_case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("$ ", 0) == 0) {
      golden_case c;
      c.args = line.substr(2);
      if (c.args.rfind("!", 0) == 0) {
        size_t sp = c.args.find(' ');
        c.expected_exit = std::stoi(c.args.substr(1, sp - 1));
        c.args = c.args.substr(sp + 1);
      }
      cases.push_back(std::move(c));
    } else {
      REQUIRE_MESSAGE(!cases.empty(), "output before the first command line");
      cases.back().expected_output += line;
      cases.back().expected_output += '\n';
    }
  }
  return cases;
}

struct run_result {
  std::string output;
  int exit_code = -1;
};

run_result run(const std::string& bin, const std::string& corpus, const std::string& args) {
  std::string cmd = "cd '" + corpus + "' && '" + bin + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  run_result r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("golden corpus") {
  std::string bin = env_or_die("ESPRIO_BIN");
  std::string corpus = env_or_die("ESPRIO_CORPUS");
  std::string golden = env_or_die("ESPRIO_GOLDEN");
  auto cases = load_cases(golden + "/cases.txt");
  REQUIRE(!cases.empty());

  for (const auto& c : cases) {
    CAPTURE(c.args);
    run_result first = run(bin, corpus, c.args);
    CHECK(first.exit_code == c.expected_exit);
    CHECK(first.output == c.expected_output);

    run_result second = run(bin, corpus, c.args);
    CHECK(second.output == first.output);
    CHECK(second.exit_code == first.exit_code);
  }
}
