#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "permgrid/search_budget.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "permgrid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = permgrid::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("contains") {
  const auto r = run({"contains", "--pattern", "132", "--perm", "32514"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  CHECK(run({"contains", "--pattern", "321", "--perm", "2143"}).out == "false\n");
}

TEST_CASE("enumerate") {
  const auto r = run({"enumerate", "--class", "Av(21)", "--max-len", "5", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"class\":\"Av(21)\",\"counts\":[\"1\",\"1\",\"1\",\"1\",\"1\",\"1\"],\"max_len\":5}\n");
  const auto csv = run({"enumerate", "--class", "Av(321)", "--max-len", "3", "--format", "csv"});
  CHECK(csv.out == "n,count\n0,1\n1,1\n2,2\n3,5\n");
}

TEST_CASE("basis of the two-cell merge") {
  const auto r = run({"basis", "--class", "merge(grid([[Av(21),Av(21)]]),Av(21))", "--max-len", "6", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["basis"] == nlohmann::json({"4321", "321654", "421653", "431652", "521643", "531642"}));
}

TEST_CASE("merge member witness") {
  const auto r = run({"merge-member", "--left", "Av(21)", "--right", "Av(12)", "--perm", "3142", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["member"] == true);
  CHECK(j["coloring"] == "BRRB");
}

TEST_CASE("spectral commands") {
  const auto r = run({"staircase-gr", "--gr-c", "1", "--gr-d", "1", "--steps", "2", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["formula"] == "3");
  CHECK(j["power_iteration"] == "3");
  CHECK(j["limit"] == "4");
  const auto m = nlohmann::json::parse(run({"merge-gr-bound", "--gr-c", "1", "--gr-d", "1", "--format", "json"}).out);
  CHECK(m.dump().find("\"4\"") != std::string::npos);
}

TEST_CASE("series") {
  const auto r = run({"series", "--num", "1,-2", "--den", "1,-3,1", "--terms", "6", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("5,34") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"enumerate", "--class", "Av(21", "--max-len", "3"}).code == permgrid::cli::kExitUsage);
  CHECK(run({"bogus"}).code == permgrid::cli::kExitUsage);
  CHECK(run({"enumerate", "--class", "Av(12,123)", "--max-len", "3"}).code == permgrid::cli::kExitUsage);
  CHECK(run({"enumerate", "--class", "Av(21)", "--max-len", "15"}).code == permgrid::cli::kExitUsage);
  CHECK(run({"enumerate", "--class", "Av(21)", "--max-len", "3", "--format", "xml"}).code == permgrid::cli::kExitUsage);
  const auto domain = run({"series", "--num", "1", "--den", "0,1", "--terms", "3"});
  CHECK(domain.code == permgrid::cli::kExitDomain);
  CHECK(domain.out.empty());
  CHECK_FALSE(domain.err.empty());
  const auto budget = run({"merge-member", "--left", "Av(321)", "--right", "Av(321)", "--perm", "[9,10,11,1,2,3,4,5,6,7,8]",
                           "--budget", "3"});
  CHECK(budget.code == permgrid::cli::kExitBudget);
  permgrid::set_default_node_budget(permgrid::kDefaultNodeBudget);
}

TEST_CASE("budget from the environment") {
  ::setenv("PERMGRID_BUDGET", "abc", 1);
  CHECK(run({"contains", "--pattern", "1", "--perm", "1"}).code == permgrid::cli::kExitUsage);
  ::setenv("PERMGRID_BUDGET", "3", 1);
  CHECK(run({"merge-member", "--left", "Av(321)", "--right", "Av(321)", "--perm", "[9,10,11,1,2,3,4,5,6,7,8]"}).code ==
        permgrid::cli::kExitBudget);
  ::unsetenv("PERMGRID_BUDGET");
  permgrid::set_default_node_budget(permgrid::kDefaultNodeBudget);
}

TEST_CASE("repeated runs are byte identical") {
  const std::vector<std::string> args = {"merge-count", "--left", "Av(21)", "--right", "Av(12)", "--max-len", "7"};
  for (const char* format : {"text", "json", "csv"}) {
    auto a = args;
    a.insert(a.end(), {"--format", format});
    const auto first = run(a);
    CHECK(first.code == 0);
    CHECK(run(a).out == first.out);
  }
}

TEST_CASE("text and json carry the same data") {
  const auto j = nlohmann::json::parse(
      run({"grid-member", "--class", "grid([[Av(21),Av(21)]])", "--perm", "312", "--format", "json"}).out);
  const auto text = run({"grid-member", "--class", "grid([[Av(21),Av(21)]])", "--perm", "312"}).out;
  for (const auto& [key, value] : j.items()) {
    CHECK_MESSAGE(text.find(key + ":") != std::string::npos, key);
    if (value.is_string()) CHECK(text.find(value.get<std::string>()) != std::string::npos);
  }
}

TEST_CASE("reproduce a single criterion") {
  const auto r = run({"reproduce", "--only", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  4 skew-merged-basis") != std::string::npos);
  CHECK(r.out.find("1/1 criteria passed") != std::string::npos);
}
