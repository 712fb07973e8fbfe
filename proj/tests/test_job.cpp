#include <doctest.h>

#include "regfree/error.hpp"
#include "regfree/job.hpp"

using namespace regfree;

namespace {
Alphabet F2(2);

std::size_t parse_error_position(const char* text) {
  try {
    parse_set_expression(F2, text);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error for " << text);
  return 0;
}
}  // namespace

TEST_CASE("set expression errors") {
  CHECK(parse_error_position("union(cone:a, cone:b") == 20);
  CHECK(parse_error_position("frob(F)") == 0);
  CHECK(parse_error_position("cone:aA") == 6);
  CHECK(parse_error_position("cone:az") == 6);
  CHECK(parse_error_position("diff(F)") == 0);
  CHECK(parse_error_position("F extra") == 2);
  CHECK_THROWS_AS(parse_set_expression(F2, "coset:ab/c"), ParseError);
  CHECK_THROWS_AS(parse_set_expression(F2, "transversal:abA@99"), InputError);
  CHECK_THROWS_AS(parse_set_expression(F2, "file:/nonexistent.json"), InputError);
}

TEST_CASE("set expressions agree with the library") {
  CHECK(equivalent(parse_set_expression(F2, "union(cone:a, complement(cone:a))"), all_words(F2)));
  CHECK(equivalent(parse_set_expression(F2, "inter(cone:a, cone:b)"), empty_language(F2)));
  CHECK(equivalent(parse_set_expression(F2, "words:ab+1"), from_words(F2, {Word::parse(F2, "ab"), Word(F2)})));
  CHECK(equivalent(parse_set_expression(F2, "inverse(inverse(subgroup:abA))"), parse_set_expression(F2, "subgroup:abA")));
  CHECK(equivalent(parse_set_expression(F2, "product(word:a, word:A)"), parse_set_expression(F2, "word:1")));
  CHECK(is_empty(parse_set_expression(F2, "concat(word:a, word:A)")));
}

TEST_CASE("k ranges") {
  CHECK(parse_k_range("3..9") == std::make_pair<std::size_t, std::size_t>(3, 9));
  CHECK(parse_k_range("4") == std::make_pair<std::size_t, std::size_t>(4, 4));
  CHECK_THROWS_AS(parse_k_range("9..3"), InputError);
  CHECK_THROWS_AS(parse_k_range("a..3"), ParseError);
}

TEST_CASE("job files round trip") {
  JobSpec job;
  job.command = "measure";
  job.which = "mu";
  job.set = "subgroup:abA";
  job.s_values = {"1/2", "1/3"};
  job.k_min = 2;
  job.k_max = 9;
  job.tree_index = 1;
  CHECK(job_from_json(to_json(job)) == job);
  nlohmann::json j = to_json(job);
  j["bogus"] = 1;
  CHECK_THROWS_AS(job_from_json(j), InputError);
  nlohmann::json minimal = {{"command", "classify"}, {"set", "F"}};
  JobSpec parsed = job_from_json(minimal);
  CHECK(parsed.rank == 2);
  CHECK(parsed.k_max == 12);
  CHECK(job_from_json({{"command", "classify"}, {"k_range", "1..4"}}).k_min == 1);
}

TEST_CASE("jobs are deterministic") {
  for (JobSpec job : {JobSpec{.command = "stallings", .generators = {"abA"}},
                      JobSpec{.command = "transversal", .generators = {"aa", "b", "abA"}},
                      JobSpec{.command = "classify", .set = "dcoset:a/b/a"},
                      JobSpec{.command = "classify", .set = "unstable:abA", .ambient = "transversal:abA"},
                      JobSpec{.command = "measure", .set = "cone:ab", .which = "fk"},
                      JobSpec{.command = "measure", .set = "subgroup:abA", .which = "mu", .s_values = {"1/2"}},
                      JobSpec{.command = "sample", .which = "ws", .s_values = {"0.5"}, .samples = 2000}}) {
    CAPTURE(job.command);
    nlohmann::json a = run_job(job), b = run_job(job);
    CHECK(a.dump() == b.dump());
    CHECK(a["version"] == kVersion);
    CHECK(job_from_json(a["job"]) == job);
  }
  auto r = run_job(JobSpec{.command = "measure", .set = "word:ab", .which = "lambda"});
  CHECK(r["result"]["lambda"] == "1/12");
  auto s = run_job(JobSpec{.command = "stallings", .generators = {"abA"}});
  CHECK(s["result"]["rank"] == 1);
  CHECK(s["result"]["finite_index"] == false);
  CHECK_THROWS_AS(run_job(JobSpec{.command = "nope"}), InputError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ParseError("x", 0)) == 2);
  CHECK(exit_code_for(InputError("x")) == 3);
  CHECK(exit_code_for(DomainError("x")) == 3);
  CHECK(exit_code_for(ResourceError("x")) == 4);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("dot output") {
  std::string dot = to_dot(parse_set_expression(F2, "subgroup:abA"), "C");
  CHECK(dot.rfind("digraph C", 0) == 0);
  CHECK(dot.find("doublecircle") != std::string::npos);
}
