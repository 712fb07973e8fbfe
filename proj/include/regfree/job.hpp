#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "regfree/automaton.hpp"

namespace regfree {

inline constexpr const char* kVersion = "1.0.0";

// One invocation of the tool, whether it came from flags or a job file.
struct JobSpec {
  std::string command;  // stallings | transversal | classify | measure | sample
  int rank = 2;
  std::vector<std::string> generators;
  std::string set;      // set expression (classify, measure)
  std::string ambient;  // L for the relative versions, empty for F
  std::string which;    // measure: fk | mu | lambda | mu01 | lambdaL | star; sample: ws | w0
  std::size_t k_min = 0;
  std::size_t k_max = 12;
  std::vector<std::string> s_values;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  std::size_t max_len = 3;
  std::size_t limit = 10000;
  std::optional<std::size_t> tree_index;
  std::string dot;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

nlohmann::json to_json(const JobSpec& job);
// Missing keys keep their defaults; unknown keys are rejected.
JobSpec job_from_json(const nlohmann::json& j);
// "A..B" or "K"
std::pair<std::size_t, std::size_t> parse_k_range(std::string_view text);

// Set expressions: primitives
//   F | all | empty | word:w | words:u+v | cone:u | subgroup:g+h
//   coset:g+h/w (C w) | lcoset:w/g+h (w C) | dcoset:g+h/w/g+h (A w B)
//   transversal:g+h[@i] | unstable:g+h[@i] | singular:g+h[@i] | normalizer:g+h
//   file:path.json
// and combinators union(..), inter(..), concat(..), product(..) (two or more
// arguments; concat forbids cancellation, product reduces in F),
// diff(a,b), prefix(a), star(a), inverse(a), complement(a).
// `@i` picks the i-th spanning tree instead of the geodesic one.
ReducedAutomaton parse_set_expression(const Alphabet& alphabet, std::string_view text);

// Deterministic JSON report: {version, job, result}.
nlohmann::json run_job(const JobSpec& job);

// Maps an exception to the exit code: 2 parse, 3 precondition or domain,
// 4 resource, 1 otherwise.
int exit_code_for(const std::exception& e);

std::string to_dot(const ReducedAutomaton& a, const std::string& name = "A");

}  // namespace regfree
