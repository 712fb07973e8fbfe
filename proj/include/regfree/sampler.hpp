#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <json.hpp>

#include "regfree/asymptotics.hpp"
#include "regfree/word.hpp"

namespace regfree {

// Independent stream `stream` of the generator seeded with `seed`.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

// No-return walk: stops with probability s at every vertex, first step uniform
// over 2m letters, later ones over the 2m-1 non-backtracking letters.
// Throws InputError unless 0 < s <= 1.
Word sample_Ws(const Alphabet& alphabet, double s, std::mt19937_64& rng);
// Non-stop version, cut at max_len.
Word sample_W0(const Alphabet& alphabet, std::size_t max_len, std::mt19937_64& rng);

struct WalkSample {
  std::size_t n = 0;
  std::map<std::size_t, std::size_t> lengths;
  std::map<Word, std::size_t> words;
  double length_sum = 0;
  double length_square_sum = 0;
  void merge(const WalkSample& other);
};

// N samples of W_s split over `shards` streams; each shard draws from
// make_rng(seed, shard) and the histograms are summed, so the result does not
// depend on the number of worker threads.
WalkSample sample_Ws_many(const Alphabet& alphabet, double s, std::size_t n, std::uint64_t seed,
                          std::size_t shards = 8);
WalkSample sample_W0_many(const Alphabet& alphabet, std::size_t max_len, std::size_t n, std::uint64_t seed,
                          std::size_t shards = 8);

// Goodness of fit of an observed count against a Bernoulli probability p:
// (count/n - p) / sqrt(p(1-p)/n).
double z_score(std::size_t count, std::size_t n, double p);

// Monte-Carlo run of an absorbing chain from transient state 0.
struct ChainSample {
  std::size_t walks = 0;
  std::size_t hits_z2 = 0;
  std::size_t hits_d = 0;
};
ChainSample simulate_absorption(const AbsorbingChain& chain, std::size_t walks, std::uint64_t seed,
                                std::size_t shards = 8);

nlohmann::json to_json(const WalkSample& sample, std::size_t top_words = 20);

}  // namespace regfree
