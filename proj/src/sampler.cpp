#include "regfree/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "regfree/error.hpp"

namespace regfree {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

namespace {

double uniform01(std::mt19937_64& rng) { return std::generate_canonical<double, 53>(rng); }

// Uniform letter other than the inverse of `previous` (any letter if none).
Letter next_letter(const Alphabet& alphabet, const Word& w, std::mt19937_64& rng) {
  if (w.empty()) return Letter(static_cast<int>(rng() % static_cast<std::uint64_t>(alphabet.letter_count())));
  int forbidden = w.back().inverse().code();
  int c = static_cast<int>(rng() % static_cast<std::uint64_t>(alphabet.letter_count() - 1));
  return Letter(c >= forbidden ? c + 1 : c);
}

template <class Draw>
WalkSample run_shards(std::size_t n, std::uint64_t seed, std::size_t shards, Draw draw) {
  shards = std::max<std::size_t>(shards, 1);
  std::vector<WalkSample> parts(shards);
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < shards; ++i) {
    std::size_t count = n / shards + (i < n % shards ? 1 : 0);
    workers.emplace_back([&, i, count] {
      auto rng = make_rng(seed, i);
      WalkSample& part = parts[i];
      for (std::size_t j = 0; j < count; ++j) {
        Word w = draw(rng);
        ++part.n;
        ++part.lengths[w.size()];
        auto len = static_cast<double>(w.size());
        part.length_sum += len;
        part.length_square_sum += len * len;
        ++part.words[std::move(w)];
      }
    });
  }
  for (auto& t : workers) t.join();
  WalkSample out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

}  // namespace

Word sample_Ws(const Alphabet& alphabet, double s, std::mt19937_64& rng) {
  if (!(s > 0 && s <= 1)) throw InputError("stopping probability must lie in (0, 1]");
  Word w(alphabet);
  while (uniform01(rng) >= s) w.push_back(next_letter(alphabet, w, rng));
  return w;
}

Word sample_W0(const Alphabet& alphabet, std::size_t max_len, std::mt19937_64& rng) {
  Word w(alphabet);
  while (w.size() < max_len) w.push_back(next_letter(alphabet, w, rng));
  return w;
}

void WalkSample::merge(const WalkSample& other) {
  n += other.n;
  for (const auto& [k, c] : other.lengths) lengths[k] += c;
  for (const auto& [w, c] : other.words) words[w] += c;
  length_sum += other.length_sum;
  length_square_sum += other.length_square_sum;
}

WalkSample sample_Ws_many(const Alphabet& alphabet, double s, std::size_t n, std::uint64_t seed,
                          std::size_t shards) {
  if (!(s > 0 && s <= 1)) throw InputError("stopping probability must lie in (0, 1]");
  return run_shards(n, seed, shards, [&](std::mt19937_64& rng) { return sample_Ws(alphabet, s, rng); });
}

WalkSample sample_W0_many(const Alphabet& alphabet, std::size_t max_len, std::size_t n, std::uint64_t seed,
                          std::size_t shards) {
  return run_shards(n, seed, shards, [&](std::mt19937_64& rng) { return sample_W0(alphabet, max_len, rng); });
}

double z_score(std::size_t count, std::size_t n, double p) {
  double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
  double diff = static_cast<double>(count) / static_cast<double>(n) - p;
  if (se == 0) return diff == 0 ? 0 : INFINITY;
  return diff / se;
}

ChainSample simulate_absorption(const AbsorbingChain& chain, std::size_t walks, std::uint64_t seed,
                                std::size_t shards) {
  const std::size_t t = chain.transient;
  const std::size_t z2 = t, dead = t + 1;
  // Cumulative transition table, targets in the order transient..., Z2, D.
  std::vector<std::vector<std::pair<double, std::size_t>>> table(t);
  for (std::size_t i = 0; i < t; ++i) {
    double acc = 0;
    for (std::size_t j = 0; j < t; ++j)
      if (chain.q(i, j) != 0) table[i].emplace_back(acc += chain.q(i, j).get_d(), j);
    if (chain.to_z2[i] != 0) table[i].emplace_back(acc += chain.to_z2[i].get_d(), z2);
    table[i].emplace_back(INFINITY, dead);
  }
  shards = std::max<std::size_t>(shards, 1);
  std::vector<ChainSample> parts(shards);
  std::vector<std::thread> workers;
  for (std::size_t k = 0; k < shards; ++k) {
    std::size_t count = walks / shards + (k < walks % shards ? 1 : 0);
    workers.emplace_back([&, k, count] {
      auto rng = make_rng(seed, k);
      ChainSample& part = parts[k];
      for (std::size_t w = 0; w < count; ++w) {
        std::size_t state = 0;
        while (state < t) {
          double u = uniform01(rng);
          const auto& row = table[state];
          state = std::upper_bound(row.begin(), row.end(), u,
                                   [](double x, const auto& e) { return x < e.first; })
                      ->second;
        }
        ++part.walks;
        if (state == z2) ++part.hits_z2;
        else ++part.hits_d;
      }
    });
  }
  for (auto& th : workers) th.join();
  ChainSample out;
  for (const auto& p : parts) {
    out.walks += p.walks;
    out.hits_z2 += p.hits_z2;
    out.hits_d += p.hits_d;
  }
  return out;
}

nlohmann::json to_json(const WalkSample& sample, std::size_t top_words) {
  nlohmann::json j;
  j["n"] = sample.n;
  auto lengths = nlohmann::json::array();
  for (const auto& [k, c] : sample.lengths) lengths.push_back({k, c});
  j["lengths"] = lengths;
  std::vector<std::pair<std::size_t, Word>> ranked;
  for (const auto& [w, c] : sample.words) ranked.emplace_back(c, w);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  auto words = nlohmann::json::array();
  for (std::size_t i = 0; i < ranked.size() && i < top_words; ++i)
    words.push_back({ranked[i].second.to_string(), ranked[i].first});
  j["words"] = words;
  double n = static_cast<double>(sample.n);
  j["mean_length"] = n > 0 ? sample.length_sum / n : 0.0;
  return j;
}

}  // namespace regfree
