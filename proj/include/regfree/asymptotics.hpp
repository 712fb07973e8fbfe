#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regfree/automaton.hpp"
#include "regfree/consistent.hpp"
#include "regfree/exact.hpp"
#include "regfree/linalg.hpp"
#include "regfree/series.hpp"
#include "regfree/spectral.hpp"

namespace regfree {

// Path-count matrix of a normalized automaton: n_k = e_start M^k accept.
class TransferMatrix {
 public:
  explicit TransferMatrix(const ReducedAutomaton& a);

  const ReducedAutomaton& automaton() const { return automaton_; }
  std::size_t size() const { return automaton_.state_count(); }
  std::size_t start() const { return static_cast<std::size_t>(automaton_.initial()); }
  IntegerMatrix matrix() const;
  RationalMatrix rational_matrix() const;

  // n_0 .. n_max
  std::vector<Integer> counts(std::size_t max_k) const;
  Integer count(std::size_t k) const { return counts(k).back(); }

 private:
  ReducedAutomaton automaton_;
  // successor lists with multiplicity
  std::vector<std::vector<std::size_t>> successors_;
};

struct Frequency {
  Integer n;
  Rational f;
};
Frequency count_fk(const ReducedAutomaton& a, std::size_t k);
// f_0 .. f_max
std::vector<Rational> frequencies(const ReducedAutomaton& a, std::size_t max_k);

// Σ n_k t^k as a reduced rational series.
RationalSeries growth_series(const ReducedAutomaton& a);
// Σ n_k t^k at a point inside the disc of convergence, by an exact solve.
Rational growth_value(const ReducedAutomaton& a, const Rational& t);

// s ∈ (0, 1]; throws InputError outside.
Rational mu_s(const ReducedAutomaton& a, const Rational& s);
// μ_s(R) as a reduced rational function of s.
RationalFunction mu_function(const ReducedAutomaton& a);

// nullopt for μ_0 means divergent, for μ_1 undefined (μ_0 ≠ 0).
struct MuLimits {
  std::optional<Rational> mu0;
  std::optional<Rational> mu1;
};
MuLimits mu0_mu1(const ReducedAutomaton& a);

// λ(R) = Σ f_k, or nullopt when infinite.
std::optional<Rational> lambda_measure(const ReducedAutomaton& a);
// λ(w) = 1/(2m(2m-1)^{|w|-1}), λ(1) = 1.
Rational lambda_word(const Word& w);

// value_k <= constant · ratio^k for every k >= 0.
struct GeometricBound {
  Rational constant;
  Rational ratio;
};

enum class Verdict { Thick, ExponentiallyNegligible };
enum class Taxonomy { Thick, Sparse, ExponentiallyNegligible, IntermediateDensity, Singular };
std::string to_string(Verdict v);
std::string to_string(Taxonomy t);

struct ClassifyOptions {
  std::size_t k0 = 5;
  // f_k checked exactly for k0 <= k <= horizon; beyond, the envelope applies.
  std::size_t horizon = 200;
};

struct ClassificationReport {
  Verdict verdict = Verdict::ExponentiallyNegligible;
  std::optional<Word> witness;
  // f_k <= delta^k for every k >= k0.
  std::optional<Rational> delta;
  std::size_t k0 = 0;
  // f_k <= C θ^k for every k >= 1 (from the prefix closure's transfer matrix).
  std::optional<GeometricBound> envelope;
  Rational sigma_lower;
  Rational sigma_upper;
  bool nilpotent = false;
  std::vector<Taxonomy> taxonomy;
  std::optional<Rational> lambda;
};
ClassificationReport classify(const ReducedAutomaton& a, const ClassifyOptions& options = {});

// |R ∩ L ∩ S_k| / |L ∩ S_k|, nullopt when L ∩ S_k = ∅.
std::optional<Rational> fk_relative(const ReducedAutomaton& r, const ReducedAutomaton& l, std::size_t k);
// f_k(R, L) <= constant · ratio^k for k >= min_k, from classify(R) and a cone
// C(u) ⊆ L (then f_k(L) >= λ(u) for k >= |u|). nullopt if L has no cone or R
// is thick.
struct RelativeEnvelope {
  GeometricBound bound;
  std::size_t min_k;
};
std::optional<RelativeEnvelope> relative_envelope(const ReducedAutomaton& r, const ReducedAutomaton& l);

// Product of 1/ν over the states visited by w in the ambient automaton of L.
// Throws InputError if w ∉ L or L is not prefix-closed.
Rational lambda_L_word(const Word& w, const ReducedAutomaton& l);
// f′_k(R, L) for k = 0..max_k.
std::vector<Rational> fk_prime(const ReducedAutomaton& r, const ReducedAutomaton& l, std::size_t max_k);

// Walk on a prototyped automaton: each arrow has probability 1/ν(prototype).
RationalMatrix walk_matrix(const PrototypedAutomaton& p, const ReducedAutomaton& ambient);
// Survival of a substochastic walk: x = (I - P)^{-1} 1 and θ = 1 - 1/max x
// give e_start P^k 1 <= x_start θ^k. nullopt when I - P is singular.
struct SurvivalCertificate {
  GeometricBound bound;
  Rational expected_length;  // Σ_k e_start P^k 1 = x_start
};
std::optional<SurvivalCertificate> survival_certificate(const RationalMatrix& p, std::size_t start);

// Markov chain on B3 plus the dead state D. Transient states are those of B3
// except Z2; index 0 is Z1.
struct AbsorbingChain {
  std::size_t transient = 0;
  RationalMatrix q;
  std::vector<Rational> to_z2;
  std::vector<Rational> to_d;
  // Full stochastic matrix in the order transient..., Z2, D.
  RationalMatrix full() const;
};
AbsorbingChain absorbing_chain(const Decomposition& d, const ReducedAutomaton& ambient);

struct Absorption {
  Rational p_z2;
  Rational p_d;
};
Absorption absorption_probabilities(const AbsorbingChain& chain);
// Mass absorbed within `steps` steps; `tail` is the mass still transient.
struct TruncatedAbsorption {
  Rational p_z2;
  Rational p_d;
  Rational tail;
};
TruncatedAbsorption truncated_absorption(const AbsorbingChain& chain, std::size_t steps);

enum class RelativeVerdict { NonSmallCone, ExponentiallyMeasurable };
std::string to_string(RelativeVerdict v);

struct PartReport {
  Word accept_word;  // shortest word ending at this Z
  Absorption absorption;
  std::optional<Rational> lambda_r2;  // Σ_{j>=1} P(Z2)^j
  std::optional<GeometricBound> r3_bound;  // f′_k(R3, L) <= C θ^{k-1}, k >= 1
};

struct RelativeReport {
  RelativeVerdict verdict = RelativeVerdict::ExponentiallyMeasurable;
  std::optional<Word> witness;
  // f′_k(closure, L) <= C θ^k
  std::optional<GeometricBound> closure_bound;
  std::optional<Rational> lambda_L;  // λ_L(R), when measurable
  std::vector<PartReport> parts;
  bool empty = false;
};
RelativeReport classify_relative(const ReducedAutomaton& r, const ReducedAutomaton& l);

struct StarCertificate {
  bool accepted = false;
  std::string reason;
  Rational q;   // f′_k(T, L) <= q^k, k >= 1
  Rational q1;  // f′_k(T°∞, L) <= q1^k, k >= 1
  std::optional<SurvivalCertificate> star_bound;
};
StarCertificate star_closure_measure(const ReducedAutomaton& t, const ReducedAutomaton& l,
                                     std::size_t horizon = 200);

// A rational δ on a 2^-30 grid with values[k] <= δ^k for k0 <= k <= horizon
// and δ^{horizon+1} >= θ^{horizon+1} max(C, 1), so that values_k <= δ^k for
// every k >= k0 when values_k <= C θ^k. nullopt if no δ < 1 qualifies.
std::optional<Rational> uniform_rate(const std::vector<Rational>& values, std::size_t k0,
                                     const GeometricBound& tail, std::size_t horizon);

nlohmann::json to_json(const GeometricBound& b);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const RelativeReport& r);
nlohmann::json to_json(const StarCertificate& c);

}  // namespace regfree
