#include "regfree/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

#include "regfree/error.hpp"

namespace regfree {

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& successors) {
  // Iterative Tarjan.
  const std::size_t n = successors.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  struct Frame {
    std::size_t vertex;
    std::size_t next_child;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_child < successors[f.vertex].size()) {
        std::size_t w = successors[f.vertex][f.next_child++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.vertex] = std::min(low[f.vertex], index[w]);
        }
        continue;
      }
      std::size_t v = f.vertex;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().vertex] = std::min(low[frames.back().vertex], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

namespace {

// Longest path length in a DAG support graph, plus one.
std::size_t nilpotency_index(const std::vector<std::vector<std::size_t>>& successors) {
  const std::size_t n = successors.size();
  std::vector<std::size_t> depth(n, 0);
  std::vector<int> state(n, 0);
  std::function<std::size_t(std::size_t)> visit = [&](std::size_t v) -> std::size_t {
    if (state[v] == 2) return depth[v];
    state[v] = 1;
    std::size_t best = 0;
    for (auto w : successors[v]) best = std::max(best, visit(w) + 1);
    state[v] = 2;
    return depth[v] = best;
  };
  std::size_t longest = 0;
  for (std::size_t v = 0; v < n; ++v) longest = std::max(longest, visit(v));
  return longest + 1;
}

}  // namespace

SpectralEnclosure spectral_radius(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("spectral_radius: non-square matrix");
  SpectralEnclosure out;
  std::vector<std::vector<std::size_t>> successors(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0) throw InputError("spectral_radius: negative entry");
      if (m(i, j) != 0) successors[i].push_back(j);
    }
  }
  auto components = strongly_connected_components(successors);
  std::vector<std::vector<std::size_t>> cyclic;
  for (auto& c : components) {
    bool has_cycle = c.size() > 1 || m(c[0], c[0]) != 0;
    if (has_cycle) cyclic.push_back(c);
  }
  if (cyclic.empty()) {
    out.nilpotent = true;
    out.nilpotency_index = n == 0 ? 0 : nilpotency_index(successors);
    return out;
  }

  // Lower bound and estimate: per irreducible block, power iteration on B + I
  // (primitive), then the Collatz-Wielandt minimum ratio on the block.
  double estimate = 0;
  Rational lower = 0;
  for (const auto& block : cyclic) {
    const std::size_t b = block.size();
    Eigen::MatrixXd sub(b, b);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) sub(i, j) = m(block[i], block[j]).get_d();
    Eigen::VectorXd y = Eigen::VectorXd::Ones(b);
    double lambda = 0;
    for (int iter = 0; iter < 5000; ++iter) {
      Eigen::VectorXd z = sub * y + y;
      double norm = z.maxCoeff();
      z /= norm;
      double delta = (z - y).cwiseAbs().maxCoeff();
      y = z;
      lambda = norm - 1;
      if (delta < 1e-15) break;
    }
    estimate = std::max(estimate, lambda);
    std::vector<Rational> yq(b);
    for (std::size_t i = 0; i < b; ++i) yq[i] = from_double(std::max(y(i), 1e-300));
    Rational block_lower;
    for (std::size_t i = 0; i < b; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < b; ++j) acc += m(block[i], block[j]) * yq[j];
      Rational ratio = acc / yq[i];
      if (i == 0 || ratio < block_lower) block_lower = ratio;
    }
    if (block_lower > lower) lower = block_lower;
  }
  out.estimate = estimate;
  out.lower = lower;

  // Upper bound: x = (rI - M)^{-1} 1 for r slightly above the estimate is
  // strictly positive; any positive x certifies max_i (Mx)_i / x_i.
  Eigen::MatrixXd dense(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dense(i, j) = m(i, j).get_d();
  double r = estimate * (1 + 1e-9) + 1e-12;
  std::vector<Rational> certificate;
  for (int attempt = 0; attempt < 60 && certificate.empty(); ++attempt) {
    Eigen::MatrixXd shifted = r * Eigen::MatrixXd::Identity(n, n) - dense;
    Eigen::VectorXd x = shifted.fullPivLu().solve(Eigen::VectorXd::Ones(n));
    bool positive = x.allFinite();
    for (std::size_t i = 0; positive && i < n; ++i) positive = x(i) > 0;
    if (positive) {
      certificate.resize(n);
      for (std::size_t i = 0; i < n; ++i) certificate[i] = from_double(x(i));
    } else {
      r *= 1 + std::pow(2.0, attempt) * 1e-9;
    }
  }
  if (certificate.empty()) certificate.assign(n, Rational(1));
  Rational upper = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational acc = 0;
    for (std::size_t j : successors[i]) acc += m(i, j) * certificate[j];
    Rational ratio = acc / certificate[i];
    if (ratio > upper) upper = ratio;
  }
  if (upper < lower) throw Error("spectral_radius: inconsistent enclosure");
  out.upper = upper;
  out.certificate = std::move(certificate);
  return out;
}

}  // namespace regfree
