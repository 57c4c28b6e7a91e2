#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "regres/graph.hpp"
#include "regres/rng.hpp"

namespace regres {

using Point = std::int32_t;

/// The expanded point set of a degree sequence: vertex i owns d_i
/// consecutive points.
class PointSet {
 public:
  explicit PointSet(DegreeSequence seq);

  const DegreeSequence& degree_sequence() const { return seq_; }
  std::size_t vertex_count() const { return seq_.size(); }
  std::size_t point_count() const { return owner_.size(); }

  /// The contracted vertex of point x.
  Vertex contracted(Point x) const;
  /// The j-th point of vertex i (0-based slot).
  Point point(Vertex i, std::size_t slot) const;

 private:
  DegreeSequence seq_;
  std::vector<Vertex> owner_;
  std::vector<std::size_t> first_;
};

struct Pairing {
  Point a = 0;
  Point b = 0;
};

/// A (possibly partial) matching on a point set. Pairings are kept in the
/// order they were added; `partner` gives O(1) coverage lookups.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t point_count) : partner_(point_count, -1) {}

  std::size_t point_count() const { return partner_.size(); }
  std::size_t size() const { return pairings_.size(); }
  bool complete() const { return 2 * pairings_.size() == partner_.size(); }
  bool covered(Point x) const { return partner_.at(static_cast<std::size_t>(x)) >= 0; }
  Point partner(Point x) const { return partner_.at(static_cast<std::size_t>(x)); }

  const std::vector<Pairing>& pairings() const { return pairings_; }
  std::vector<Point> uncovered() const;

  void add(Point a, Point b);
  /// Removes the pairing at index k (order of the remaining ones is kept).
  void remove_at(std::size_t k);

  /// Canonical identity: the partner vector.
  const std::vector<Point>& key() const { return partner_; }
  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.partner_ == b.partner_;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    return a.partner_ < b.partner_;
  }

 private:
  std::vector<Point> partner_;
  std::vector<Pairing> pairings_;
};

/// Exact non-negative rational, used for the Algorithm B law.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d);

  friend Fraction operator+(Fraction a, Fraction b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Fraction operator*(Fraction a, Fraction b) { return {a.num * b.num, a.den * b.den}; }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// A Def.-style switching: removes u1u2 and v1v2, adds u1v1 and u2v2.
struct SwitchPlan {
  Vertex u1 = 0;
  Vertex u2 = 0;
  Vertex v1 = 0;
  Vertex v2 = 0;

  SwitchPlan inverse() const { return {u1, v1, u2, v2}; }
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when rejection sampling runs out of attempts.
class SamplingExhausted : public std::runtime_error {
 public:
  SamplingExhausted(std::uint64_t rejections, const std::string& what)
      : std::runtime_error(what), rejections_(rejections) {}
  std::uint64_t rejections() const { return rejections_; }

 private:
  std::uint64_t rejections_;
};

/// Sequential pairing process: scan points in index order; each uncovered
/// point is matched to a uniform uncovered partner.
Configuration sample_configuration_sequential(const PointSet& ps, Rng& rng);

/// One Algorithm A step: add a uniformly chosen pairing of two uncovered points.
Configuration algorithm_a_step(const Configuration& m, Rng& rng);

/// True iff sigma is a permutation of the points whose first 2|M| entries are V(M).
bool sigma_consistent(const Configuration& m, std::span<const Point> sigma);

/// sigma with V(M) in pairing order, then uncovered points in index order.
std::vector<Point> default_sigma(const Configuration& m);

/// One Algorithm B step (i = |M| + 1). With probability 1/(2i-1) pairs
/// sigma[2i-2] with sigma[2i-1]; otherwise picks a uniform pairing z1z2 of M
/// and one fair bit for its orientation, and splices both new points in.
Configuration algorithm_b_step(const Configuration& m, std::span<const Point> sigma, Rng& rng);

/// Exact output law of algorithm_b_step, obtained by summing the branch
/// probabilities the sampler uses. Outcomes are merged and sorted.
std::vector<std::pair<Configuration, Fraction>> algorithm_b_law(const Configuration& m,
                                                                std::span<const Point> sigma);

/// Algorithm A for round(switch_fraction * D/2) steps from the empty
/// configuration, then Algorithm B with default_sigma for the rest.
Configuration hybrid_sample_configuration(const PointSet& ps, double switch_fraction, Rng& rng);

/// Every complete configuration reachable by exhaustive Algorithm A branching.
std::vector<Configuration> enumerate_algorithm_a_outcomes(std::size_t point_count);

/// The multigraph phi(M).
MultiGraph project(const PointSet& ps, const Configuration& m);

bool is_simple(const MultiGraph& g);

enum class ConfigSampler { Sequential, Hybrid };

struct RejectionSample {
  Graph graph;
  std::uint64_t rejections = 0;
  double accept_rate() const { return 1.0 / static_cast<double>(rejections + 1); }
};

/// Uniform d-regular simple graph containing R: draws F from the
/// configuration model on the residual sequence d - d_R(i) until R + F is
/// simple. With R empty this is the uniform G(n,d) sampler.
RejectionSample sample_simple_with_remainder(const Graph& r, std::size_t d, Rng& rng,
                                             std::uint64_t max_rejects = 1'000'000,
                                             ConfigSampler method = ConfigSampler::Sequential,
                                             double switch_fraction = 2.0 / 3.0);

/// Applies a switching. The simple-graph variant throws if an added edge is
/// a loop or already present.
Graph apply_switch(const Graph& g, const SwitchPlan& plan);
MultiGraph apply_switch(const MultiGraph& g, const SwitchPlan& plan);

}  // namespace regres
