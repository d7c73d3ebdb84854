#pragma once

// Seeded sampling under the three side-length models and the Monte Carlo
// estimators built on them.
//
// Sample i of a run is generated from Philox counter (i, stream) under the
// run's seed, independent of every other sample. Work is cut into blocks of
// kBlockSize consecutive indices; shards take contiguous block ranges and
// per-block partial results are combined in block order. Results are
// therefore bit-identical for any shard count and any kernel variant.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tangenttri/analytic.hpp"
#include "tangenttri/geometry.hpp"
#include "tangenttri/rng.hpp"

namespace tangenttri::sampling {

using analytic::DensityModel;
using rng::Rng;
using rng::Seed;

inline constexpr std::size_t kBlockSize = 4096;

struct NamedValue {
  std::string name;
  double value;
};

struct SimulationSummary {
  std::uint64_t n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::vector<NamedValue> extra;

  /// Throws std::out_of_range for an unknown name.
  double at(std::string_view name) const;
};

struct Histogram {
  std::vector<double> bin_edges;  // counts.size() + 1 entries; last is +inf with an overflow bin
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

struct DistributionSimulation {
  SimulationSummary summary;
  Histogram histogram;
};

/// Equal-width bins over [lo, hi]. Values below lo land in the first bin.
/// With overflow_bin, values at or above hi go to an extra [hi, inf) bin;
/// otherwise they land in the last bin.
Histogram make_histogram(std::span<const double> values, double lo, double hi, int bins, bool overflow_bin);

// Single draws. Each consumes one counter of the generator, matching sample
// i of the batch routines when the generator uses the same stream.
double sample_theta_single(Rng& rng);
double sample_side_single(Rng& rng);
geometry::ContactAngles sample_contacts(Rng& rng);
double sample_side_incircle(Rng& rng);
double sample_side_naive(Rng& rng);

/// Stream each model draws from in the batch routines.
rng::Stream stream_for(DensityModel model);

std::vector<double> sample_sides(DensityModel model, std::uint64_t n, Seed seed, unsigned shards = 1);
std::vector<double> sample_perimeters(std::uint64_t n, Seed seed, unsigned shards = 1);
void sample_contact_arrays(std::uint64_t n, Seed seed, std::vector<double>& alpha, std::vector<double>& beta,
                           unsigned shards = 1);

SimulationSummary estimate_acute_probability(std::uint64_t n, Seed seed, unsigned shards = 1);
SimulationSummary estimate_alpha_mean(std::uint64_t n, Seed seed, unsigned shards = 1);

DistributionSimulation simulate_alpha(std::uint64_t n, Seed seed, int bins, unsigned shards = 1);
DistributionSimulation simulate_side(DensityModel model, std::uint64_t n, Seed seed, int bins, unsigned shards = 1);
DistributionSimulation simulate_perimeter(std::uint64_t n, Seed seed, int bins, unsigned shards = 1);

/// Upper histogram edge for perimeters. Each side follows the incircle law,
/// so P(perimeter > 3 q) <= 3 P(side > q); with q the 1 - 0.001/3 side
/// quantile at most 0.1% of perimeters overflow.
double perimeter_histogram_cap();

/// Sample mean of incircle sides over the prefixes [0, n) for each n in an
/// ascending list of checkpoints.
std::vector<double> running_side_means(Seed seed, std::span<const std::uint64_t> checkpoints, unsigned shards = 1);

/// Kolmogorov-Smirnov distance between the empirical CDF of an ascending
/// sample and a reference CDF.
double ks_statistic(std::span<const double> ascending, const std::function<double(double)>& cdf);
/// Same, with the reference CDF already evaluated at each sample point.
double ks_statistic_values(std::span<const double> cdf_at_samples);

/// Type-7 (linear interpolation) quantile of an ascending sample.
double empirical_quantile(std::span<const double> ascending, double p);

struct GeometryAudit {
  std::uint64_t n = 0;
  std::uint64_t area_violations = 0;      // |area - perimeter/2| > 1e-9 relative
  std::uint64_t inradius_violations = 0;  // side-line distance off 1 by > 1e-9
  std::uint64_t angle_violations = 0;     // angles not summing to pi within 1e-10
  std::uint64_t class_violations = 0;     // alpha + beta >= pi or not classified as incircle
  std::uint64_t degenerate = 0;           // gap within 1e-9 of pi; triangle not built
  double max_area_rel_deviation = 0.0;
  double max_inradius_deviation = 0.0;

  std::uint64_t violations() const {
    return area_violations + inradius_violations + angle_violations + class_violations;
  }
};

/// Builds the triangle for each sampled contact pair and checks the
/// circumscribed-triangle invariants.
GeometryAudit audit_geometry(std::uint64_t n, Seed seed, unsigned shards = 1);

}  // namespace tangenttri::sampling
