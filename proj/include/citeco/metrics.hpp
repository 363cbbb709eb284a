#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citeco/common.hpp"
#include "citeco/graph.hpp"

namespace citeco::metrics {

// Which per-node weight feeds the entropy. Undirected degree share is the
// default; the directed in-degree reading is an opt-in variant and needs a
// network that still carries its directed edges.
enum class DegreeBasis { Undirected, InDegree };

// One snapshot's measures. year is empty for the full, unrestricted network.
// x always equals n - c - g - 1, so r = x / (c + g + 1) is exact as a ratio
// of the stored integers.
struct EcologyMetrics {
    std::optional<int> year;
    std::int64_t n = 0;
    std::int64_t c = 0;
    std::int64_t g = 0;
    std::int64_t x = 0;
    double r = 0.0;
    double s_nats = 0.0;
    double h = 0.0;
};

// Exogenous nodes per unit of parent + descendants + grandparents:
// (n - c - g - 1) / (c + g + 1). Throws when n < c + g + 1, which means the
// role partition was violated upstream.
double citation_reach(std::int64_t n, std::int64_t c, std::int64_t g);

// Degree fractions p_i = deg(i) / sum_j deg(j), ordered like net.nodes.
// Zero-edge networks give an empty distribution.
std::vector<double> degree_distribution(const graph::ParentNetwork& net,
                                        DegreeBasis basis = DegreeBasis::Undirected);

// -sum p_i ln p_i with 0 ln 0 := 0, in nats. The input must sum to 1 within
// 1e-12 with non-negative entries.
double shannon_entropy(std::span<const double> p);

// s / ln(n) for n >= 2; defined as 0 for degenerate networks.
double normalized_entropy(double s_nats, std::int64_t n);

// Full set of measures for one network (or snapshot).
EcologyMetrics compute(const graph::ParentNetwork& net,
                       DegreeBasis basis = DegreeBasis::Undirected);

struct MetricsSeries {
    BlindId parent = kInvalidId;
    std::vector<EcologyMetrics> rows;  // strictly increasing years
};

// One row per calendar year on snapshot(net, year). from_year must not
// precede the parent's publication year.
MetricsSeries metrics_timeline(const graph::ParentNetwork& net, int from_year, int to_year,
                               DegreeBasis basis = DegreeBasis::Undirected);

struct EntropyFit {
    double slope = 0.0;      // nats per unit ln(citations)
    double intercept = 0.0;  // nats
    double r_squared = 0.0;
};

// Ordinary least squares of S against ln(C) over rows with C >= 1. Throws
// unless at least two usable rows with distinct ln(C) exist. A flat S series
// reports r_squared = 0.
EntropyFit entropy_log_citation_fit(const MetricsSeries& series);

// CSV with header parent,year,N,C,G,X,R,S_nats,H; floats at 12 significant
// digits; year prints as "full" for unrestricted rows.
std::string metrics_csv_header();
std::string metrics_csv_row(BlindId parent, const EcologyMetrics& m);

}  // namespace citeco::metrics
