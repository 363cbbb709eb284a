#include "citeco/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace citeco::metrics {

namespace {

// Degrees per node index, in node order.
std::vector<std::int64_t> node_degrees(const graph::ParentNetwork& net, DegreeBasis basis) {
    std::vector<std::int64_t> deg(net.nodes.size(), 0);
    if (basis == DegreeBasis::Undirected) {
        for (const auto& e : net.edges) {
            deg[*net.index_of(e.first)] += 1;
            deg[*net.index_of(e.second)] += 1;
        }
    } else {
        if (net.directed_edges.empty() && !net.edges.empty()) {
            throw std::invalid_argument(
                "in-degree entropy basis requires a network with directed edges");
        }
        for (const auto& e : net.directed_edges) {
            deg[*net.index_of(e.second)] += 1;
        }
    }
    return deg;
}

// S = ln(T) - (1/T) sum d ln d over positive degrees, which is the entropy
// of the degree fractions without materializing them.
double entropy_from_degrees(const std::vector<std::int64_t>& degrees) {
    std::int64_t total = 0;
    for (std::int64_t d : degrees) total += d;
    if (total == 0) return 0.0;
    double sum_d_ln_d = 0.0;
    for (std::int64_t d : degrees) {
        if (d > 0) sum_d_ln_d += static_cast<double>(d) * std::log(static_cast<double>(d));
    }
    double s = std::log(static_cast<double>(total)) - sum_d_ln_d / static_cast<double>(total);
    return s < 0.0 ? 0.0 : s;
}

}  // namespace

double citation_reach(std::int64_t n, std::int64_t c, std::int64_t g) {
    std::int64_t denominator = c + g + 1;
    std::int64_t numerator = n - c - g - 1;
    if (numerator < 0) {
        throw std::logic_error("role partition violated: n < c + g + 1 (n=" + std::to_string(n) +
                               ", c=" + std::to_string(c) + ", g=" + std::to_string(g) + ")");
    }
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::vector<double> degree_distribution(const graph::ParentNetwork& net, DegreeBasis basis) {
    std::vector<std::int64_t> degrees = node_degrees(net, basis);
    std::int64_t total = 0;
    for (std::int64_t d : degrees) total += d;
    if (total == 0) return {};
    std::vector<double> p(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        p[i] = static_cast<double>(degrees[i]) / static_cast<double>(total);
    }
    return p;
}

double shannon_entropy(std::span<const double> p) {
    if (p.empty()) return 0.0;
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::invalid_argument("probability vector has a negative entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("probability vector sums to " + format_double(sum) +
                                    ", not 1");
    }
    double s = 0.0;
    for (double v : p) {
        if (v > 0.0) s -= v * std::log(v);
    }
    return s < 0.0 ? 0.0 : s;
}

double normalized_entropy(double s_nats, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("negative node count");
    if (n <= 1) return 0.0;
    return s_nats / std::log(static_cast<double>(n));
}

EcologyMetrics compute(const graph::ParentNetwork& net, DegreeBasis basis) {
    graph::RoleCounts counts = graph::role_counts(net);
    EcologyMetrics m;
    m.n = counts.n;
    m.c = counts.c;
    m.g = counts.g;
    m.x = counts.x;
    m.r = citation_reach(m.n, m.c, m.g);
    m.s_nats = entropy_from_degrees(node_degrees(net, basis));
    m.h = normalized_entropy(m.s_nats, m.n);
    return m;
}

MetricsSeries metrics_timeline(const graph::ParentNetwork& net, int from_year, int to_year,
                               DegreeBasis basis) {
    if (to_year < from_year) {
        throw std::invalid_argument("to_year precedes from_year");
    }
    MetricsSeries series;
    series.parent = net.parent;
    series.rows.reserve(static_cast<std::size_t>(to_year - from_year + 1));
    for (int year = from_year; year <= to_year; ++year) {
        EcologyMetrics m = compute(graph::snapshot(net, year), basis);
        m.year = year;
        series.rows.push_back(m);
    }
    return series;
}

EntropyFit entropy_log_citation_fit(const MetricsSeries& series) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : series.rows) {
        if (row.c >= 1) {
            xs.push_back(std::log(static_cast<double>(row.c)));
            ys.push_back(row.s_nats);
        }
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("entropy fit needs at least 2 rows with citations");
    }
    double n = static_cast<double>(xs.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mean_x;
        double dy = ys[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("entropy fit needs distinct ln(C) values");
    }
    EntropyFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.r_squared = syy == 0.0 ? 0.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

std::string metrics_csv_header() { return "parent,year,N,C,G,X,R,S_nats,H\n"; }

std::string metrics_csv_row(BlindId parent, const EcologyMetrics& m) {
    std::string year = m.year ? std::to_string(*m.year) : std::string("full");
    return std::to_string(parent) + "," + year + "," + std::to_string(m.n) + "," +
           std::to_string(m.c) + "," + std::to_string(m.g) + "," + std::to_string(m.x) + "," +
           format_double(m.r) + "," + format_double(m.s_nats) + "," + format_double(m.h) + "\n";
}

}  // namespace citeco::metrics
