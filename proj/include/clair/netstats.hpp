#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clair/errors.hpp"
#include "clair/network.hpp"
#include "clair/numeric.hpp"
#include "clair/stats.hpp"

namespace clair {

enum class Direction { in, out, total };

using DegreeHistogram = std::map<std::size_t, std::size_t>;

inline std::size_t degree_of(const Network& net, const std::string& id, Direction dir) {
    if (!net.directed()) return net.out_degree(id);
    switch (dir) {
        case Direction::in: return net.in_degree(id);
        case Direction::out: return net.out_degree(id);
        default: return net.in_degree(id) + net.out_degree(id);
    }
}

inline DegreeHistogram degree_histogram(const Network& net, Direction dir = Direction::total) {
    DegreeHistogram hist;
    for (const auto& id : net.nodes()) ++hist[degree_of(net, id, dir)];
    return hist;
}

inline double avg_degree(const Network& net, Direction dir = Direction::total) {
    if (net.num_nodes() == 0) return 0.0;
    double sum = 0;
    for (const auto& id : net.nodes()) sum += static_cast<double>(degree_of(net, id, dir));
    return sum / static_cast<double>(net.num_nodes());
}

// ---- power-law fitting ------------------------------------------------------

struct PowerLawFit {
    double c;
    double alpha;
    double r;
    double r_squared;
    double pscore;

    std::string to_string() const {
        return "y = " + format_number(c) + " x^" + format_number(alpha);
    }
};

// Least-squares line on (ln degree, ln count) over bins with degree >= 1
// and count >= 1. The p-score is the two-sided correlation t-test
// (t = r sqrt(df / (1 - r^2)), df = points - 2); a perfectly determined
// fit reports 0.
inline PowerLawFit power_law_fit(const DegreeHistogram& hist) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [degree, count] : hist)
        if (degree >= 1 && count >= 1)
            pts.emplace_back(std::log(static_cast<double>(degree)),
                             std::log(static_cast<double>(count)));
    if (pts.size() < 2) throw insufficient_data("power_law_fit needs two usable bins");
    auto fit = linear_regression(pts);
    double r2 = fit.r * fit.r;
    double pscore = 0.0;
    int df = static_cast<int>(pts.size()) - 2;
    if (df >= 1 && 1.0 - r2 > 1e-12) {
        double t = std::fabs(fit.r) * std::sqrt(static_cast<double>(df) / (1.0 - r2));
        pscore = 2.0 * t_dist_prob(df, t);
    }
    return {std::exp(fit.intercept), fit.slope, fit.r, r2, pscore};
}

// Newman's maximum-likelihood exponent over the degree multiset x_i >= xmin:
// alpha = 1 + n (sum ln(x_i/xmin))^-1, sigma = (alpha - 1) / sqrt(n).
inline std::pair<double, double> newman_power_law_exponent(const DegreeHistogram& hist,
                                                           std::size_t xmin = 1) {
    if (xmin < 1) throw invalid_parameter("newman_power_law_exponent: xmin must be >= 1");
    double n = 0, log_sum = 0;
    for (const auto& [degree, count] : hist) {
        if (degree < xmin || count == 0) continue;
        n += static_cast<double>(count);
        log_sum += static_cast<double>(count) *
                   std::log(static_cast<double>(degree) / static_cast<double>(xmin));
    }
    if (n == 0) throw insufficient_data("newman_power_law_exponent: no degrees above xmin");
    if (log_sum == 0)
        throw undefined_statistic("newman_power_law_exponent: all degrees equal xmin");
    double alpha = 1.0 + n / log_sum;
    return {alpha, (alpha - 1.0) / std::sqrt(n)};
}

inline DegreeHistogram cumulative_distribution(const DegreeHistogram& hist) {
    DegreeHistogram cum;
    std::size_t running = 0;
    for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
        running += it->second;
        cum[it->first] = running;
    }
    return cum;
}

// Raw fitted slope on the cumulative bins; no +1 adjustment is applied.
inline double cumulative_power_law_exponent(const DegreeHistogram& hist) {
    return power_law_fit(cumulative_distribution(hist)).alpha;
}

// ---- shortest paths ------------------------------------------------------------

// BFS distances from source; unreachable targets are absent.
inline std::map<std::string, std::size_t> shortest_paths_lengths(const Network& net,
                                                                 const std::string& source,
                                                                 bool undirected_view = false) {
    if (!net.has_node(source)) throw not_found("node " + source + " not present");
    std::map<std::string, std::size_t> dist;
    dist[source] = 0;
    std::deque<std::string> queue{source};
    while (!queue.empty()) {
        std::string u = queue.front();
        queue.pop_front();
        std::size_t du = dist[u];
        auto expand = [&](const std::set<std::string>& nbrs) {
            for (const auto& v : nbrs) {
                if (dist.count(v)) continue;
                dist[v] = du + 1;
                queue.push_back(v);
            }
        };
        expand(net.successors(u));
        if (undirected_view && net.directed()) expand(net.predecessors(u));
    }
    return dist;
}

inline std::map<std::string, std::map<std::string, std::size_t>> shortest_paths(
    const Network& net, bool undirected_view = false) {
    std::map<std::string, std::map<std::string, std::size_t>> all;
    for (const auto& id : net.nodes()) all[id] = shortest_paths_lengths(net, id, undirected_view);
    return all;
}

// Distance between two nodes; absent result means unreachable.
inline std::optional<std::size_t> shortest_path_length(const Network& net, const std::string& u,
                                                       const std::string& v,
                                                       bool undirected_view = false) {
    auto dist = shortest_paths_lengths(net, u, undirected_view);
    auto it = dist.find(v);
    if (it == dist.end()) return std::nullopt;
    return it->second;
}

// Over ordered reachable pairs u != v: the maximum distance (max mode) or
// the arithmetic mean (avg mode). No reachable pair yields 0.
inline double diameter(const Network& net, bool avg = false, bool undirected_view = false) {
    double max_d = 0, sum = 0;
    std::size_t pairs = 0;
    for (const auto& u : net.nodes()) {
        auto dist = shortest_paths_lengths(net, u, undirected_view);
        for (const auto& [v, d] : dist) {
            if (v == u) continue;
            max_d = std::max(max_d, static_cast<double>(d));
            sum += static_cast<double>(d);
            ++pairs;
        }
    }
    if (pairs == 0) return 0.0;
    return avg ? sum / static_cast<double>(pairs) : max_d;
}

inline double average_shortest_path(const Network& net) { return diameter(net, true, false); }

// n(n-1) / sum over ordered pairs of 1/d, with 1/infinity = 0.
inline double harmonic_mean_geodesic(const Network& net, bool undirected_view = false) {
    std::size_t n = net.num_nodes();
    if (n < 2) return 0.0;
    double inv_sum = 0;
    for (const auto& u : net.nodes()) {
        auto dist = shortest_paths_lengths(net, u, undirected_view);
        for (const auto& [v, d] : dist)
            if (v != u) inv_sum += 1.0 / static_cast<double>(d);
    }
    if (inv_sum == 0) return 0.0;
    return static_cast<double>(n) * static_cast<double>(n - 1) / inv_sum;
}

// ---- clustering ------------------------------------------------------------------

// Neighbor-edge density in the undirected view; 0 for degree < 2.
inline std::map<std::string, double> local_clustering_coefficients(const Network& net) {
    std::map<std::string, double> cc;
    for (const auto& v : net.nodes()) {
        auto nbrs = net.neighbors(v);
        nbrs.erase(v);
        if (nbrs.size() < 2) {
            cc[v] = 0.0;
            continue;
        }
        std::size_t links = 0;
        for (auto it = nbrs.begin(); it != nbrs.end(); ++it) {
            auto jt = it;
            for (++jt; jt != nbrs.end(); ++jt)
                if (net.has_edge(*it, *jt) || net.has_edge(*jt, *it)) ++links;
        }
        double possible = static_cast<double>(nbrs.size()) * (static_cast<double>(nbrs.size()) - 1) / 2.0;
        cc[v] = static_cast<double>(links) / possible;
    }
    return cc;
}

// Mean of the local coefficients over all nodes.
inline double watts_strogatz_cc(const Network& net) {
    if (net.num_nodes() == 0) return 0.0;
    auto local = local_clustering_coefficients(net);
    double sum = 0;
    for (const auto& [v, c] : local) sum += c;
    return sum / static_cast<double>(local.size());
}

struct TriangleResult {
    std::vector<std::string> labels;  // "a-b-c" with a < b < c lexicographic
    std::size_t triangle_count = 0;
    std::size_t triple_count = 0;  // sum over nodes of C(undirected degree, 2)
};

inline TriangleResult triangles(const Network& net) {
    TriangleResult result;
    auto ids = net.nodes();
    std::map<std::string, std::set<std::string>> nbrs;
    for (const auto& v : ids) {
        nbrs[v] = net.neighbors(v);
        nbrs[v].erase(v);
    }
    for (const auto& v : ids) {
        std::size_t d = nbrs[v].size();
        result.triple_count += d * (d - 1) / 2;
    }
    for (const auto& a : ids) {
        for (const auto& b : nbrs[a]) {
            if (b <= a) continue;
            for (const auto& c : nbrs[b]) {
                if (c <= b) continue;
                if (nbrs[a].count(c)) {
                    result.labels.push_back(a + "-" + b + "-" + c);
                    ++result.triangle_count;
                }
            }
        }
    }
    std::sort(result.labels.begin(), result.labels.end());
    return result;
}

// 3 * triangles / connected triples; 0 when there are no triples.
inline double newman_cc(const Network& net) {
    auto t = triangles(net);
    if (t.triple_count == 0) return 0.0;
    return 3.0 * static_cast<double>(t.triangle_count) / static_cast<double>(t.triple_count);
}

// ---- components ---------------------------------------------------------------------

enum class ComponentKind { weak, strong, undirected };

namespace detail {

inline std::vector<std::vector<std::string>> strong_components(const Network& net) {
    // Kosaraju: order by finish time on the forward graph, then collect on
    // the reverse graph.
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const auto& root : net.nodes()) {
        if (seen.count(root)) continue;
        std::vector<std::pair<std::string, bool>> stack{{root, false}};
        while (!stack.empty()) {
            auto [v, processed] = stack.back();
            stack.pop_back();
            if (processed) {
                order.push_back(v);
                continue;
            }
            if (seen.count(v)) continue;
            seen.insert(v);
            stack.push_back({v, true});
            for (const auto& w : net.successors(v))
                if (!seen.count(w)) stack.push_back({w, false});
        }
    }
    std::vector<std::vector<std::string>> components;
    std::set<std::string> assigned;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (assigned.count(*it)) continue;
        std::vector<std::string> comp;
        std::vector<std::string> stack{*it};
        assigned.insert(*it);
        while (!stack.empty()) {
            std::string v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& w : net.predecessors(v)) {
                if (assigned.count(w)) continue;
                assigned.insert(w);
                stack.push_back(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

inline std::vector<std::vector<std::string>> weak_components(const Network& net) {
    std::vector<std::vector<std::string>> components;
    std::set<std::string> seen;
    for (const auto& root : net.nodes()) {
        if (seen.count(root)) continue;
        std::vector<std::string> comp;
        std::vector<std::string> stack{root};
        seen.insert(root);
        while (!stack.empty()) {
            std::string v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& w : net.neighbors(v)) {
                if (seen.count(w)) continue;
                seen.insert(w);
                stack.push_back(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

}  // namespace detail

// Components sorted largest first, ties by smallest member id.
inline std::vector<std::vector<std::string>> components(const Network& net,
                                                        ComponentKind kind = ComponentKind::weak) {
    auto comps = kind == ComponentKind::strong ? detail::strong_components(net)
                                               : detail::weak_components(net);
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return comps;
}

inline Network find_largest_component(const Network& net,
                                      ComponentKind kind = ComponentKind::weak) {
    auto comps = components(net, kind);
    if (comps.empty()) return Network(net.directed());
    return net.subset(comps.front());
}

// ---- assortativity -----------------------------------------------------------------------

// Pearson correlation of full endpoint degrees over the undirected view.
inline double degree_assortativity_coefficient(const Network& net) {
    auto edges = net.edges();
    if (edges.empty()) throw undefined_statistic("assortativity undefined without edges");
    std::map<std::string, double> degree;
    for (const auto& v : net.nodes()) {
        auto nbrs = net.neighbors(v);
        nbrs.erase(v);
        degree[v] = static_cast<double>(nbrs.size());
    }
    double m = static_cast<double>(edges.size());
    double sum_jk = 0, sum_half = 0, sum_sq = 0;
    for (const auto& [u, v] : edges) {
        double j = degree[u], k = degree[v];
        sum_jk += j * k;
        sum_half += 0.5 * (j + k);
        sum_sq += 0.5 * (j * j + k * k);
    }
    double mean_half = sum_half / m;
    double denom = sum_sq / m - mean_half * mean_half;
    if (std::fabs(denom) < 1e-15) return 0.0;
    return (sum_jk / m - mean_half * mean_half) / denom;
}

// ---- cosine-vs-link statistics ----------------------------------------------------------------

// Ordered pairs (u, v), u != v, drawn from the matrix keys; a pair is
// linked iff the edge u -> v exists. Entry lookup is symmetric.
template <typename CosLookup>
inline std::pair<double, double> average_cosines_impl(const Network& net, const CosLookup& lookup,
                                                      const std::vector<std::string>& ids) {
    double linked_sum = 0, notlinked_sum = 0;
    std::size_t linked_n = 0, notlinked_n = 0;
    for (const auto& u : ids) {
        for (const auto& v : ids) {
            if (u == v) continue;
            auto value = lookup(u, v);
            if (!value) continue;
            if (net.has_node(u) && net.has_node(v) && net.has_edge(u, v)) {
                linked_sum += *value;
                ++linked_n;
            } else {
                notlinked_sum += *value;
                ++notlinked_n;
            }
        }
    }
    return {linked_n ? linked_sum / static_cast<double>(linked_n) : 0.0,
            notlinked_n ? notlinked_sum / static_cast<double>(notlinked_n) : 0.0};
}

// Histogram bin index: floor(value * 100 + 1e-6); bins 0..100.
inline std::size_t cosine_bin(double value) {
    long bin = static_cast<long>(value * 100.0 + 1e-6);
    if (bin < 0) bin = 0;
    if (bin > 100) bin = 100;
    return static_cast<std::size_t>(bin);
}

// ---- composite stats row -----------------------------------------------------------------------

struct PowerLawColumns {
    double exponent = 0, r_squared = 0, pscore = 0, newman = 0, newman_error = 0;
};

// Fixed-order statistics record. Field order matches the sweep output
// header: nodes edges diameter lcc avg_short_path watts_strogatz_cc hmgd
// (power-law columns x1 undirected, x3 directed for in/out/total)
// avg_degree.
struct StatsRow {
    bool directed = false;
    std::size_t nodes = 0, edges = 0;
    double diameter = 0;
    std::size_t lcc = 0;
    double avg_short_path = 0, watts_strogatz = 0, hmgd = 0;
    std::vector<PowerLawColumns> power;  // in, out, total when directed; total only otherwise
    double avg_degree = 0;

    std::vector<std::string> fields() const {
        std::vector<std::string> out;
        out.push_back(std::to_string(nodes));
        out.push_back(std::to_string(edges));
        out.push_back(format_number(diameter));
        out.push_back(std::to_string(lcc));
        out.push_back(format_number(avg_short_path));
        out.push_back(format_number(watts_strogatz));
        out.push_back(format_number(hmgd));
        std::size_t columns = directed ? 3 : 1;
        for (std::size_t i = 0; i < columns; ++i) {
            PowerLawColumns c = i < power.size() ? power[i] : PowerLawColumns{};
            out.push_back(format_number(c.exponent));
            out.push_back(format_number(c.r_squared));
            out.push_back(format_number(c.pscore));
            out.push_back(format_number(c.newman));
            out.push_back(format_number(c.newman_error));
        }
        out.push_back(format_number(avg_degree));
        return out;
    }

    std::string to_line(const std::string& delim = " ") const {
        auto f = fields();
        std::string line;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) line += delim;
            line += f[i];
        }
        return line;
    }

    static std::string header(bool directed) {
        if (directed)
            return "threshold nodes edges diameter lcc avg_short_path watts_strogatz_cc hmgd "
                   "in_link_power in_link_power_rsquared in_link_pscore in_link_power_newman "
                   "in_link_power_newman_error out_link_power out_link_power_rsquared "
                   "out_link_pscore out_link_power_newman out_link_power_newman_error "
                   "total_link_power total_link_power_rsquared total_link_pscore "
                   "total_link_power_newman total_link_power_newman_error avg_degree";
        return "threshold nodes edges diameter lcc avg_short_path watts_strogatz_cc hmgd "
               "power_law power_law_rsquared power_law_pscore power_law_power_newman "
               "power_law_newman_error avg_degree";
    }

    static std::string zero_line(bool directed, const std::string& delim = " ") {
        std::size_t nfields = directed ? 23 : 13;
        std::string line;
        for (std::size_t i = 0; i < nfields; ++i) {
            if (i) line += delim;
            line += "0";
        }
        return line;
    }
};

struct NetworkInfoOptions {
    bool components = false;
    bool wcc = false;
    bool scc = false;
    bool paths = false;
    bool triangles = false;
    bool assortativity = false;
    bool local_cc = false;
};

inline PowerLawColumns power_law_columns(const DegreeHistogram& hist) {
    PowerLawColumns c;
    try {
        auto fit = power_law_fit(hist);
        c.exponent = fit.alpha;
        c.r_squared = fit.r_squared;
        c.pscore = fit.pscore;
    } catch (const error&) {
    }
    try {
        auto [alpha, sigma] = newman_power_law_exponent(hist, 1);
        c.newman = alpha;
        c.newman_error = sigma;
    } catch (const error&) {
    }
    return c;
}

inline StatsRow network_stats_row(const Network& net) {
    StatsRow row;
    row.directed = net.directed();
    row.nodes = net.num_nodes();
    row.edges = net.num_edges();
    if (row.nodes == 0) return row;
    row.diameter = diameter(net, false, false);
    auto comps = components(net, ComponentKind::weak);
    row.lcc = comps.empty() ? 0 : comps.front().size();
    row.avg_short_path = diameter(net, true, false);
    row.watts_strogatz = watts_strogatz_cc(net);
    row.hmgd = harmonic_mean_geodesic(net);
    if (net.directed()) {
        row.power.push_back(power_law_columns(degree_histogram(net, Direction::in)));
        row.power.push_back(power_law_columns(degree_histogram(net, Direction::out)));
        row.power.push_back(power_law_columns(degree_histogram(net, Direction::total)));
    } else {
        row.power.push_back(power_law_columns(degree_histogram(net, Direction::total)));
    }
    row.avg_degree = avg_degree(net, Direction::total);
    return row;
}

// Human-readable report; the row carries the machine-readable values.
inline std::string network_info(const Network& net, const NetworkInfoOptions& opt = {}) {
    std::ostringstream out;
    StatsRow row = network_stats_row(net);
    out << "nodes: " << row.nodes << "\n";
    out << "edges: " << row.edges << "\n";
    out << "diameter: " << format_number(row.diameter) << "\n";
    out << "largest component: " << row.lcc << "\n";
    out << "average shortest path: " << format_number(row.avg_short_path) << "\n";
    out << "watts-strogatz clustering coefficient: " << format_number(row.watts_strogatz) << "\n";
    out << "harmonic mean geodesic distance: " << format_number(row.hmgd) << "\n";
    auto describe = [&](const char* label, const PowerLawColumns& c) {
        out << label << " power law: exponent " << format_number(c.exponent) << ", r^2 "
            << format_number(c.r_squared) << ", pscore " << format_number(c.pscore)
            << ", newman " << format_number(c.newman) << " +- "
            << format_number(c.newman_error) << "\n";
    };
    if (net.directed() && row.power.size() == 3) {
        describe("in-link", row.power[0]);
        describe("out-link", row.power[1]);
        describe("total-link", row.power[2]);
    } else if (!row.power.empty()) {
        describe("degree", row.power[0]);
    }
    out << "average degree: " << format_number(row.avg_degree) << "\n";
    if (opt.triangles) {
        auto t = triangles(net);
        out << "triangles: " << t.triangle_count << " (triples " << t.triple_count
            << ", newman clustering coefficient " << format_number(newman_cc(net)) << ")\n";
        for (const auto& label : t.labels) out << "  " << label << "\n";
    }
    if (opt.components || opt.wcc) {
        auto comps = components(net, ComponentKind::weak);
        out << (net.directed() ? "weakly connected components: " : "components: ") << comps.size()
            << "\n";
        for (const auto& comp : comps) {
            out << " ";
            for (const auto& v : comp) out << " " << v;
            out << "\n";
        }
    }
    if (opt.scc && net.directed()) {
        auto comps = components(net, ComponentKind::strong);
        out << "strongly connected components: " << comps.size() << "\n";
        for (const auto& comp : comps) {
            out << " ";
            for (const auto& v : comp) out << " " << v;
            out << "\n";
        }
    }
    if (opt.assortativity) {
        double r = 0.0;
        try {
            r = degree_assortativity_coefficient(net);
        } catch (const error&) {
        }
        out << "degree assortativity coefficient: " << format_number(r) << "\n";
    }
    if (opt.local_cc) {
        out << "local clustering coefficients:\n";
        for (const auto& [v, c] : local_clustering_coefficients(net))
            out << "  " << v << " " << format_number(c) << "\n";
    }
    if (opt.paths) {
        out << "shortest path matrix:\n";
        for (const auto& [u, dist] : shortest_paths(net)) {
            out << "  " << u << ":";
            for (const auto& [v, d] : dist)
                if (v != u) out << " " << v << "=" << d;
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace clair
