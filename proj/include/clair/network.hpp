#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "clair/errors.hpp"

namespace clair {

using AttrValue = std::variant<double, std::string>;

// Attributed graph over string node ids. Directedness is fixed at
// construction. Parallel edge insertions collapse into one stored edge
// with an occurrence count. Nodes whose id is "EX" or starts with "EX"
// are classified external; statistics that speak of "documents" ignore
// them.
class Network {
  public:
    struct NodeData {
        std::map<std::string, AttrValue> attrs;
        std::optional<double> weight;
    };
    struct EdgeData {
        std::map<std::string, AttrValue> attrs;
        std::optional<double> weight;
        int count = 1;
    };

    explicit Network(bool directed = true) : directed_(directed) {}

    bool directed() const { return directed_; }

    static bool is_external_id(const std::string& id) { return id.compare(0, 2, "EX") == 0; }

    // -- nodes ------------------------------------------------------------

    void add_node(const std::string& id) { nodes_.try_emplace(id); }

    void add_node(const std::string& id, const std::string& attr_name, AttrValue value) {
        nodes_[id].attrs[attr_name] = std::move(value);
    }

    bool has_node(const std::string& id) const { return nodes_.count(id) > 0; }

    void remove_node(const std::string& id) {
        require_node(id);
        for (auto it = edges_.begin(); it != edges_.end();) {
            if (it->first.first == id || it->first.second == id)
                it = edges_.erase(it);
            else
                ++it;
        }
        for (auto& [v, s] : succ_) s.erase(id);
        for (auto& [v, s] : pred_) s.erase(id);
        succ_.erase(id);
        pred_.erase(id);
        nodes_.erase(id);
    }

    std::vector<std::string> nodes() const {
        std::vector<std::string> ids;
        ids.reserve(nodes_.size());
        for (const auto& [id, data] : nodes_) ids.push_back(id);
        return ids;
    }

    void set_node_weight(const std::string& id, double w) { require_node_mut(id).weight = w; }

    double get_node_weight(const std::string& id) const {
        const auto& data = require_node(id);
        if (!data.weight) throw not_found("node " + id + " has no weight");
        return *data.weight;
    }

    void set_node_attr(const std::string& id, const std::string& name, AttrValue value) {
        require_node_mut(id).attrs[name] = std::move(value);
    }

    std::optional<AttrValue> node_attr(const std::string& id, const std::string& name) const {
        const auto& data = require_node(id);
        auto it = data.attrs.find(name);
        if (it == data.attrs.end()) return std::nullopt;
        return it->second;
    }

    std::optional<double> node_attr_num(const std::string& id, const std::string& name) const {
        auto v = node_attr(id, name);
        if (!v || !std::holds_alternative<double>(*v)) return std::nullopt;
        return std::get<double>(*v);
    }

    // -- edges ------------------------------------------------------------

    // Missing endpoints are created. A repeated insertion bumps the
    // occurrence count of the stored simple edge.
    void add_edge(const std::string& u, const std::string& v, std::optional<double> weight = {}) {
        add_node(u);
        add_node(v);
        auto key = edge_key(u, v);
        auto [it, inserted] = edges_.try_emplace(key);
        if (!inserted) ++it->second.count;
        if (weight) it->second.weight = weight;
        succ_[u].insert(v);
        pred_[v].insert(u);
        if (!directed_) {
            succ_[v].insert(u);
            pred_[u].insert(v);
        }
    }

    bool has_edge(const std::string& u, const std::string& v) const {
        return edges_.count(edge_key(u, v)) > 0;
    }

    void remove_edge(const std::string& u, const std::string& v) {
        auto it = edges_.find(edge_key(u, v));
        if (it == edges_.end()) throw not_found("edge " + u + " -> " + v + " not present");
        edges_.erase(it);
        succ_[u].erase(v);
        pred_[v].erase(u);
        if (!directed_) {
            succ_[v].erase(u);
            pred_[u].erase(v);
        }
    }

    std::vector<std::pair<std::string, std::string>> edges() const {
        std::vector<std::pair<std::string, std::string>> out;
        out.reserve(edges_.size());
        for (const auto& [key, data] : edges_) out.push_back(key);
        return out;
    }

    void set_edge_weight(const std::string& u, const std::string& v, double w) {
        require_edge_mut(u, v).weight = w;
    }

    std::optional<double> edge_weight(const std::string& u, const std::string& v) const {
        return require_edge(u, v).weight;
    }

    double edge_weight_or(const std::string& u, const std::string& v, double fallback) const {
        auto it = edges_.find(edge_key(u, v));
        if (it == edges_.end() || !it->second.weight) return fallback;
        return *it->second.weight;
    }

    void set_edge_attr(const std::string& u, const std::string& v, const std::string& name,
                       AttrValue value) {
        require_edge_mut(u, v).attrs[name] = std::move(value);
    }

    std::optional<AttrValue> edge_attr(const std::string& u, const std::string& v,
                                       const std::string& name) const {
        const auto& data = require_edge(u, v);
        auto it = data.attrs.find(name);
        if (it == data.attrs.end()) return std::nullopt;
        return it->second;
    }

    std::optional<double> edge_attr_num(const std::string& u, const std::string& v,
                                        const std::string& name) const {
        auto a = edge_attr(u, v, name);
        if (!a || !std::holds_alternative<double>(*a)) return std::nullopt;
        return std::get<double>(*a);
    }

    int edge_count_attr(const std::string& u, const std::string& v) const {
        return require_edge(u, v).count;
    }

    // -- adjacency ----------------------------------------------------------

    static const std::set<std::string>& empty_set() {
        static const std::set<std::string> empty;
        return empty;
    }

    const std::set<std::string>& successors(const std::string& id) const {
        auto it = succ_.find(id);
        return it == succ_.end() ? empty_set() : it->second;
    }

    const std::set<std::string>& predecessors(const std::string& id) const {
        auto it = pred_.find(id);
        return it == pred_.end() ? empty_set() : it->second;
    }

    // Undirected-view neighbors.
    std::set<std::string> neighbors(const std::string& id) const {
        std::set<std::string> n = successors(id);
        const auto& p = predecessors(id);
        n.insert(p.begin(), p.end());
        return n;
    }

    std::size_t out_degree(const std::string& id) const { return successors(id).size(); }
    std::size_t in_degree(const std::string& id) const { return predecessors(id).size(); }

    std::size_t total_degree(const std::string& id) const {
        return directed_ ? in_degree(id) + out_degree(id) : out_degree(id);
    }

    // -- counts -------------------------------------------------------------

    std::size_t num_nodes() const { return nodes_.size(); }

    std::size_t num_documents() const {
        std::size_t n = 0;
        for (const auto& [id, data] : nodes_)
            if (!is_external_id(id)) ++n;
        return n;
    }

    std::size_t num_pairs() const {
        std::size_t n = num_documents();
        return n * (n - 1) / 2;
    }

    enum class LinkCount { internal, external, unique };

    // internal: edges between two non-external nodes, with multiplicity.
    // external: edges incident to an external node.
    // unique: internal edges with duplicates collapsed.
    std::size_t num_links(LinkCount mode = LinkCount::internal) const {
        std::size_t n = 0;
        for (const auto& [key, data] : edges_) {
            bool ext = is_external_id(key.first) || is_external_id(key.second);
            switch (mode) {
                case LinkCount::internal:
                    if (!ext) n += static_cast<std::size_t>(data.count);
                    break;
                case LinkCount::external:
                    if (ext) n += static_cast<std::size_t>(data.count);
                    break;
                case LinkCount::unique:
                    if (!ext) ++n;
                    break;
            }
        }
        return n;
    }

    std::size_t num_edges() const { return edges_.size(); }

    // -- paths ---------------------------------------------------------------

    // BFS shortest path following edge direction, inclusive of endpoints.
    // Neighbor expansion is in lexicographic id order, so results are
    // deterministic. Empty when v is unreachable from u.
    std::vector<std::string> find_path(const std::string& u, const std::string& v) const {
        require_node(u);
        require_node(v);
        if (u == v) return {u};
        std::map<std::string, std::string> parent;
        std::vector<std::string> frontier{u};
        parent[u] = u;
        while (!frontier.empty()) {
            std::vector<std::string> next;
            for (const auto& x : frontier) {
                for (const auto& y : successors(x)) {
                    if (parent.count(y)) continue;
                    parent[y] = x;
                    if (y == v) {
                        std::vector<std::string> path{v};
                        std::string cur = v;
                        while (cur != u) {
                            cur = parent[cur];
                            path.push_back(cur);
                        }
                        std::reverse(path.begin(), path.end());
                        return path;
                    }
                    next.push_back(y);
                }
            }
            frontier = std::move(next);
        }
        return {};
    }

    // Induced subgraph on the kept nodes.
    Network subset(const std::vector<std::string>& keep) const {
        Network sub(directed_);
        std::set<std::string> keep_set(keep.begin(), keep.end());
        for (const auto& [id, data] : nodes_) {
            if (!keep_set.count(id)) continue;
            sub.nodes_[id] = data;
        }
        for (const auto& [key, data] : edges_) {
            if (!keep_set.count(key.first) || !keep_set.count(key.second)) continue;
            sub.add_edge(key.first, key.second);
            sub.edges_[sub.edge_key(key.first, key.second)] = data;
        }
        return sub;
    }

    // Graph equality: directedness, node set, edge set, weights.
    bool graph_equal(const Network& other, double weight_tol = 1e-9) const {
        if (directed_ != other.directed_) return false;
        if (nodes_.size() != other.nodes_.size() || edges_.size() != other.edges_.size())
            return false;
        for (const auto& [id, data] : nodes_)
            if (!other.has_node(id)) return false;
        for (const auto& [key, data] : edges_) {
            auto it = other.edges_.find(key);
            if (it == other.edges_.end()) return false;
            double a = data.weight.value_or(0.0), b = it->second.weight.value_or(0.0);
            if (std::abs(a - b) > weight_tol) return false;
            if (data.weight.has_value() != it->second.weight.has_value()) return false;
        }
        return true;
    }

  private:
    std::pair<std::string, std::string> edge_key(const std::string& u, const std::string& v) const {
        if (!directed_ && v < u) return {v, u};
        return {u, v};
    }

    const NodeData& require_node(const std::string& id) const {
        auto it = nodes_.find(id);
        if (it == nodes_.end()) throw not_found("node " + id + " not present");
        return it->second;
    }

    NodeData& require_node_mut(const std::string& id) {
        auto it = nodes_.find(id);
        if (it == nodes_.end()) throw not_found("node " + id + " not present");
        return it->second;
    }

    const EdgeData& require_edge(const std::string& u, const std::string& v) const {
        auto it = edges_.find(edge_key(u, v));
        if (it == edges_.end()) throw not_found("edge " + u + " -> " + v + " not present");
        return it->second;
    }

    EdgeData& require_edge_mut(const std::string& u, const std::string& v) {
        auto it = edges_.find(edge_key(u, v));
        if (it == edges_.end()) throw not_found("edge " + u + " -> " + v + " not present");
        return it->second;
    }

    bool directed_;
    std::map<std::string, NodeData> nodes_;
    std::map<std::pair<std::string, std::string>, EdgeData> edges_;
    std::map<std::string, std::set<std::string>> succ_, pred_;
};

// Directed network from a links file ("src dst" per line). With ignore_EX
// the external pseudo-node and its edges are dropped.
inline Network hyperlink_network_from_lines(const std::vector<std::string>& lines,
                                            bool ignore_EX = false) {
    Network net(true);
    std::size_t lineno = 0;
    for (const auto& line : lines) {
        ++lineno;
        std::istringstream ss(line);
        std::string u, v;
        if (!(ss >> u)) continue;  // blank line
        if (!(ss >> v)) throw parse_error("links line needs two node ids", lineno);
        if (ignore_EX && (Network::is_external_id(u) || Network::is_external_id(v))) continue;
        net.add_edge(u, v);
    }
    return net;
}

inline Network hyperlink_network(const std::string& links_path, bool ignore_EX = false) {
    std::ifstream in(links_path);
    if (!in) throw io_error("cannot open links file: " + links_path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return hyperlink_network_from_lines(lines, ignore_EX);
}

// Subset-from-file variant: keeps the node ids listed one per line.
inline Network subset_network_from_file(const Network& net, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open subset file: " + path);
    std::vector<std::string> keep;
    std::string id;
    while (in >> id) keep.push_back(id);
    return net.subset(keep);
}

}  // namespace clair
