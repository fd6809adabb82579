#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "clair/errors.hpp"
#include "clair/network.hpp"
#include "clair/numeric.hpp"

namespace clair {

enum class GraphFormat { edgelist, pajek, graphml };

inline GraphFormat graph_format_from_name(const std::string& name) {
    if (name == "edgelist") return GraphFormat::edgelist;
    if (name == "pajek") return GraphFormat::pajek;
    if (name == "graphml") return GraphFormat::graphml;
    throw invalid_parameter("unknown graph format: " + name);
}

struct WriteOptions {
    bool weights = false;
    bool skip_duplicates = false;  // emit each stored edge once, ignoring counts
    bool transpose = false;
    std::string delim = " ";
    std::string name = "network";
};

struct ReadOptions {
    bool directed = true;       // edgelist only; pajek/graphml carry their own
    std::string delim;          // empty: any run of spaces/tabs; else literal separator
    bool weights = true;        // read a third column as weight when present
    std::string edge_property;  // also store weight under this edge attribute
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line, const std::string& delim) {
    std::vector<std::string> fields;
    if (delim.empty()) {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            if (i > start) fields.push_back(line.substr(start, i - start));
        }
        return fields;
    }
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t next = line.find(delim, pos);
        std::string piece =
            next == std::string::npos ? line.substr(pos) : line.substr(pos, next - pos);
        if (!piece.empty()) fields.push_back(piece);
        if (next == std::string::npos) break;
        pos = next + delim.size();
    }
    return fields;
}

inline bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(s, &used);
        return used == s.size();
    } catch (...) {
        return false;
    }
}

}  // namespace detail

// ---- Edgelist ------------------------------------------------------------

inline void write_edgelist(const Network& net, std::ostream& out, const WriteOptions& opt = {}) {
    for (const auto& [u0, v0] : net.edges()) {
        std::string u = u0, v = v0;
        if (opt.transpose) std::swap(u, v);
        int reps = opt.skip_duplicates ? 1 : net.edge_count_attr(u0, v0);
        for (int r = 0; r < reps; ++r) {
            out << u << opt.delim << v;
            if (opt.weights) {
                auto w = net.edge_weight(u0, v0);
                if (w) out << opt.delim << format_number(*w);
            }
            out << "\n";
        }
    }
}

inline Network read_edgelist(std::istream& in, const ReadOptions& opt = {}) {
    Network net(opt.directed);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto fields = detail::split_fields(line, opt.delim);
        if (fields.empty()) continue;
        if (fields.size() == 1) throw parse_error("edgelist line needs two node ids", lineno);
        std::optional<double> w;
        if (fields.size() >= 3 && opt.weights) {
            double value;
            if (!detail::parse_double(fields[2], value))
                throw parse_error("edgelist weight is not a number", lineno);
            w = value;
        }
        net.add_edge(fields[0], fields[1], w);
        if (w && !opt.edge_property.empty())
            net.set_edge_attr(fields[0], fields[1], opt.edge_property, *w);
    }
    return net;
}

// ---- Pajek -----------------------------------------------------------------

// *Vertices with 1-based indexes and quoted labels, then *Arcs (directed)
// or *Edges (undirected); optional third column is the weight.
inline void write_pajek(const Network& net, std::ostream& out, const WriteOptions& opt = {}) {
    auto ids = net.nodes();
    std::map<std::string, std::size_t> index;
    out << "*Vertices " << ids.size() << "\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        index[ids[i]] = i + 1;
        out << (i + 1) << " \"" << ids[i] << "\"\n";
    }
    out << (net.directed() ? "*Arcs" : "*Edges") << "\n";
    for (const auto& [u0, v0] : net.edges()) {
        std::string u = u0, v = v0;
        if (opt.transpose) std::swap(u, v);
        out << index[u] << " " << index[v];
        auto w = net.edge_weight(u0, v0);
        if (w) out << " " << format_number(*w);
        out << "\n";
    }
}

inline Network read_pajek(std::istream& in, const ReadOptions& opt = {}) {
    std::vector<std::string> labels;
    std::string line;
    std::size_t lineno = 0;
    enum class Section { none, vertices, arcs, edges } section = Section::none;
    bool directed = true;
    struct Arc {
        std::size_t u, v;
        std::optional<double> w;
        std::size_t line;
    };
    std::vector<Arc> arcs;
    std::size_t vertex_count = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '*') {
            std::istringstream ss(line);
            std::string word;
            ss >> word;
            for (auto& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            if (word == "*vertices") {
                section = Section::vertices;
                if (!(ss >> vertex_count)) throw parse_error("*Vertices needs a count", lineno);
            } else if (word == "*arcs") {
                section = Section::arcs;
                directed = true;
            } else if (word == "*edges") {
                section = Section::edges;
                directed = false;
            } else {
                section = Section::none;
            }
            continue;
        }
        if (section == Section::vertices) {
            std::istringstream ss(line);
            std::size_t idx;
            if (!(ss >> idx)) throw parse_error("vertex line needs an index", lineno);
            std::string rest;
            std::getline(ss, rest);
            std::size_t open = rest.find('"');
            std::string label;
            if (open != std::string::npos) {
                std::size_t close = rest.rfind('"');
                if (close == open) throw parse_error("unterminated vertex label", lineno);
                label = rest.substr(open + 1, close - open - 1);
            } else {
                std::istringstream rs(rest);
                rs >> label;
                if (label.empty()) label = std::to_string(idx);
            }
            if (labels.size() < idx) labels.resize(idx);
            labels[idx - 1] = label;
        } else if (section == Section::arcs || section == Section::edges) {
            std::istringstream ss(line);
            std::size_t u, v;
            if (!(ss >> u >> v)) throw parse_error("arc line needs two vertex indexes", lineno);
            double w;
            std::optional<double> weight;
            if (ss >> w) weight = w;
            arcs.push_back({u, v, weight, lineno});
        }
    }
    if (labels.size() < vertex_count) labels.resize(vertex_count);
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].empty()) labels[i] = std::to_string(i + 1);
    Network net(directed);
    for (const auto& label : labels) net.add_node(label);
    for (const auto& arc : arcs) {
        if (arc.u == 0 || arc.v == 0 || arc.u > labels.size() || arc.v > labels.size())
            throw parse_error("arc references an unknown vertex", arc.line);
        net.add_edge(labels[arc.u - 1], labels[arc.v - 1], arc.w);
        if (arc.w && !opt.edge_property.empty())
            net.set_edge_attr(labels[arc.u - 1], labels[arc.v - 1], opt.edge_property, *arc.w);
    }
    return net;
}

// ---- GraphML ----------------------------------------------------------------

// The subset of GraphML the toolkit exchanges: one graph element with an
// edgedefault, node elements with ids, edge elements with a d1 weight key.
inline void write_graphml(const Network& net, std::ostream& out, const WriteOptions& opt = {}) {
    auto escape = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            switch (c) {
                case '&': o += "&amp;"; break;
                case '<': o += "&lt;"; break;
                case '>': o += "&gt;"; break;
                case '"': o += "&quot;"; break;
                default: o.push_back(c);
            }
        }
        return o;
    };
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
           "  xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
           "  xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns\n"
           "                      http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
    out << "<key id=\"d1\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    out << "  <graph id=\"" << escape(opt.name) << "\" edgedefault="
        << (net.directed() ? "\"directed\"" : "\"undirected\"") << ">\n";
    for (const auto& id : net.nodes()) out << "    <node id=\"" << escape(id) << "\"/>\n";
    for (const auto& [u0, v0] : net.edges()) {
        std::string u = u0, v = v0;
        if (opt.transpose) std::swap(u, v);
        auto w = net.edge_weight(u0, v0);
        out << "    <edge source=\"" << escape(u) << "\" target=\"" << escape(v) << "\"";
        if (w) {
            out << ">\n      <data key=\"d1\">" << format_number(*w) << "</data>\n    </edge>\n";
        } else {
            out << "/>\n";
        }
    }
    out << "  </graph>\n</graphml>\n";
}

namespace detail {

inline std::string xml_unescape(const std::string& s) {
    std::string o;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '&') {
            if (s.compare(i, 5, "&amp;") == 0) { o += '&'; i += 5; continue; }
            if (s.compare(i, 4, "&lt;") == 0) { o += '<'; i += 4; continue; }
            if (s.compare(i, 4, "&gt;") == 0) { o += '>'; i += 4; continue; }
            if (s.compare(i, 6, "&quot;") == 0) { o += '"'; i += 6; continue; }
            if (s.compare(i, 6, "&apos;") == 0) { o += '\''; i += 6; continue; }
        }
        o.push_back(s[i++]);
    }
    return o;
}

inline std::optional<std::string> xml_attr(const std::string& tag, const std::string& name) {
    std::size_t at = 0;
    while ((at = tag.find(name, at)) != std::string::npos) {
        std::size_t eq = at + name.size();
        while (eq < tag.size() && std::isspace(static_cast<unsigned char>(tag[eq]))) ++eq;
        if (eq >= tag.size() || tag[eq] != '=') {
            at = eq;
            continue;
        }
        ++eq;
        while (eq < tag.size() && std::isspace(static_cast<unsigned char>(tag[eq]))) ++eq;
        if (eq >= tag.size() || (tag[eq] != '"' && tag[eq] != '\'')) return std::nullopt;
        char quote = tag[eq];
        std::size_t close = tag.find(quote, eq + 1);
        if (close == std::string::npos) return std::nullopt;
        return xml_unescape(tag.substr(eq + 1, close - eq - 1));
    }
    return std::nullopt;
}

}  // namespace detail

inline Network read_graphml(std::istream& in, const ReadOptions& opt = {}) {
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    bool directed = true;
    std::size_t gpos = content.find("<graph ");
    if (gpos != std::string::npos) {
        std::size_t gend = content.find('>', gpos);
        auto dflt = detail::xml_attr(content.substr(gpos, gend - gpos), "edgedefault");
        if (dflt) directed = (*dflt == "directed");
    }
    Network net(directed);
    std::size_t i = 0;
    std::size_t lineno = 1;
    while (i < content.size()) {
        if (content[i] == '\n') {
            ++lineno;
            ++i;
            continue;
        }
        if (content[i] != '<') {
            ++i;
            continue;
        }
        std::size_t end = content.find('>', i);
        if (end == std::string::npos) break;
        std::string tag = content.substr(i, end - i + 1);
        if (tag.compare(0, 6, "<node ") == 0 || tag.compare(0, 6, "<node\t") == 0) {
            auto id = detail::xml_attr(tag, "id");
            if (!id) throw parse_error("graphml node without id", lineno);
            net.add_node(*id);
        } else if (tag.compare(0, 6, "<edge ") == 0) {
            auto src = detail::xml_attr(tag, "source");
            auto dst = detail::xml_attr(tag, "target");
            if (!src || !dst) throw parse_error("graphml edge without endpoints", lineno);
            std::optional<double> weight;
            if (tag.back() == '>' && tag[tag.size() - 2] != '/') {
                std::size_t close = content.find("</edge>", end);
                std::string body =
                    close == std::string::npos ? "" : content.substr(end + 1, close - end - 1);
                std::size_t dpos = body.find("<data");
                if (dpos != std::string::npos) {
                    std::size_t dend = body.find('>', dpos);
                    std::size_t dclose = body.find("</data>", dend);
                    if (dend != std::string::npos && dclose != std::string::npos) {
                        double w;
                        if (detail::parse_double(body.substr(dend + 1, dclose - dend - 1), w))
                            weight = w;
                    }
                }
                if (close != std::string::npos) end = close + 6;
            }
            net.add_edge(*src, *dst, weight);
            if (weight && !opt.edge_property.empty())
                net.set_edge_attr(*src, *dst, opt.edge_property, *weight);
        }
        i = end + 1;
    }
    return net;
}

// ---- front door ---------------------------------------------------------------

inline Network read_network(const std::string& path, GraphFormat format,
                            const ReadOptions& opt = {}) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open network file: " + path);
    switch (format) {
        case GraphFormat::edgelist: return read_edgelist(in, opt);
        case GraphFormat::pajek: return read_pajek(in, opt);
        default: return read_graphml(in, opt);
    }
}

inline void write_network(const Network& net, const std::string& path, GraphFormat format,
                          const WriteOptions& opt = {}) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write network file: " + path);
    switch (format) {
        case GraphFormat::edgelist: write_edgelist(net, out, opt); break;
        case GraphFormat::pajek: write_pajek(net, out, opt); break;
        default: write_graphml(net, out, opt); break;
    }
}

}  // namespace clair
