#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clair/errors.hpp"
#include "clair/netstats.hpp"
#include "clair/network.hpp"
#include "clair/numeric.hpp"
#include "clair/text.hpp"

namespace clair {

// Sparse symmetric similarity map; each unordered pair stored once,
// values in [0,1], no self-pairs.
class CosineMatrix {
  public:
    using Key = std::pair<std::string, std::string>;

    static Key key(const std::string& a, const std::string& b) {
        return a <= b ? Key{a, b} : Key{b, a};
    }

    void set(const std::string& a, const std::string& b, double value) {
        if (a == b) throw invalid_parameter("cosine matrix holds no self-pairs");
        entries_[key(a, b)] = value;
    }

    std::optional<double> get(const std::string& a, const std::string& b) const {
        auto it = entries_.find(key(a, b));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<Key, double>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    std::set<std::string> ids() const {
        std::set<std::string> out;
        for (const auto& [k, v] : entries_) {
            out.insert(k.first);
            out.insert(k.second);
        }
        return out;
    }

  private:
    std::map<Key, double> entries_;
};

// tf-idf cosine with idf^2 in the dot product; unit idf when no index is
// supplied. Empty documents have similarity 0.
inline double cosine(const Document& a, const Document& b,
                     const std::map<std::string, double>* idf = nullptr,
                     Document::Layer layer = Document::Layer::text) {
    auto count = [&](const Document& d) {
        std::map<std::string, double> tf;
        for (const auto& tok : tokenize(d.layer(layer))) tf[tok] += 1.0;
        return tf;
    };
    auto idf_of = [&](const std::string& w) {
        if (!idf) return 1.0;
        auto it = idf->find(w);
        return it == idf->end() ? 0.0 : it->second;
    };
    auto tf_a = count(a), tf_b = count(b);
    double dot = 0, norm_a = 0, norm_b = 0;
    for (const auto& [w, f] : tf_a) {
        double g = idf_of(w);
        norm_a += f * g * f * g;
        auto it = tf_b.find(w);
        if (it != tf_b.end()) dot += f * it->second * g * g;
    }
    for (const auto& [w, f] : tf_b) {
        double g = idf_of(w);
        norm_b += f * g * f * g;
    }
    if (norm_a <= 0 || norm_b <= 0) return 0.0;
    double c = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
    if (c < 0) c = 0;
    if (c > 1) c = 1;
    return c;
}

inline CosineMatrix compute_cosine_matrix(const std::map<std::string, Document>& docs,
                                          const std::map<std::string, double>* idf = nullptr,
                                          Document::Layer layer = Document::Layer::text) {
    if (docs.empty()) throw invalid_parameter("compute_cosine_matrix needs at least one document");
    CosineMatrix m;
    for (auto it = docs.begin(); it != docs.end(); ++it) {
        auto jt = it;
        for (++jt; jt != docs.end(); ++jt)
            m.set(it->first, jt->first, cosine(it->second, jt->second, idf, layer));
    }
    return m;
}

// Entries at or above the threshold, values preserved.
inline CosineMatrix binary_cosine(const CosineMatrix& matrix, double threshold) {
    CosineMatrix out;
    for (const auto& [k, v] : matrix.entries())
        if (v >= threshold) out.set(k.first, k.second, v);
    return out;
}

struct LargestCosine {
    std::string id_a, id_b;
    double value;
};

// Maximal entry; ties break to the lexicographically smallest pair.
inline LargestCosine largest_cosine(const CosineMatrix& matrix) {
    if (matrix.empty()) throw invalid_parameter("largest_cosine: empty matrix");
    const CosineMatrix::Key* best = nullptr;
    double best_value = 0;
    for (const auto& [k, v] : matrix.entries()) {
        if (!best || v > best_value) {
            best = &k;
            best_value = v;
        }
    }
    return {best->first, best->second, best_value};
}

// Undirected network with an edge per positive pair (every pair when
// include_zeros); the similarity is stored as the edge weight and under
// the transition attribute LexRank reads.
inline Network cosine_network(const CosineMatrix& matrix, bool include_zeros = false,
                              const std::string& property = "lexrank_transition") {
    Network net(false);
    if (include_zeros)
        for (const auto& id : matrix.ids()) net.add_node(id);
    for (const auto& [k, v] : matrix.entries()) {
        if (v <= 0 && !include_zeros) continue;
        net.add_edge(k.first, k.second, v);
        net.set_edge_attr(k.first, k.second, property, v);
    }
    return net;
}

// One single-sentence Document per sentence of every input document;
// sentence ids are "<doc-id>:<sentence-index>".
inline std::map<std::string, Document> sentence_cluster(const std::map<std::string, Document>& docs) {
    std::map<std::string, Document> out;
    for (const auto& [id, doc] : docs) {
        auto sents = doc.split_sentences();
        for (std::size_t i = 0; i < sents.size(); ++i) {
            Document sd(id + ":" + std::to_string(i), Document::Layer::text, sents[i]);
            sd.set_parent_id(id);
            sd.stem();
            out.emplace(sd.id(), std::move(sd));
        }
    }
    return out;
}

inline Network sentence_network(const std::map<std::string, Document>& docs,
                                std::optional<double> threshold = std::nullopt,
                                const std::map<std::string, double>* idf = nullptr,
                                Document::Layer layer = Document::Layer::text) {
    auto sentences = sentence_cluster(docs);
    if (sentences.empty()) return Network(false);
    if (sentences.size() == 1) {
        Network net(false);
        net.add_node(sentences.begin()->first);
        return net;
    }
    auto matrix = compute_cosine_matrix(sentences, idf, layer);
    if (threshold) matrix = binary_cosine(matrix, *threshold);
    Network net = cosine_network(matrix);
    for (const auto& [id, doc] : sentences) net.add_node(id);
    return net;
}

// Word co-occurrence network: one node per distinct token, and for every
// sentence each pair of distinct words gains the product of their
// within-sentence counts (a repeated word never links to itself).
inline Network lexical_network(const std::map<std::string, Document>& docs,
                               Document::Layer layer = Document::Layer::text) {
    Network net(false);
    std::map<std::pair<std::string, std::string>, double> weight;
    for (const auto& [id, doc] : docs) {
        for (const auto& sent : split_into_sentences(doc.layer(layer))) {
            std::map<std::string, double> counts;
            for (const auto& tok : tokenize(sent)) counts[tok] += 1.0;
            for (const auto& [tok, c] : counts) net.add_node(tok);
            for (auto it = counts.begin(); it != counts.end(); ++it) {
                auto jt = it;
                for (++jt; jt != counts.end(); ++jt)
                    weight[{it->first, jt->first}] += it->second * jt->second;
            }
        }
    }
    for (const auto& [pair, w] : weight) net.add_edge(pair.first, pair.second, w);
    return net;
}

// Directed adjacency of (n-1)-grams: each n-gram contributes an edge from
// its first n-1 tokens to its last n-1 tokens, weighted by occurrence
// count. Multi-token node labels are joined with '_'.
inline Network ngram_network(const Document& doc, std::size_t n,
                             Document::Layer layer = Document::Layer::text) {
    if (n < 2) throw invalid_parameter("ngram_network needs n >= 2");
    Network net(true);
    auto tokens = tokenize(doc.layer(layer));
    auto join = [](const std::vector<std::string>& toks, std::size_t from, std::size_t len) {
        std::string out;
        for (std::size_t i = 0; i < len; ++i) {
            if (i) out += "_";
            out += toks[from + i];
        }
        return out;
    };
    std::map<std::pair<std::string, std::string>, double> weight;
    if (tokens.size() >= n)
        for (std::size_t i = 0; i + n <= tokens.size(); ++i)
            weight[{join(tokens, i, n - 1), join(tokens, i + 1, n - 1)}] += 1.0;
    for (const auto& [pair, w] : weight) net.add_edge(pair.first, pair.second, w);
    return net;
}

// ---- .cos files -------------------------------------------------------------

// "idA idB value" per line; the reader accepts any whitespace.
inline void write_cos(const CosineMatrix& matrix, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write cos file: " + path);
    for (const auto& [k, v] : matrix.entries())
        out << k.first << " " << k.second << " " << format_number(v) << "\n";
}

inline CosineMatrix load_cos(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open cos file: " + path);
    CosineMatrix matrix;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string a, b;
        double v;
        if (!(ss >> a)) continue;
        if (!(ss >> b >> v)) throw parse_error("cos line needs two ids and a value", lineno);
        matrix.set(a, b, v);
    }
    return matrix;
}

// ---- cosine-vs-link statistics over a matrix ----------------------------------

inline std::pair<double, double> average_cosines(const Network& net, const CosineMatrix& matrix) {
    auto id_set = matrix.ids();
    std::vector<std::string> ids(id_set.begin(), id_set.end());
    auto lookup = [&](const std::string& u, const std::string& v) { return matrix.get(u, v); };
    return average_cosines_impl(net, lookup, ids);
}

// Linked and not-linked cosine histograms over bins 0..100.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> cosine_histograms(
    const Network& net, const CosineMatrix& matrix) {
    std::vector<std::size_t> linked(101, 0), notlinked(101, 0);
    auto id_set = matrix.ids();
    for (const auto& u : id_set) {
        for (const auto& v : id_set) {
            if (u == v) continue;
            auto value = matrix.get(u, v);
            if (!value) continue;
            bool is_linked = net.has_node(u) && net.has_node(v) && net.has_edge(u, v);
            (is_linked ? linked : notlinked)[cosine_bin(*value)] += 1;
        }
    }
    return {linked, notlinked};
}

}  // namespace clair
