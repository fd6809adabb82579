#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "clair/errors.hpp"
#include "clair/html.hpp"
#include "clair/porter.hpp"

namespace clair {

// Stem every alphabetic token; non-alphabetic runs (including newlines)
// are kept verbatim as separators, so line structure survives.
inline std::string stem_text(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t start = i;
            while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
            out += porter_stem(text.substr(start, i - start));
        } else {
            out.push_back(text[i++]);
        }
    }
    return out;
}

inline std::string stem_text_keep_newlines(const std::string& text) { return stem_text(text); }

// Lowercased tokens. Default mode keeps alphanumeric runs only; with
// keep_punctuation, runs of non-space punctuation come through as tokens.
inline std::vector<std::string> tokenize(const std::string& text, bool keep_punctuation = false) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    auto word_char = [](unsigned char c) { return std::isalnum(c) != 0; };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (word_char(c)) {
            std::string tok;
            while (i < text.size() && word_char(static_cast<unsigned char>(text[i])))
                tok.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i++]))));
            tokens.push_back(std::move(tok));
        } else if (std::isspace(c)) {
            ++i;
        } else if (keep_punctuation) {
            std::string tok;
            while (i < text.size() && !word_char(static_cast<unsigned char>(text[i])) &&
                   !std::isspace(static_cast<unsigned char>(text[i])))
                tok.push_back(text[i++]);
            tokens.push_back(std::move(tok));
        } else {
            ++i;
        }
    }
    return tokens;
}

inline std::vector<std::string> split_into_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

namespace detail {

inline bool known_abbreviation(const std::string& text, std::size_t dot) {
    static const std::vector<std::string> abbrevs = {
        "mr", "mrs", "ms", "dr", "prof", "rev", "hon", "st", "jr", "sr", "gen", "rep",
        "sen", "gov", "lt", "col", "capt", "sgt", "maj", "vs", "etc", "inc", "ltd", "co",
        "corp", "dept", "univ", "assn", "fig", "al", "eg", "ie", "no", "vol", "pp",
        "approx", "est", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept",
        "oct", "nov", "dec", "mon", "tue", "wed", "thu", "fri", "sat", "sun",
    };
    std::size_t start = dot;
    while (start > 0 && std::isalpha(static_cast<unsigned char>(text[start - 1]))) --start;
    std::size_t len = dot - start;
    if (len == 0) return false;
    if (len == 1 && std::isupper(static_cast<unsigned char>(text[start]))) return true;  // initials
    std::string word;
    for (std::size_t i = start; i < dot; ++i)
        word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
    for (const auto& a : abbrevs)
        if (word == a) return true;
    return false;
}

}  // namespace detail

// Rule-based segmentation: a run of terminal punctuation ends a sentence
// when followed by whitespace and an uppercase letter, a digit, or an
// opening quote. Common abbreviations and single initials do not split.
// Concatenating the result (modulo whitespace) restores the input.
inline std::vector<std::string> split_into_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::string cur;
    std::size_t i = 0;
    auto flush = [&]() {
        std::size_t a = cur.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) {
            cur.clear();
            return;
        }
        std::size_t b = cur.find_last_not_of(" \t\r\n");
        sentences.push_back(cur.substr(a, b - a + 1));
        cur.clear();
    };
    while (i < text.size()) {
        char c = text[i];
        cur.push_back(c);
        if (c == '.' || c == '?' || c == '!') {
            std::size_t j = i + 1;
            while (j < text.size() &&
                   (text[j] == '.' || text[j] == '?' || text[j] == '!' || text[j] == ')' ||
                    text[j] == '\'' || text[j] == '"')) {
                cur.push_back(text[j]);
                ++j;
            }
            if (c == '.' && detail::known_abbreviation(text, i)) {
                i = j;
                continue;
            }
            std::size_t k = j;
            while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
            bool boundary = k == text.size();
            if (!boundary && k > j) {
                unsigned char nc = static_cast<unsigned char>(text[k]);
                boundary = std::isupper(nc) || std::isdigit(nc) || nc == '"' || nc == '\'';
            }
            if (boundary) {
                while (j < k) cur.push_back(text[j++]);
                flush();
            }
            i = j;
            continue;
        }
        ++i;
    }
    flush();
    return sentences;
}

inline std::vector<std::vector<std::string>> ngrams(const std::vector<std::string>& tokens,
                                                    std::size_t n) {
    if (n == 0) throw invalid_parameter("ngrams: n must be at least 1");
    std::vector<std::vector<std::string>> windows;
    if (tokens.size() < n) return windows;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i)
        windows.emplace_back(tokens.begin() + static_cast<long>(i),
                             tokens.begin() + static_cast<long>(i + n));
    return windows;
}

// One text unit with html/text/stem layers. Deriving a layer never erases
// its source layer.
class Document {
  public:
    enum class Layer { html, text, stem };

    Document() = default;
    Document(std::string id, Layer layer, std::string content) : id_(std::move(id)) {
        set_layer(layer, std::move(content));
    }

    static Document from_file(const std::string& id, Layer layer, const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw io_error("cannot open document file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return Document(id, layer, ss.str());
    }

    const std::string& id() const { return id_; }
    void set_id(std::string id) { id_ = std::move(id); }

    const std::string& language() const { return language_; }
    void set_language(std::string lang) { language_ = std::move(lang); }

    const std::optional<std::string>& parent_id() const { return parent_id_; }
    void set_parent_id(std::string pid) { parent_id_ = std::move(pid); }

    const std::optional<std::string>& class_label() const { return class_label_; }
    void set_class_label(std::string label) { class_label_ = std::move(label); }

    bool has_layer(Layer layer) const { return slot(layer).has_value(); }

    const std::string& layer(Layer l) const {
        const auto& s = slot(l);
        if (!s) throw missing_layer("document " + id_ + ": layer not present");
        return *s;
    }

    void set_layer(Layer l, std::string content) { slot(l) = std::move(content); }

    // Derive the text layer from html (keeps the html layer).
    const std::string& strip_html() {
        if (!text_) text_ = clair::strip_html(layer(Layer::html));
        return *text_;
    }

    // Derive the stem layer from text (keeps the text layer).
    const std::string& stem() {
        if (!stem_) stem_ = stem_text(layer(Layer::text));
        return *stem_;
    }

    const std::string& get_html() const { return layer(Layer::html); }
    const std::string& get_text() const { return layer(Layer::text); }
    const std::string& get_stem() const { return layer(Layer::stem); }

    std::vector<std::string> split_sentences() const { return split_into_sentences(get_text()); }
    std::vector<std::string> split_lines() const { return split_into_lines(get_text()); }

    std::vector<std::string> words(Layer l = Layer::text, bool keep_punctuation = false) const {
        return tokenize(layer(l), keep_punctuation);
    }

    std::size_t count_words() const { return tokenize(get_text()).size(); }

    std::size_t sentence_count() const { return split_sentences().size(); }

    // Sentence features; indexes must address sentences of the text layer.
    bool set_sentence_feature(std::size_t index, const std::string& name, double value) {
        if (index >= sentence_count()) return false;
        sentence_features_[index][name] = value;
        return true;
    }

    std::optional<double> get_sentence_feature(std::size_t index, const std::string& name) const {
        auto it = sentence_features_.find(index);
        if (it == sentence_features_.end()) return std::nullopt;
        auto jt = it->second.find(name);
        if (jt == it->second.end()) return std::nullopt;
        return jt->second;
    }

    void remove_sentence_feature(std::size_t index, const std::string& name) {
        auto it = sentence_features_.find(index);
        if (it != sentence_features_.end()) it->second.erase(name);
    }

    void remove_sentence_features() { sentence_features_.clear(); }

    // Evaluate fn(sentence, index) for every sentence. With normalize, the
    // scores are min-max scaled to [0,1]; a constant feature maps to all 1.
    template <typename Fn>
    void compute_sentence_feature(const std::string& name, Fn&& fn, bool normalize = false) {
        auto sents = split_sentences();
        std::vector<double> vals(sents.size());
        for (std::size_t i = 0; i < sents.size(); ++i) vals[i] = fn(sents[i], i);
        if (normalize && !vals.empty()) {
            double lo = vals[0], hi = vals[0];
            for (double v : vals) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            for (double& v : vals) v = hi > lo ? (v - lo) / (hi - lo) : 1.0;
        }
        for (std::size_t i = 0; i < vals.size(); ++i) sentence_features_[i][name] = vals[i];
    }

    void set_sentence_score(std::size_t index, double score) { sentence_scores_[index] = score; }
    std::optional<double> sentence_score(std::size_t index) const {
        auto it = sentence_scores_.find(index);
        if (it == sentence_scores_.end()) return std::nullopt;
        return it->second;
    }

    void save(const std::string& path, Layer l) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw io_error("cannot write document file: " + path);
        out << layer(l);
    }

  private:
    const std::optional<std::string>& slot(Layer l) const {
        switch (l) {
            case Layer::html: return html_;
            case Layer::text: return text_;
            default: return stem_;
        }
    }
    std::optional<std::string>& slot(Layer l) {
        switch (l) {
            case Layer::html: return html_;
            case Layer::text: return text_;
            default: return stem_;
        }
    }

    std::string id_;
    std::optional<std::string> html_, text_, stem_;
    std::string language_ = "en";
    std::optional<std::string> parent_id_;
    std::optional<std::string> class_label_;
    std::map<std::size_t, std::map<std::string, double>> sentence_features_;
    std::map<std::size_t, double> sentence_scores_;
};

}  // namespace clair
