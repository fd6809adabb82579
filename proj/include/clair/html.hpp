#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace clair {

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// HTML4 named character references.
inline const std::unordered_map<std::string, std::uint32_t>& entity_table() {
    static const std::unordered_map<std::string, std::uint32_t> table = {
        {"quot", 34}, {"amp", 38}, {"lt", 60}, {"gt", 62}, {"apos", 39},
        {"nbsp", 160}, {"iexcl", 161}, {"cent", 162}, {"pound", 163}, {"curren", 164},
        {"yen", 165}, {"brvbar", 166}, {"sect", 167}, {"uml", 168}, {"copy", 169},
        {"ordf", 170}, {"laquo", 171}, {"not", 172}, {"shy", 173}, {"reg", 174},
        {"macr", 175}, {"deg", 176}, {"plusmn", 177}, {"sup2", 178}, {"sup3", 179},
        {"acute", 180}, {"micro", 181}, {"para", 182}, {"middot", 183}, {"cedil", 184},
        {"sup1", 185}, {"ordm", 186}, {"raquo", 187}, {"frac14", 188}, {"frac12", 189},
        {"frac34", 190}, {"iquest", 191}, {"Agrave", 192}, {"Aacute", 193}, {"Acirc", 194},
        {"Atilde", 195}, {"Auml", 196}, {"Aring", 197}, {"AElig", 198}, {"Ccedil", 199},
        {"Egrave", 200}, {"Eacute", 201}, {"Ecirc", 202}, {"Euml", 203}, {"Igrave", 204},
        {"Iacute", 205}, {"Icirc", 206}, {"Iuml", 207}, {"ETH", 208}, {"Ntilde", 209},
        {"Ograve", 210}, {"Oacute", 211}, {"Ocirc", 212}, {"Otilde", 213}, {"Ouml", 214},
        {"times", 215}, {"Oslash", 216}, {"Ugrave", 217}, {"Uacute", 218}, {"Ucirc", 219},
        {"Uuml", 220}, {"Yacute", 221}, {"THORN", 222}, {"szlig", 223}, {"agrave", 224},
        {"aacute", 225}, {"acirc", 226}, {"atilde", 227}, {"auml", 228}, {"aring", 229},
        {"aelig", 230}, {"ccedil", 231}, {"egrave", 232}, {"eacute", 233}, {"ecirc", 234},
        {"euml", 235}, {"igrave", 236}, {"iacute", 237}, {"icirc", 238}, {"iuml", 239},
        {"eth", 240}, {"ntilde", 241}, {"ograve", 242}, {"oacute", 243}, {"ocirc", 244},
        {"otilde", 245}, {"ouml", 246}, {"divide", 247}, {"oslash", 248}, {"ugrave", 249},
        {"uacute", 250}, {"ucirc", 251}, {"uuml", 252}, {"yacute", 253}, {"thorn", 254},
        {"yuml", 255}, {"OElig", 338}, {"oelig", 339}, {"Scaron", 352}, {"scaron", 353},
        {"Yuml", 376}, {"fnof", 402}, {"circ", 710}, {"tilde", 732}, {"Alpha", 913},
        {"Beta", 914}, {"Gamma", 915}, {"Delta", 916}, {"Epsilon", 917}, {"Zeta", 918},
        {"Eta", 919}, {"Theta", 920}, {"Iota", 921}, {"Kappa", 922}, {"Lambda", 923},
        {"Mu", 924}, {"Nu", 925}, {"Xi", 926}, {"Omicron", 927}, {"Pi", 928},
        {"Rho", 929}, {"Sigma", 931}, {"Tau", 932}, {"Upsilon", 933}, {"Phi", 934},
        {"Chi", 935}, {"Psi", 936}, {"Omega", 937}, {"alpha", 945}, {"beta", 946},
        {"gamma", 947}, {"delta", 948}, {"epsilon", 949}, {"zeta", 950}, {"eta", 951},
        {"theta", 952}, {"iota", 953}, {"kappa", 954}, {"lambda", 955}, {"mu", 956},
        {"nu", 957}, {"xi", 958}, {"omicron", 959}, {"pi", 960}, {"rho", 961},
        {"sigmaf", 962}, {"sigma", 963}, {"tau", 964}, {"upsilon", 965}, {"phi", 966},
        {"chi", 967}, {"psi", 968}, {"omega", 969}, {"thetasym", 977}, {"upsih", 978},
        {"piv", 982}, {"ensp", 8194}, {"emsp", 8195}, {"thinsp", 8201}, {"zwnj", 8204},
        {"zwj", 8205}, {"lrm", 8206}, {"rlm", 8207}, {"ndash", 8211}, {"mdash", 8212},
        {"lsquo", 8216}, {"rsquo", 8217}, {"sbquo", 8218}, {"ldquo", 8220}, {"rdquo", 8221},
        {"bdquo", 8222}, {"dagger", 8224}, {"Dagger", 8225}, {"bull", 8226}, {"hellip", 8230},
        {"permil", 8240}, {"prime", 8242}, {"Prime", 8243}, {"lsaquo", 8249}, {"rsaquo", 8250},
        {"oline", 8254}, {"frasl", 8260}, {"euro", 8364}, {"image", 8465}, {"weierp", 8472},
        {"real", 8476}, {"trade", 8482}, {"alefsym", 8501}, {"larr", 8592}, {"uarr", 8593},
        {"rarr", 8594}, {"darr", 8595}, {"harr", 8596}, {"crarr", 8629}, {"lArr", 8656},
        {"uArr", 8657}, {"rArr", 8658}, {"dArr", 8659}, {"hArr", 8660}, {"forall", 8704},
        {"part", 8706}, {"exist", 8707}, {"empty", 8709}, {"nabla", 8711}, {"isin", 8712},
        {"notin", 8713}, {"ni", 8715}, {"prod", 8719}, {"sum", 8721}, {"minus", 8722},
        {"lowast", 8727}, {"radic", 8730}, {"prop", 8733}, {"infin", 8734}, {"ang", 8736},
        {"and", 8743}, {"or", 8744}, {"cap", 8745}, {"cup", 8746}, {"int", 8747},
        {"there4", 8756}, {"sim", 8764}, {"cong", 8773}, {"asymp", 8776}, {"ne", 8800},
        {"equiv", 8801}, {"le", 8804}, {"ge", 8805}, {"sub", 8834}, {"sup", 8835},
        {"nsub", 8836}, {"sube", 8838}, {"supe", 8839}, {"oplus", 8853}, {"otimes", 8855},
        {"perp", 8869}, {"sdot", 8901}, {"lceil", 8968}, {"rceil", 8969}, {"lfloor", 8970},
        {"rfloor", 8971}, {"lang", 9001}, {"rang", 9002}, {"loz", 9674}, {"spades", 9824},
        {"clubs", 9827}, {"hearts", 9829}, {"diams", 9830},
    };
    return table;
}

inline bool block_level_tag(const std::string& name) {
    static const std::unordered_set<std::string> block = {
        "address", "article", "aside", "blockquote", "body", "br", "caption", "center",
        "dd", "dir", "div", "dl", "dt", "fieldset", "figure", "footer", "form", "frame",
        "h1", "h2", "h3", "h4", "h5", "h6", "head", "header", "hr", "html", "iframe",
        "isindex", "li", "main", "menu", "nav", "noframes", "noscript", "ol", "option",
        "p", "pre", "section", "table", "tbody", "td", "tfoot", "th", "thead", "title",
        "tr", "ul",
    };
    return block.count(name) > 0;
}

inline std::string lower_ascii(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Name of the tag starting at html[pos] == '<'; empty if not a tag intro.
inline std::string tag_name_at(const std::string& html, std::size_t pos) {
    std::size_t i = pos + 1;
    if (i < html.size() && html[i] == '/') ++i;
    std::size_t start = i;
    while (i < html.size() && (std::isalnum(static_cast<unsigned char>(html[i])) || html[i] == ':'))
        ++i;
    if (i == start) return "";
    return lower_ascii(html.substr(start, i - start));
}

// Index one past the closing '>' of the tag at pos, respecting quoted
// attribute values; html.size() when the tag never closes.
inline std::size_t skip_tag(const std::string& html, std::size_t pos) {
    char quote = 0;
    for (std::size_t i = pos + 1; i < html.size(); ++i) {
        char c = html[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            return i + 1;
        }
    }
    return html.size();
}

}  // namespace detail

// Decode HTML4 named and numeric character references. Unknown entities
// pass through literally.
inline std::string decode_entities(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        std::size_t semi = text.find(';', i + 1);
        if (semi == std::string::npos || semi == i + 1 || semi - i > 12) {
            out.push_back(text[i++]);
            continue;
        }
        std::string name = text.substr(i + 1, semi - i - 1);
        if (name[0] == '#') {
            std::uint32_t cp = 0;
            bool ok = name.size() > 1;
            if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
                for (std::size_t k = 2; k < name.size() && ok; ++k) {
                    char c = name[k];
                    if (!std::isxdigit(static_cast<unsigned char>(c))) { ok = false; break; }
                    cp = cp * 16 + static_cast<std::uint32_t>(
                        std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                                                                    : std::tolower(c) - 'a' + 10);
                }
            } else {
                for (std::size_t k = 1; k < name.size() && ok; ++k) {
                    if (!std::isdigit(static_cast<unsigned char>(name[k]))) { ok = false; break; }
                    cp = cp * 10 + static_cast<std::uint32_t>(name[k] - '0');
                }
            }
            if (ok && cp > 0 && cp <= 0x10FFFF) {
                detail::append_utf8(out, cp);
                i = semi + 1;
                continue;
            }
        } else {
            auto it = detail::entity_table().find(name);
            if (it != detail::entity_table().end()) {
                detail::append_utf8(out, it->second);
                i = semi + 1;
                continue;
            }
        }
        out.push_back(text[i++]);
    }
    return out;
}

// Strip markup from HTML: tags, comments, script/style bodies removed,
// entities decoded, block-level tag boundaries turned into whitespace.
// Malformed markup is handled best-effort (unclosed constructs run to the
// end of input); a '<' that does not introduce a tag is kept literally.
inline std::string strip_html(const std::string& html) {
    std::string out;
    out.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        char c = html[i];
        if (c != '<') {
            out.push_back(c);
            ++i;
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            std::size_t end = html.find("-->", i + 4);
            i = end == std::string::npos ? html.size() : end + 3;
            continue;
        }
        if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
            i = detail::skip_tag(html, i);
            continue;
        }
        std::string name = detail::tag_name_at(html, i);
        if (name.empty()) {
            out.push_back('<');  // literal, e.g. "a < b"
            ++i;
            continue;
        }
        bool closing = html[i + 1] == '/';
        i = detail::skip_tag(html, i);
        if (!closing && (name == "script" || name == "style")) {
            std::string close = "</" + name;
            std::size_t body_end = html.size();
            for (std::size_t p = i; p + close.size() <= html.size(); ++p) {
                if (detail::lower_ascii(html.substr(p, close.size())) == close) {
                    body_end = detail::skip_tag(html, p);
                    break;
                }
            }
            i = body_end;
        }
        if (detail::block_level_tag(name)) out.push_back('\n');
    }
    return decode_entities(out);
}

// Minimal RFC 3986-style reference resolution, sufficient for href
// handling in stored corpora. Fragments are stripped.
inline std::string resolve_url(const std::string& base, const std::string& ref_in) {
    std::string ref = ref_in;
    std::size_t frag = ref.find('#');
    if (frag != std::string::npos) ref = ref.substr(0, frag);
    if (ref.empty()) return "";

    auto scheme_end = [](const std::string& u) -> std::size_t {
        for (std::size_t i = 0; i < u.size(); ++i) {
            char c = u[i];
            if (c == ':') return i;
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.'))
                return std::string::npos;
        }
        return std::string::npos;
    };

    if (scheme_end(ref) != std::string::npos) return ref;  // already absolute

    std::size_t base_scheme = scheme_end(base);
    std::string scheme = base_scheme == std::string::npos ? "http" : base.substr(0, base_scheme);
    std::string rest = base_scheme == std::string::npos ? base : base.substr(base_scheme + 1);
    std::string authority, base_path;
    if (rest.compare(0, 2, "//") == 0) {
        std::size_t path_start = rest.find('/', 2);
        if (path_start == std::string::npos) {
            authority = rest.substr(2);
            base_path = "/";
        } else {
            authority = rest.substr(2, path_start - 2);
            base_path = rest.substr(path_start);
        }
    } else {
        base_path = rest.empty() ? "/" : rest;
    }
    std::size_t q = base_path.find('?');
    if (q != std::string::npos) base_path = base_path.substr(0, q);

    std::string merged;
    if (ref.compare(0, 2, "//") == 0) {
        return scheme + ":" + ref;
    } else if (ref[0] == '/') {
        merged = ref;
    } else {
        std::size_t slash = base_path.rfind('/');
        merged = (slash == std::string::npos ? "/" : base_path.substr(0, slash + 1)) + ref;
    }

    // Remove dot segments.
    std::vector<std::string> segs;
    std::size_t p = 0;
    bool trailing_slash = !merged.empty() && merged.back() == '/';
    while (p < merged.size()) {
        std::size_t next = merged.find('/', p);
        std::string seg = next == std::string::npos ? merged.substr(p) : merged.substr(p, next - p);
        p = next == std::string::npos ? merged.size() : next + 1;
        if (seg == "." || seg.empty()) continue;
        if (seg == "..") {
            if (!segs.empty()) segs.pop_back();
        } else {
            segs.push_back(seg);
        }
    }
    std::string path = "/";
    for (std::size_t s = 0; s < segs.size(); ++s) {
        path += segs[s];
        if (s + 1 < segs.size()) path += "/";
    }
    if (trailing_slash && !segs.empty()) path += "/";
    return scheme + "://" + authority + path;
}

// All anchor hrefs in order of appearance, resolved against base_url,
// fragments stripped, duplicates retained. Unparseable hrefs are skipped.
inline std::vector<std::string> extract_links(const std::string& html, const std::string& base_url) {
    std::vector<std::string> links;
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<') {
            ++i;
            continue;
        }
        std::string name = detail::tag_name_at(html, i);
        std::size_t end = detail::skip_tag(html, i);
        if (name == "a" && html[i + 1] != '/') {
            std::string tag = detail::lower_ascii(html.substr(i, end - i));
            std::size_t at = tag.find("href");
            if (at != std::string::npos) {
                std::size_t eq = tag.find('=', at + 4);
                if (eq != std::string::npos) {
                    std::size_t v = eq + 1;
                    while (v < tag.size() && std::isspace(static_cast<unsigned char>(tag[v]))) ++v;
                    std::string raw;
                    if (v < tag.size() && (tag[v] == '"' || tag[v] == '\'')) {
                        std::size_t close = html.find(tag[v], i + v + 1);
                        if (close != std::string::npos)
                            raw = html.substr(i + v + 1, close - (i + v + 1));
                    } else {
                        std::size_t e = v;
                        while (e < tag.size() && !std::isspace(static_cast<unsigned char>(tag[e])) &&
                               tag[e] != '>')
                            ++e;
                        raw = html.substr(i + v, e - v);
                    }
                    raw = decode_entities(raw);
                    if (!raw.empty()) {
                        std::string resolved = resolve_url(base_url, raw);
                        if (!resolved.empty()) links.push_back(resolved);
                    }
                }
            }
        }
        i = end;
    }
    return links;
}

}  // namespace clair
