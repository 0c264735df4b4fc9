#include "sparqlqa/text_prep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace sparqlqa::textprep {

namespace {

const std::string kStripChars = "?!.,;:'\"()[]{}";

bool is_strippable(char c) { return kStripChars.find(c) != std::string::npos; }

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

std::vector<std::string> TokenSeq::surfaces() const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.surface);
    return out;
}

std::vector<std::string> TokenSeq::norms() const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.norm);
    return out;
}

std::string TokenSeq::joined_surfaces() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i].surface;
    }
    return out;
}

TokenSeq tokenize(std::string_view text) {
    TokenSeq seq;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;
        std::size_t lo = start, hi = i;
        while (lo < hi && is_strippable(text[lo])) ++lo;
        while (hi > lo && is_strippable(text[hi - 1])) --hi;
        if (lo == hi) continue;
        std::string surface(text.substr(lo, hi - lo));
        seq.tokens.push_back({surface, to_lower(surface)});
    }
    return seq;
}

void AcronymMap::add(const std::string& acronym, const std::string& expansion) {
    entries_[acronym] = expansion;
    check_fixpoint();
}

void AcronymMap::check_fixpoint() const {
    for (const auto& [k, v] : entries_) {
        (void)k;
        if (entries_.count(v))
            throw LoadError("text-prep: acronym expansion '" + v + "' is itself a key");
    }
}

AcronymMap AcronymMap::builtin_countries() {
    AcronymMap m;
    static const std::pair<const char*, const char*> kCountries[] = {
        {"UK", "United Kingdom"},     {"U.K", "United Kingdom"},
        {"USA", "United States"},     {"U.S.A", "United States"},
        {"US", "United States"},      {"U.S", "United States"},
        {"UAE", "United Arab Emirates"},
        {"USSR", "Soviet Union"},     {"EU", "European Union"},
        {"UN", "United Nations"},     {"NYC", "New York City"},
        {"PRC", "China"},             {"ROC", "Taiwan"},
        {"DPRK", "North Korea"},      {"ROK", "South Korea"},
        {"DRC", "Democratic Republic of the Congo"},
        {"CAR", "Central African Republic"},
        {"NZ", "New Zealand"},        {"PNG", "Papua New Guinea"},
        {"BiH", "Bosnia and Herzegovina"},
    };
    for (const auto& [k, v] : kCountries) m.entries_[k] = v;
    m.check_fixpoint();
    return m;
}

AcronymMap AcronymMap::from_file(const std::string& path) {
    AcronymMap m;
    std::ifstream in(path);
    if (!in) throw LoadError("text-prep: cannot open acronym file " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw LoadError("text-prep: acronym file " + path + " line " +
                            std::to_string(lineno) + ": missing tab separator");
        m.entries_[line.substr(0, tab)] = line.substr(tab + 1);
    }
    m.check_fixpoint();
    return m;
}

AcronymMap AcronymMap::builtin_plus_file(const std::string& path) {
    AcronymMap m = builtin_countries();
    AcronymMap f = from_file(path);
    for (const auto& [k, v] : f.entries()) m.entries_[k] = v;
    m.check_fixpoint();
    return m;
}

TokenSeq normalize_acronyms(const TokenSeq& q, const AcronymMap& map) {
    TokenSeq out;
    for (const auto& tok : q.tokens) {
        auto it = map.entries().find(tok.surface);
        if (it == map.entries().end()) {
            out.tokens.push_back(tok);
        } else {
            TokenSeq expansion = tokenize(it->second);
            out.tokens.insert(out.tokens.end(), expansion.tokens.begin(),
                              expansion.tokens.end());
        }
    }
    return out;
}

void Gazetteer::add(const std::string& alias, const std::string& canonical) {
    if (canonical.empty())
        throw LoadError("text-prep: gazetteer canonical label must be non-empty");
    entries_.push_back({alias, canonical});
}

Gazetteer Gazetteer::from_file(const std::string& path, double threshold) {
    Gazetteer g(threshold);
    std::ifstream in(path);
    if (!in) throw LoadError("text-prep: cannot open gazetteer file " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw LoadError("text-prep: gazetteer file " + path + " line " +
                            std::to_string(lineno) + ": missing tab separator");
        g.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return g;
}

double linking_similarity(std::string_view alias, std::string_view span_text) {
    TokenSeq a = tokenize(alias);
    TokenSeq s = tokenize(span_text);
    std::set<std::string> as, ss;
    for (const auto& t : a.tokens) as.insert(t.norm);
    for (const auto& t : s.tokens) ss.insert(t.norm);
    std::size_t inter = 0;
    for (const auto& w : as) inter += ss.count(w);
    std::size_t uni = as.size() + ss.size() - inter;
    double jaccard = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);

    std::string aj, sj;
    for (const auto& t : a.tokens) {
        if (!aj.empty()) aj += ' ';
        aj += t.norm;
    }
    for (const auto& t : s.tokens) {
        if (!sj.empty()) sj += ' ';
        sj += t.norm;
    }
    std::size_t maxlen = std::max(aj.size(), sj.size());
    double lev = maxlen == 0 ? 0.0
                             : static_cast<double>(levenshtein(aj, sj)) /
                                   static_cast<double>(maxlen);
    return 0.5 * jaccard + 0.5 * (1.0 - lev);
}

TokenSeq link_entities(const TokenSeq& q, const Gazetteer& g) {
    if (g.empty() || q.empty()) return q;
    std::size_t max_span = 1;
    for (const auto& e : g.entries())
        max_span = std::max(max_span, tokenize(e.alias).size());
    max_span = std::min(max_span, q.size());

    const std::size_t n = q.size();
    std::vector<bool> covered(n, false);
    // canonical replacement per span start; empty = no replacement
    struct Chosen {
        std::size_t start, len;
        std::string canonical;
    };
    std::vector<Chosen> chosen;

    for (std::size_t len = max_span; len >= 1; --len) {
        for (std::size_t start = 0; start + len <= n; ++start) {
            bool overlaps = false;
            for (std::size_t k = start; k < start + len; ++k)
                if (covered[k]) overlaps = true;
            if (overlaps) continue;
            std::string span_text;
            for (std::size_t k = start; k < start + len; ++k) {
                if (!span_text.empty()) span_text += ' ';
                span_text += q[k].surface;
            }
            double best = -1.0;
            const GazetteerEntry* best_entry = nullptr;
            for (const auto& e : g.entries()) {
                double sim = linking_similarity(e.alias, span_text);
                if (sim > best) {
                    best = sim;
                    best_entry = &e;
                }
            }
            if (best_entry && best >= g.threshold()) {
                for (std::size_t k = start; k < start + len; ++k) covered[k] = true;
                chosen.push_back({start, len, best_entry->canonical});
            }
        }
        if (len == 1) break;
    }

    std::sort(chosen.begin(), chosen.end(),
              [](const Chosen& a, const Chosen& b) { return a.start < b.start; });
    TokenSeq out;
    std::size_t i = 0, c = 0;
    while (i < n) {
        if (c < chosen.size() && chosen[c].start == i) {
            TokenSeq repl = tokenize(chosen[c].canonical);
            out.tokens.insert(out.tokens.end(), repl.tokens.begin(), repl.tokens.end());
            i += chosen[c].len;
            ++c;
        } else {
            out.tokens.push_back(q[i]);
            ++i;
        }
    }
    return out;
}

}  // namespace sparqlqa::textprep
