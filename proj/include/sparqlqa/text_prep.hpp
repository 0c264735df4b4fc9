#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sparqlqa::textprep {

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One question token: `surface` is the text as it appeared after acronym
// fixing / entity linking, `norm` the lowercased form used for embedding
// lookup. Both are free of boundary punctuation.
struct Token {
    std::string surface;
    std::string norm;
    bool operator==(const Token&) const = default;
};

struct TokenSeq {
    std::vector<Token> tokens;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
    const Token& operator[](std::size_t i) const { return tokens[i]; }

    std::vector<std::string> surfaces() const;
    std::vector<std::string> norms() const;
    std::string joined_surfaces() const;
    bool operator==(const TokenSeq&) const = default;
};

// Split on whitespace, strip boundary punctuation (? ! . , ; : ' " and
// brackets) from each chunk, drop chunks that become empty. Interior
// apostrophes and hyphens survive.
TokenSeq tokenize(std::string_view text);

// Case-sensitive acronym -> expansion dictionary. Single-pass expansion, so
// no expansion may itself be a key.
class AcronymMap {
public:
    AcronymMap() = default;

    void add(const std::string& acronym, const std::string& expansion);
    static AcronymMap builtin_countries();
    // One `ACRONYM<TAB>Expansion` per line, '#' starts a comment line.
    static AcronymMap from_file(const std::string& path);
    // Builtin table extended/overridden by the file entries.
    static AcronymMap builtin_plus_file(const std::string& path);

    const std::map<std::string, std::string>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    void check_fixpoint() const;
    std::map<std::string, std::string> entries_;
};

// Replaces every token whose surface exactly matches a map key by the
// tokenized expansion. Single pass, no re-expansion.
TokenSeq normalize_acronyms(const TokenSeq& q, const AcronymMap& map);

struct GazetteerEntry {
    std::string alias;
    std::string canonical;
};

class Gazetteer {
public:
    Gazetteer() = default;
    explicit Gazetteer(double threshold) : threshold_(threshold) {}

    void add(const std::string& alias, const std::string& canonical);
    // One `alias<TAB>canonical label` per line, '#' starts a comment line.
    static Gazetteer from_file(const std::string& path, double threshold = 0.8);

    const std::vector<GazetteerEntry>& entries() const { return entries_; }
    double threshold() const { return threshold_; }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<GazetteerEntry> entries_;
    double threshold_ = 0.8;
};

// Blend of token-set Jaccard and normalized Levenshtein over the lowercased
// space-joined token strings, weighted half and half.
double linking_similarity(std::string_view alias, std::string_view span_text);

// Replaces each maximal token span matching a gazetteer alias at or above the
// threshold by the tokenized canonical label. Longest span first, left to
// right, non-overlapping.
TokenSeq link_entities(const TokenSeq& q, const Gazetteer& g);

}  // namespace sparqlqa::textprep
