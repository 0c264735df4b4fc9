#include "sparqlqa/embedding.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sparqlqa::textprep {

namespace {

std::uint32_t fnv1a(std::string_view s) {
    std::uint32_t h = 2166136261u;
    for (char c : s) {
        h ^= static_cast<std::uint32_t>(static_cast<std::uint8_t>(c));
        h *= 16777619u;
    }
    return h;
}

void seed_matrix(num::Matrix& m, num::Rng& rng, double scale) {
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-scale, scale);
}

}  // namespace

EmbeddingTable EmbeddingTable::random(const std::vector<std::string>& words,
                                      std::size_t dimension, std::uint64_t seed,
                                      std::size_t buckets) {
    EmbeddingTable t;
    t.dim_ = dimension;
    for (const auto& w : words) {
        if (t.index_.count(w)) continue;
        t.index_[w] = t.words_.size();
        t.words_.push_back(w);
    }
    t.vectors_ = num::Matrix(t.words_.size(), dimension);
    t.buckets_ = num::Matrix(buckets, dimension);
    num::Rng rng(seed);
    double scale = std::sqrt(3.0 / static_cast<double>(dimension));
    seed_matrix(t.vectors_, rng, scale);
    seed_matrix(t.buckets_, rng, scale);
    t.trainable_ = true;
    return t;
}

EmbeddingTable EmbeddingTable::load(const std::string& path, std::uint64_t seed,
                                    std::size_t buckets) {
    std::ifstream in(path);
    if (!in) throw LoadError("text-prep: cannot open embedding file " + path);
    std::string line;
    if (!std::getline(in, line))
        throw LoadError("text-prep: embedding file " + path + " is empty");
    std::istringstream header(line);
    std::size_t count = 0, dim = 0;
    if (!(header >> count >> dim) || dim == 0)
        throw LoadError("text-prep: embedding file " + path + ": bad header line");

    EmbeddingTable t;
    t.dim_ = dim;
    t.vectors_ = num::Matrix(count, dim);
    std::size_t lineno = 1, row = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (row >= count)
            throw LoadError("text-prep: embedding file " + path +
                            ": more vectors than the header declares");
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        for (std::size_t d = 0; d < dim; ++d) {
            if (!(ls >> t.vectors_(row, d)))
                throw LoadError("text-prep: embedding file " + path + " line " +
                                std::to_string(lineno) + ": dimension mismatch");
        }
        double extra;
        if (ls >> extra)
            throw LoadError("text-prep: embedding file " + path + " line " +
                            std::to_string(lineno) + ": dimension mismatch");
        if (t.index_.count(word))
            throw LoadError("text-prep: embedding file " + path + " line " +
                            std::to_string(lineno) + ": duplicate word '" + word + "'");
        t.index_[word] = row;
        t.words_.push_back(word);
        ++row;
    }
    if (row != count)
        throw LoadError("text-prep: embedding file " + path + ": header declares " +
                        std::to_string(count) + " vectors, found " + std::to_string(row));
    t.buckets_ = num::Matrix(buckets, dim);
    num::Rng rng(seed);
    seed_matrix(t.buckets_, rng, std::sqrt(3.0 / static_cast<double>(dim)));
    t.trainable_ = false;
    return t;
}

std::size_t EmbeddingTable::word_row(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? npos : it->second;
}

std::vector<std::uint32_t> EmbeddingTable::subword_buckets(std::string_view word) const {
    std::string wrapped = "<" + std::string(word) + ">";
    std::vector<std::uint32_t> out;
    std::size_t nbuckets = buckets_.rows();
    for (std::size_t n = kMinNgram; n <= kMaxNgram; ++n) {
        if (wrapped.size() < n) break;
        for (std::size_t i = 0; i + n <= wrapped.size(); ++i)
            out.push_back(fnv1a(std::string_view(wrapped).substr(i, n)) %
                          static_cast<std::uint32_t>(nbuckets));
    }
    return out;
}

void EmbeddingTable::embed_word(const std::string& word, double* out) const {
    std::size_t row = word_row(word);
    if (row != npos) {
        const double* src = vectors_.row(row);
        for (std::size_t d = 0; d < dim_; ++d) out[d] = src[d];
        return;
    }
    auto ids = subword_buckets(word);
    for (std::size_t d = 0; d < dim_; ++d) out[d] = 0.0;
    for (std::uint32_t id : ids) {
        const double* src = buckets_.row(id);
        for (std::size_t d = 0; d < dim_; ++d) out[d] += src[d];
    }
    double inv = 1.0 / static_cast<double>(ids.size());
    for (std::size_t d = 0; d < dim_; ++d) out[d] *= inv;
}

num::Matrix EmbeddingTable::embed_sequence(const TokenSeq& q) const {
    num::Matrix m(q.size(), dim_);
    for (std::size_t i = 0; i < q.size(); ++i) embed_word(q[i].norm, m.row(i));
    return m;
}

}  // namespace sparqlqa::textprep
