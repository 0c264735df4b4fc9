#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sparqlqa/numerics.hpp"
#include "sparqlqa/text_prep.hpp"

namespace sparqlqa::textprep {

// Word embeddings with a deterministic subword fallback: words missing from
// the table are embedded as the average of hashed character n-gram bucket
// vectors, so unseen words still get a stable representation.
class EmbeddingTable {
public:
    static constexpr std::size_t kDefaultBuckets = 1u << 16;
    static constexpr std::size_t kMinNgram = 3;
    static constexpr std::size_t kMaxNgram = 6;

    EmbeddingTable() = default;

    // Fresh trainable table over `words`, all vectors drawn from the seeded
    // initializer.
    static EmbeddingTable random(const std::vector<std::string>& words,
                                 std::size_t dimension, std::uint64_t seed,
                                 std::size_t buckets = kDefaultBuckets);

    // Pretrained text layout: first line `<count> <dim>`, then one
    // `word v1 .. vd` per line. Loaded tables are frozen; bucket vectors
    // still come from the seeded initializer.
    static EmbeddingTable load(const std::string& path, std::uint64_t seed,
                               std::size_t buckets = kDefaultBuckets);

    std::size_t dimension() const { return dim_; }
    std::size_t word_count() const { return words_.size(); }
    std::size_t bucket_count() const { return buckets_.rows(); }
    bool trainable() const { return trainable_; }
    void set_trainable(bool t) { trainable_ = t; }

    bool has_word(const std::string& word) const { return index_.count(word) != 0; }
    // Row index in vectors() for a known word, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t word_row(const std::string& word) const;
    const std::vector<std::string>& words() const { return words_; }

    num::Matrix& vectors() { return vectors_; }
    const num::Matrix& vectors() const { return vectors_; }
    num::Matrix& buckets() { return buckets_; }
    const num::Matrix& buckets() const { return buckets_; }

    // Bucket ids of the word's character n-grams; pure function of the word
    // text and the bucket count.
    std::vector<std::uint32_t> subword_buckets(std::string_view word) const;

    // Writes the embedding of `word` into out[0..dim); known words copy their
    // row, unknown words average their n-gram bucket vectors.
    void embed_word(const std::string& word, double* out) const;

    // One row per token, embedded by the token's norm.
    num::Matrix embed_sequence(const TokenSeq& q) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::string> words_;                       // insertion order
    std::unordered_map<std::string, std::size_t> index_;   // word -> row
    num::Matrix vectors_;                                  // words x dim
    num::Matrix buckets_;                                  // buckets x dim
    bool trainable_ = false;
};

}  // namespace sparqlqa::textprep
