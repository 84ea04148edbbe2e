#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "entrank/corpus.hpp"

namespace entrank {

/// What a document is. PAGES indexes full pages (title + body). The two
/// category flavors back the lexical category-similarity strategies: C-style
/// documents hold only the category name, CE-style documents hold the name
/// plus the titles of every attached page.
enum class IndexFlavor { Pages, CatNames, CatNamesPlusEntities };

/// Doc ids are PageIds for the Pages flavor and CategoryIds otherwise.
using DocId = std::uint32_t;

struct SearchHit {
    DocId doc = 0;
    double score = 0.0;
};

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;
inline constexpr double kBm25IdfFloor = 1e-6;

/// In-memory inverted index scored with Okapi BM25 (k1=1.2, b=0.75, IDF
/// floored at zero). Deterministic: ties broken by ascending doc id.
/// Immutable after build; concurrent searches are safe.
class TextIndex {
public:
    static TextIndex build(const Corpus& corpus, IndexFlavor flavor);

    /// Top-k hits by descending BM25 score. Documents with no query-term
    /// overlap (or a score floored to zero) are excluded. Empty or
    /// whitespace-only queries return an empty list.
    std::vector<SearchHit> search(std::string_view query, std::size_t k) const;

    IndexFlavor flavor() const { return flavor_; }
    std::size_t doc_count() const { return doc_lengths_.size(); }
    std::size_t doc_length(DocId doc) const;

private:
    IndexFlavor flavor_ = IndexFlavor::Pages;
    // term -> (doc, term frequency), docs ascending
    std::map<std::string, std::vector<std::pair<DocId, std::uint32_t>>> postings_;
    std::map<DocId, std::uint32_t> doc_lengths_;
    double avg_doc_length_ = 0.0;

    void add_document(DocId doc, const std::vector<std::string>& tokens);
};

}  // namespace entrank
