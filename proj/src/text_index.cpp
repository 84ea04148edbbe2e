#include "entrank/text_index.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace entrank {

void TextIndex::add_document(DocId doc, const std::vector<std::string>& tokens) {
    doc_lengths_[doc] = static_cast<std::uint32_t>(tokens.size());
    std::map<std::string, std::uint32_t> tf;
    for (const auto& t : tokens) ++tf[t];
    for (const auto& [term, freq] : tf) {
        postings_[term].emplace_back(doc, freq);
    }
}

TextIndex TextIndex::build(const Corpus& corpus, IndexFlavor flavor) {
    TextIndex index;
    index.flavor_ = flavor;
    if (flavor == IndexFlavor::Pages) {
        for (const auto& [id, page] : corpus.pages()) {
            index.add_document(id, tokenize(page.title + " " + page.body));
        }
    } else {
        for (const auto& [id, name] : corpus.graph().names()) {
            std::string text = name;
            if (flavor == IndexFlavor::CatNamesPlusEntities) {
                for (PageId p : corpus.graph().pages_of(id)) {
                    text += " " + corpus.page(p).title;
                }
            }
            index.add_document(id, tokenize(text));
        }
    }
    std::uint64_t total = 0;
    for (const auto& [doc, len] : index.doc_lengths_) total += len;
    index.avg_doc_length_ = index.doc_lengths_.empty()
        ? 0.0
        : static_cast<double>(total) / static_cast<double>(index.doc_lengths_.size());
    return index;
}

std::size_t TextIndex::doc_length(DocId doc) const {
    auto it = doc_lengths_.find(doc);
    return it == doc_lengths_.end() ? 0 : it->second;
}

std::vector<SearchHit> TextIndex::search(std::string_view query,
                                         std::size_t k) const {
    std::vector<SearchHit> hits;
    if (k == 0 || doc_lengths_.empty()) return hits;
    auto terms = tokenize(query);
    if (terms.empty()) return hits;

    // Repeated query terms act as a weight multiplier.
    std::map<std::string, std::uint32_t> query_tf;
    for (const auto& t : terms) ++query_tf[t];

    const double n_docs = static_cast<double>(doc_lengths_.size());
    std::unordered_map<DocId, double> scores;
    for (const auto& [term, qtf] : query_tf) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        const auto& plist = it->second;
        const double df = static_cast<double>(plist.size());
        // Floored so that overlapping documents always score positive, even
        // when a term occurs in every document.
        const double idf =
            std::max(kBm25IdfFloor, std::log((n_docs - df + 0.5) / (df + 0.5)));
        for (const auto& [doc, tf] : plist) {
            const double dl = static_cast<double>(doc_lengths_.at(doc));
            const double norm =
                kBm25K1 * (1.0 - kBm25B + kBm25B * dl / avg_doc_length_);
            const double weight =
                idf * (tf * (kBm25K1 + 1.0)) / (tf + norm);
            scores[doc] += qtf * weight;
        }
    }

    for (const auto& [doc, score] : scores) {
        if (score > 0.0) hits.push_back({doc, score});
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc < b.doc;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

}  // namespace entrank
