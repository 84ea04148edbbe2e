// Shared fixtures and independent oracles. Oracles here recompute scores
// from raw data and must not call into the implementation paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "entrank/corpus.hpp"

namespace testsup {

inline std::string fixture(const std::string& rel) {
    return std::string(FIXTURE_DIR) + "/" + rel;
}

inline entrank::Corpus miniwiki() {
    return entrank::Corpus::load(fixture("miniwiki/pages.tsv"),
                                 fixture("miniwiki/categories.tsv"));
}

// Writes temp corpus files and loads them.
class TempCorpus {
public:
    TempCorpus(const std::string& pages, const std::string& cats) {
        namespace fs = std::filesystem;
        dir_ = fs::temp_directory_path() /
               ("entrank_test_" + std::to_string(counter_++));
        fs::create_directories(dir_);
        write(dir_ / "pages.tsv", pages);
        write(dir_ / "categories.tsv", cats);
    }
    ~TempCorpus() { std::filesystem::remove_all(dir_); }

    std::string pages_path() const { return (dir_ / "pages.tsv").string(); }
    std::string categories_path() const {
        return (dir_ / "categories.tsv").string();
    }
    entrank::Corpus load() const {
        return entrank::Corpus::load(pages_path(), categories_path());
    }

private:
    static void write(const std::filesystem::path& p, const std::string& s) {
        std::ofstream out(p);
        out << s;
    }
    static inline int counter_ = 0;
    std::filesystem::path dir_;
};

// Brute-force Okapi BM25 over raw token lists: direct formula evaluation,
// no inverted index. Same conventions as the engine (k1=1.2, b=0.75, IDF
// floored at 1e-6, repeated query terms multiply).
inline std::map<std::uint32_t, double> bm25_oracle(
    const std::map<std::uint32_t, std::vector<std::string>>& docs,
    const std::string& query) {
    const double k1 = 1.2, b = 0.75;
    auto qterms = entrank::tokenize(query);
    std::map<std::uint32_t, double> scores;
    if (docs.empty() || qterms.empty()) return scores;

    double avg = 0.0;
    for (const auto& [id, toks] : docs) avg += double(toks.size());
    avg /= double(docs.size());
    const double n = double(docs.size());

    for (const auto& [id, toks] : docs) {
        double score = 0.0;
        for (const auto& q : qterms) {
            double tf = double(std::count(toks.begin(), toks.end(), q));
            if (tf == 0.0) continue;
            double df = 0.0;
            for (const auto& [id2, toks2] : docs) {
                if (std::find(toks2.begin(), toks2.end(), q) != toks2.end()) {
                    df += 1.0;
                }
            }
            double idf = std::max(1e-6, std::log((n - df + 0.5) / (df + 0.5)));
            double dl = double(toks.size());
            score += idf * tf * (k1 + 1.0) /
                     (tf + k1 * (1.0 - b + b * dl / avg));
        }
        if (score > 0.0) scores[id] = score;
    }
    return scores;
}

// Document token lists as the index builder would see them.
inline std::map<std::uint32_t, std::vector<std::string>> page_docs(
    const entrank::Corpus& corpus) {
    std::map<std::uint32_t, std::vector<std::string>> docs;
    for (const auto& [id, page] : corpus.pages()) {
        docs[id] = entrank::tokenize(page.title + " " + page.body);
    }
    return docs;
}

inline std::map<std::uint32_t, std::vector<std::string>> cat_docs(
    const entrank::Corpus& corpus, bool with_entities) {
    std::map<std::uint32_t, std::vector<std::string>> docs;
    for (const auto& [id, name] : corpus.graph().names()) {
        std::string text = name;
        if (with_entities) {
            for (auto p : corpus.graph().pages_of(id)) {
                text += " " + corpus.page(p).title;
            }
        }
        docs[id] = entrank::tokenize(text);
    }
    return docs;
}

// Quadratic-time metric references.
inline double oracle_p_at_k(const std::vector<entrank::PageId>& ranking,
                            const std::set<entrank::PageId>& relevant,
                            std::size_t k) {
    double hits = 0;
    for (std::size_t i = 0; i < ranking.size() && i < k; ++i) {
        for (auto r : relevant) {
            if (r == ranking[i]) hits += 1;
        }
    }
    return hits / double(k);
}

inline double oracle_ap(const std::vector<entrank::PageId>& ranking,
                        const std::set<entrank::PageId>& relevant) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        bool rel = relevant.count(ranking[i]) != 0;
        if (!rel) continue;
        double hits_so_far = 0;
        for (std::size_t j = 0; j <= i; ++j) {
            if (relevant.count(ranking[j])) hits_so_far += 1;
        }
        sum += hits_so_far / double(i + 1);
    }
    return sum / double(relevant.size());
}

}  // namespace testsup
