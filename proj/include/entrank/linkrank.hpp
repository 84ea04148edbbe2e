#pragma once

#include <map>
#include <set>
#include <vector>

#include "entrank/corpus.hpp"
#include "entrank/text_index.hpp"

namespace entrank {

inline constexpr std::size_t kDefaultTopN = 20;

/// Per-referrer link counts extracted from the top-N retrieved pages.
/// Entries exist only for resolved targets with at least one link.
struct LinkTable {
    struct Referrer {
        PageId page = 0;
        double z = 0.0;  // raw retrieval score of the referring page
        std::map<PageId, int> counts;
    };
    std::vector<Referrer> referrers;
};

/// Builds the link table over the first min(n, |hits|) pages. `hits` must be
/// sorted by descending score. Throws ContractError when n is zero.
LinkTable extract_links(const Corpus& corpus,
                        const std::vector<SearchHit>& hits, std::size_t n);

/// S_L(t): sum over referring pages of z(p) times the number of links from p
/// to t; zero when t is never referenced.
double linkrank_score(const LinkTable& table, PageId t);

/// All link targets present in the table.
std::set<PageId> link_targets(const LinkTable& table);

}  // namespace entrank
