#include "entrank/linkrank.hpp"

namespace entrank {

LinkTable extract_links(const Corpus& corpus,
                        const std::vector<SearchHit>& hits, std::size_t n) {
    if (n == 0) throw ContractError("top-n must be at least 1");
    LinkTable table;
    const std::size_t limit = std::min(n, hits.size());
    for (std::size_t i = 0; i < limit; ++i) {
        LinkTable::Referrer ref;
        ref.page = static_cast<PageId>(hits[i].doc);
        ref.z = hits[i].score;
        for (const Link& link : corpus.page(ref.page).outlinks) {
            ++ref.counts[link.target];
        }
        if (!ref.counts.empty()) {
            table.referrers.push_back(std::move(ref));
        }
    }
    return table;
}

double linkrank_score(const LinkTable& table, PageId t) {
    double score = 0.0;
    for (const auto& ref : table.referrers) {
        auto it = ref.counts.find(t);
        if (it != ref.counts.end()) {
            score += ref.z * static_cast<double>(it->second);
        }
    }
    return score;
}

std::set<PageId> link_targets(const LinkTable& table) {
    std::set<PageId> targets;
    for (const auto& ref : table.referrers) {
        for (const auto& [target, count] : ref.counts) {
            targets.insert(target);
        }
    }
    return targets;
}

}  // namespace entrank
