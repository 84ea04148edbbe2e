#include "entrank/fusion.hpp"

#include <algorithm>

namespace entrank {

std::set<PageId> candidate_set(const std::vector<SearchHit>& hits,
                               const LinkTable& table, Task task,
                               const std::set<PageId>& examples) {
    std::set<PageId> candidates;
    for (const auto& hit : hits) {
        candidates.insert(static_cast<PageId>(hit.doc));
    }
    auto targets = link_targets(table);
    candidates.insert(targets.begin(), targets.end());
    if (task == Task::ListCompletion) {
        for (PageId e : examples) candidates.erase(e);
    }
    return candidates;
}

double z_score(const std::vector<SearchHit>& hits, PageId t) {
    for (const auto& hit : hits) {
        if (static_cast<PageId>(hit.doc) == t) return hit.score;
    }
    return 0.0;
}

std::map<PageId, double> normalize(const std::map<PageId, double>& raw) {
    double max = 0.0;
    for (const auto& [id, v] : raw) {
        if (v < 0.0) throw ContractError("normalize requires non-negative scores");
        max = std::max(max, v);
    }
    std::map<PageId, double> out;
    for (const auto& [id, v] : raw) {
        out[id] = max > 0.0 ? v / max : 0.0;
    }
    return out;
}

std::vector<ScoredEntity> rank(const Corpus& corpus, const TextIndex& pages_index,
                               const TextIndex* cat_index, const Topic& topic,
                               const RankSettings& settings) {
    settings.params.validate();
    if (!topic.valid_for(settings.strategy.task)) {
        throw ContractError("topic '" + topic.id + "' lacks the fields required by "
                            + (settings.strategy.task == Task::EntityRanking
                                   ? std::string("task 1 (target categories)")
                                   : std::string("task 2 (example entities)")));
    }

    auto hits = pages_index.search(topic.title, settings.top_k);
    auto table = extract_links(corpus, hits, settings.top_n);
    auto candidates =
        candidate_set(hits, table, settings.strategy.task, topic.example_ids());

    auto target_set = build_target_set(corpus, cat_index, topic, settings.strategy);
    if (target_set.cats.empty()) {
        throw ContractError("topic '" + topic.id +
                            "' yields an empty target category set");
    }

    std::map<PageId, double> raw_l, raw_c, raw_z;
    for (PageId t : candidates) {
        raw_l[t] = linkrank_score(table, t);
        raw_c[t] = category_score(corpus, target_set, settings.strategy, t);
        raw_z[t] = z_score(hits, t);
    }
    auto norm_l = normalize(raw_l);
    auto norm_c = normalize(raw_c);
    auto norm_z = normalize(raw_z);

    const double alpha = settings.params.alpha;
    const double beta = settings.params.beta;
    std::vector<ScoredEntity> ranked;
    ranked.reserve(candidates.size());
    for (PageId t : candidates) {
        ScoredEntity e;
        e.id = t;
        e.s_l = norm_l[t];
        e.s_c = norm_c[t];
        e.s_z = norm_z[t];
        e.s = alpha * e.s_l + beta * e.s_c + (1.0 - alpha - beta) * e.s_z;
        ranked.push_back(e);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const ScoredEntity& a, const ScoredEntity& b) {
                  if (a.s != b.s) return a.s > b.s;
                  return a.id < b.id;
              });
    if (ranked.size() > settings.max_results) {
        ranked.resize(settings.max_results);
    }
    return ranked;
}

}  // namespace entrank
