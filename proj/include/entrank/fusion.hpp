#pragma once

#include <map>
#include <set>
#include <vector>

#include "entrank/catsim.hpp"
#include "entrank/corpus.hpp"
#include "entrank/linkrank.hpp"
#include "entrank/text_index.hpp"
#include "entrank/topics.hpp"

namespace entrank {

/// Weights of the global score S = alpha*S_L + beta*S_C + (1-alpha-beta)*S_Z.
/// Defaults are the tuned optimum (0.1, 0.8).
struct FusionParams {
    double alpha = 0.1;
    double beta = 0.8;

    void validate() const {
        if (alpha < 0.0 || beta < 0.0 || alpha + beta > 1.0 + 1e-12) {
            throw ContractError("fusion weights require alpha,beta >= 0 and "
                                "alpha+beta <= 1");
        }
    }
};

/// A ranked candidate with its normalized component scores.
struct ScoredEntity {
    PageId id = 0;
    double s_l = 0.0;
    double s_c = 0.0;
    double s_z = 0.0;
    double s = 0.0;
};

/// Candidates = retrieved pages plus link targets; for list completion the
/// example entities are removed (the task asks for the rest of the list).
std::set<PageId> candidate_set(const std::vector<SearchHit>& hits,
                               const LinkTable& table, Task task,
                               const std::set<PageId>& examples);

/// S_Z(t): the candidate's own retrieval score, zero if it was not retrieved.
double z_score(const std::vector<SearchHit>& hits, PageId t);

/// Max-normalization over the candidate set; an all-zero input stays
/// all-zero. Throws ContractError on negative input.
std::map<PageId, double> normalize(const std::map<PageId, double>& raw);

struct RankSettings {
    CatStrategy strategy;
    FusionParams params;
    std::size_t top_n = kDefaultTopN;  // pages mined for links
    std::size_t top_k = 100;           // retrieval depth
    std::size_t max_results = 100;
};

/// Full per-topic pipeline: retrieve, extract links, score the three
/// components over the candidate set, normalize, fuse, and sort by
/// descending global score (ties by ascending page id).
std::vector<ScoredEntity> rank(const Corpus& corpus, const TextIndex& pages_index,
                               const TextIndex* cat_index, const Topic& topic,
                               const RankSettings& settings);

}  // namespace entrank
