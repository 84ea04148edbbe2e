#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "entrank/fusion.hpp"
#include "entrank/topics.hpp"

namespace entrank {

/// |relevant ∩ top-k| / k. Divides by k even when fewer results were
/// returned (short lists are penalized).
double precision_at_k(const std::vector<PageId>& ranking,
                      const std::set<PageId>& relevant, std::size_t k);

/// Precision at rank R where R = |relevant|.
double r_precision(const std::vector<PageId>& ranking,
                   const std::set<PageId>& relevant);

/// Standard average precision over the judged relevant set; relevant
/// entities missing from the ranking contribute zero.
double average_precision(const std::vector<PageId>& ranking,
                         const std::set<PageId>& relevant);

/// Two-sided paired t-test p-value over per-topic scores. Zero-variance,
/// zero-mean differences (identical runs) return 1.0.
double paired_t_test_pvalue(const std::vector<double>& run_a,
                            const std::vector<double>& run_b);

/// Ordered result lists per topic id.
using Run = std::map<std::string, std::vector<PageId>>;

void write_run_file(std::ostream& out,
                    const std::map<std::string, std::vector<ScoredEntity>>& run,
                    const std::string& tag);
Run parse_run_file(const std::string& path);

struct MetricReport {
    struct Row {
        std::string topic;
        double p5 = 0.0, p10 = 0.0, rprec = 0.0, ap = 0.0;
        bool missing = false;  // topic judged but absent from the run
    };
    std::vector<Row> rows;
    double mean_p5 = 0.0, mean_p10 = 0.0, mean_rprec = 0.0, map = 0.0;
    std::string tag;
    std::vector<std::string> skipped;  // topics with no relevant entities
};

/// Scores a run against qrels over the topics that have at least one
/// relevant entity. A judged topic missing from the run scores zero and is
/// flagged.
MetricReport evaluate_run(const Run& run, const Qrels& qrels,
                          const std::string& tag);

std::string format_table(const MetricReport& report);
std::string format_tsv(const MetricReport& report);
std::string format_csv(const MetricReport& report);

struct MSweepRow {
    int m = 0;
    double map = 0.0;
};
struct AlphaBetaRow {
    double alpha = 0.0, beta = 0.0, map = 0.0;
};

/// MAP of a full multi-topic run under the given settings.
double run_map(const Corpus& corpus, const TextIndex& pages_index,
               const TextIndex* cat_index, const std::vector<Topic>& topics,
               const Qrels& qrels, const RankSettings& settings);

/// Varies M over [m_lo, m_hi] for a lexical task-1 strategy; one MAP per M.
std::vector<MSweepRow> sweep_m(const Corpus& corpus, const TextIndex& pages_index,
                               const TextIndex& cat_index,
                               const std::vector<Topic>& topics, const Qrels& qrels,
                               RankSettings settings, int m_lo = 1, int m_hi = 20);

/// Varies alpha from 0 to 1 and beta from 0 to 1-alpha in steps of 0.1;
/// exactly 66 cells.
std::vector<AlphaBetaRow> sweep_alpha_beta(const Corpus& corpus,
                                           const TextIndex& pages_index,
                                           const TextIndex* cat_index,
                                           const std::vector<Topic>& topics,
                                           const Qrels& qrels,
                                           RankSettings settings);

}  // namespace entrank
