#include "entrank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace entrank {

double precision_at_k(const std::vector<PageId>& ranking,
                      const std::set<PageId>& relevant, std::size_t k) {
    if (k == 0) throw ContractError("precision@k requires k >= 1");
    std::size_t hits = 0;
    const std::size_t depth = std::min(k, ranking.size());
    for (std::size_t i = 0; i < depth; ++i) {
        hits += relevant.count(ranking[i]);
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

double r_precision(const std::vector<PageId>& ranking,
                   const std::set<PageId>& relevant) {
    if (relevant.empty()) throw ContractError("r-precision with no relevant entities");
    return precision_at_k(ranking, relevant, relevant.size());
}

double average_precision(const std::vector<PageId>& ranking,
                         const std::set<PageId>& relevant) {
    if (relevant.empty()) throw ContractError("average precision with no relevant entities");
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (relevant.count(ranking[i])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(relevant.size());
}

namespace {

// Regularized incomplete beta function via Lentz's continued fraction.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 200;
    constexpr double kEps = 3e-14;
    constexpr double kFpMin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double paired_t_test_pvalue(const std::vector<double>& run_a,
                            const std::vector<double>& run_b) {
    if (run_a.size() != run_b.size()) {
        throw ContractError("paired t-test requires matching topic sets");
    }
    const std::size_t n = run_a.size();
    if (n < 2) throw ContractError("paired t-test requires at least 2 topics");

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += run_a[i] - run_b[i];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = run_a[i] - run_b[i] - mean;
        var += d * d;
    }
    var /= static_cast<double>(n - 1);

    constexpr double kEps = 1e-12;
    if (var < kEps) {
        if (std::fabs(mean) < kEps) return 1.0;  // identical runs
        var = kEps;  // constant nonzero shift: degenerate, p collapses to ~0
    }
    const double t = mean / std::sqrt(var / static_cast<double>(n));
    const double df = static_cast<double>(n - 1);
    return reg_inc_beta(df / 2.0, 0.5, df / (df + t * t));
}

void write_run_file(std::ostream& out,
                    const std::map<std::string, std::vector<ScoredEntity>>& run,
                    const std::string& tag) {
    out << std::fixed << std::setprecision(6);
    for (const auto& [topic, entities] : run) {
        std::size_t rank = 1;
        for (const auto& e : entities) {
            out << topic << " Q0 " << e.id << " " << rank << " " << e.s << " "
                << tag << "\n";
            ++rank;
        }
    }
}

Run parse_run_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path);
    Run run;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string topic, q0, page, rank, score, tag;
        if (!(fields >> topic >> q0 >> page >> rank >> score >> tag) ||
            page.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": malformed run line");
        }
        run[topic].push_back(static_cast<PageId>(std::stoul(page)));
    }
    return run;
}

MetricReport evaluate_run(const Run& run, const Qrels& qrels,
                          const std::string& tag) {
    MetricReport report;
    report.tag = tag;
    double sum_p5 = 0.0, sum_p10 = 0.0, sum_rprec = 0.0, sum_ap = 0.0;
    for (const auto& [topic, relevant] : qrels) {
        if (relevant.empty()) {
            report.skipped.push_back(topic);
            continue;
        }
        MetricReport::Row row;
        row.topic = topic;
        auto it = run.find(topic);
        if (it == run.end()) {
            row.missing = true;  // scored zero by convention
        } else {
            const auto& ranking = it->second;
            row.p5 = precision_at_k(ranking, relevant, 5);
            row.p10 = precision_at_k(ranking, relevant, 10);
            row.rprec = r_precision(ranking, relevant);
            row.ap = average_precision(ranking, relevant);
        }
        sum_p5 += row.p5;
        sum_p10 += row.p10;
        sum_rprec += row.rprec;
        sum_ap += row.ap;
        report.rows.push_back(row);
    }
    if (!report.rows.empty()) {
        const double n = static_cast<double>(report.rows.size());
        report.mean_p5 = sum_p5 / n;
        report.mean_p10 = sum_p10 / n;
        report.mean_rprec = sum_rprec / n;
        report.map = sum_ap / n;
    }
    return report;
}

namespace {

std::string format_rows(const MetricReport& report, char sep, bool aligned) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    auto field = [&](const std::string& s, int width) {
        if (aligned) out << std::setw(width);
        out << s;
    };
    field("topic", 12); out << sep;
    field("P@5", 8); out << sep;
    field("P@10", 8); out << sep;
    field("R-prec", 8); out << sep;
    field("AP", 8); out << "\n";
    auto num = [&](double v) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(4) << v;
        return s.str();
    };
    for (const auto& row : report.rows) {
        field(row.topic + (row.missing ? "*" : ""), 12); out << sep;
        field(num(row.p5), 8); out << sep;
        field(num(row.p10), 8); out << sep;
        field(num(row.rprec), 8); out << sep;
        field(num(row.ap), 8); out << "\n";
    }
    field(report.tag.empty() ? "mean" : report.tag, 12); out << sep;
    field(num(report.mean_p5), 8); out << sep;
    field(num(report.mean_p10), 8); out << sep;
    field(num(report.mean_rprec), 8); out << sep;
    field(num(report.map), 8); out << "\n";
    if (aligned) {
        for (const auto& t : report.skipped) {
            out << "# skipped " << t << " (no relevant entities)\n";
        }
        bool any_missing = std::any_of(report.rows.begin(), report.rows.end(),
                                       [](const auto& r) { return r.missing; });
        if (any_missing) {
            out << "# * topic absent from run, scored 0\n";
        }
    }
    return out.str();
}

}  // namespace

std::string format_table(const MetricReport& report) {
    return format_rows(report, ' ', true);
}
std::string format_tsv(const MetricReport& report) {
    return format_rows(report, '\t', false);
}
std::string format_csv(const MetricReport& report) {
    return format_rows(report, ',', false);
}

double run_map(const Corpus& corpus, const TextIndex& pages_index,
               const TextIndex* cat_index, const std::vector<Topic>& topics,
               const Qrels& qrels, const RankSettings& settings) {
    Run run;
    for (const auto& topic : topics) {
        auto ranked = rank(corpus, pages_index, cat_index, topic, settings);
        auto& ids = run[topic.id];
        ids.reserve(ranked.size());
        for (const auto& e : ranked) ids.push_back(e.id);
    }
    return evaluate_run(run, qrels, "sweep").map;
}

std::vector<MSweepRow> sweep_m(const Corpus& corpus, const TextIndex& pages_index,
                               const TextIndex& cat_index,
                               const std::vector<Topic>& topics, const Qrels& qrels,
                               RankSettings settings, int m_lo, int m_hi) {
    if (!settings.strategy.is_lexical()) {
        throw ContractError("M sweep requires a lexical task-1 strategy");
    }
    if (m_lo < 1 || m_hi < m_lo) throw ContractError("invalid M range");
    std::vector<MSweepRow> rows;
    for (int m = m_lo; m <= m_hi; ++m) {
        settings.strategy.m = m;
        rows.push_back({m, run_map(corpus, pages_index, &cat_index, topics,
                                   qrels, settings)});
    }
    return rows;
}

std::vector<AlphaBetaRow> sweep_alpha_beta(const Corpus& corpus,
                                           const TextIndex& pages_index,
                                           const TextIndex* cat_index,
                                           const std::vector<Topic>& topics,
                                           const Qrels& qrels,
                                           RankSettings settings) {
    std::vector<AlphaBetaRow> rows;
    for (int ai = 0; ai <= 10; ++ai) {
        for (int bi = 0; bi + ai <= 10; ++bi) {
            settings.params.alpha = ai / 10.0;
            settings.params.beta = bi / 10.0;
            rows.push_back({settings.params.alpha, settings.params.beta,
                            run_map(corpus, pages_index, cat_index, topics,
                                    qrels, settings)});
        }
    }
    return rows;  // 11+10+...+1 = 66 cells
}

}  // namespace entrank
