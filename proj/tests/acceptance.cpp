// Acceptance suite: one pass/fail line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "entrank/catsim.hpp"
#include "entrank/evaluation.hpp"
#include "entrank/fusion.hpp"
#include "entrank/linkrank.hpp"
#include "entrank/topics.hpp"
#include "test_support.hpp"

using namespace entrank;

namespace {

int g_failures = 0;

void criterion(const std::string& label, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
        ok = body();
    } catch (const std::exception& e) {
        detail = std::string(" (") + e.what() + ")";
    }
    std::cout << (ok ? "PASS" : "FAIL") << ": " << label << detail << "\n";
    if (!ok) ++g_failures;
}

bool close(double a, double b, double tol = 1e-9) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

Topic euro_topic() {
    return parse_topic_file(testsup::fixture("miniwiki/topics/euro.xml"));
}

std::vector<PageId> ids_of(const std::vector<ScoredEntity>& ranked) {
    std::vector<PageId> ids;
    for (const auto& e : ranked) ids.push_back(e.id);
    return ids;
}

// Candidate ordering by one raw component, descending, ties by ascending id.
std::vector<PageId> sort_by(const std::map<PageId, double>& raw) {
    std::vector<std::pair<double, PageId>> rows;
    for (auto& [id, v] : raw) rows.push_back({v, id});
    std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<PageId> ids;
    for (auto& [v, id] : rows) ids.push_back(id);
    return ids;
}

struct RawComponents {
    std::vector<SearchHit> hits;
    std::set<PageId> candidates;
    std::map<PageId, double> s_l, s_c, s_z;
};

// Naive recomputation of the raw component scores, sharing no
// code with the modules under test.
RawComponents naive_components(const Corpus& corpus, const Topic& topic,
                               std::size_t top_n, std::size_t top_k) {
    RawComponents out;
    auto scores = testsup::bm25_oracle(testsup::page_docs(corpus), topic.title);
    std::vector<std::pair<double, PageId>> hit_list;
    for (auto& [id, s] : scores) hit_list.push_back({s, id});
    std::sort(hit_list.begin(), hit_list.end(), [](auto& a, auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    if (hit_list.size() > top_k) hit_list.resize(top_k);
    for (auto& [s, id] : hit_list) out.hits.push_back({id, s});

    const std::size_t n = std::min(top_n, hit_list.size());
    for (auto& [s, id] : hit_list) out.candidates.insert(id);
    for (std::size_t i = 0; i < n; ++i) {
        for (const Link& l : corpus.page(hit_list[i].second).outlinks) {
            out.candidates.insert(l.target);
        }
    }
    for (auto& [e, name] : topic.examples) out.candidates.erase(e);

    std::set<CategoryId> target;
    for (auto& [e, name] : topic.examples) {
        auto& cats = corpus.categories_of(e);
        target.insert(cats.begin(), cats.end());
    }
    for (PageId t : out.candidates) {
        double sl = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int count = 0;
            for (const Link& l : corpus.page(hit_list[i].second).outlinks) {
                if (l.target == t) ++count;
            }
            sl += hit_list[i].first * count;
        }
        out.s_l[t] = sl;
        std::size_t common = 0;
        for (CategoryId c : corpus.categories_of(t)) common += target.count(c);
        out.s_c[t] = double(common) / double(target.size());
        out.s_z[t] = scores.count(t) ? scores[t] : 0.0;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main() {
    const Corpus corpus = testsup::miniwiki();
    const TextIndex pages = TextIndex::build(corpus, IndexFlavor::Pages);
    const TextIndex cats = TextIndex::build(corpus, IndexFlavor::CatNames);
    const Topic topic = euro_topic();
    const Qrels qrels = parse_qrels(testsup::fixture("miniwiki/qrels.txt"));
    const std::vector<Topic> topics = {topic};

    criterion("1. component scores match naive recomputation on the fixture", [&] {
        auto start = std::chrono::steady_clock::now();

        // Overlap ratio spot values.
        if (!close(overlap_ratio({1, 3}, {1, 2}), 0.5)) return false;
        if (!close(overlap_ratio({2, 5}, {2, 5}), 1.0)) return false;

        RankSettings settings;
        settings.strategy = CatStrategy::parse(Task::ListCompletion, "base");
        settings.params = {0.1, 0.8};
        auto ranked = rank(corpus, pages, nullptr, topic, settings);
        auto naive = naive_components(corpus, topic, settings.top_n, settings.top_k);

        // Raw link, category, and retrieval scores.
        LinkTable table = extract_links(
            corpus, pages.search(topic.title, settings.top_k), settings.top_n);
        auto target = build_target_set_task2(corpus, topic, settings.strategy);
        for (PageId t : naive.candidates) {
            if (!close(linkrank_score(table, t), naive.s_l[t])) return false;
            if (!close(category_score(corpus, target, settings.strategy, t),
                       naive.s_c[t])) return false;
            if (!close(z_score(pages.search(topic.title, settings.top_k), t),
                       naive.s_z[t])) return false;
        }

        // Global score after max-normalization.
        auto max_of = [](const std::map<PageId, double>& m) {
            double best = 0.0;
            for (auto& [id, v] : m) best = std::max(best, v);
            return best;
        };
        const double ml = max_of(naive.s_l), mc = max_of(naive.s_c),
                     mz = max_of(naive.s_z);
        if (ranked.size() != naive.candidates.size()) return false;
        for (const auto& e : ranked) {
            double s = 0.1 * (ml > 0 ? naive.s_l[e.id] / ml : 0.0) +
                       0.8 * (mc > 0 ? naive.s_c[e.id] / mc : 0.0) +
                       0.1 * (mz > 0 ? naive.s_z[e.id] / mz : 0.0);
            if (!close(e.s, s)) return false;
        }
        auto elapsed = std::chrono::steady_clock::now() - start;
        return elapsed < std::chrono::seconds(1);
    });

    criterion("2. BM25 scores match direct formula evaluation (k1=1.2, b=0.75)", [&] {
        auto page_docs = testsup::page_docs(corpus);
        for (const char* q : {"European countries where I can pay with Euros",
                              "euro currency", "capital city", "republic"}) {
            auto expected = testsup::bm25_oracle(page_docs, q);
            auto hits = pages.search(q, 100);
            if (hits.size() != expected.size()) return false;
            for (const auto& h : hits) {
                if (!close(h.score, expected.at(h.doc))) return false;
            }
        }
        auto cat_expected =
            testsup::bm25_oracle(testsup::cat_docs(corpus, false), "countries");
        auto cat_hits = cats.search("countries", 100);
        if (cat_hits.size() != cat_expected.size()) return false;
        for (const auto& h : cat_hits) {
            if (!close(h.score, cat_expected.at(h.doc))) return false;
        }
        return true;
    });

    criterion("3. P@k / R-precision / AP match a quadratic reference on 200 random rankings", [&] {
        std::mt19937 rng(8675309);
        for (int iter = 0; iter < 200; ++iter) {
            const std::size_t len = 1 + rng() % 50;
            std::vector<PageId> ranking;
            std::set<PageId> seen;
            while (ranking.size() < len) {
                PageId id = rng() % 200;
                if (seen.insert(id).second) ranking.push_back(id);
            }
            std::set<PageId> relevant;
            while (relevant.size() < 1 + rng() % 10) relevant.insert(rng() % 200);
            for (std::size_t k : {1, 5, 10}) {
                if (!close(precision_at_k(ranking, relevant, k),
                           testsup::oracle_p_at_k(ranking, relevant, k)))
                    return false;
            }
            if (!close(average_precision(ranking, relevant),
                       testsup::oracle_ap(ranking, relevant)))
                return false;
            if (!close(r_precision(ranking, relevant),
                       testsup::oracle_p_at_k(ranking, relevant, relevant.size())))
                return false;
        }
        return true;
    });

    criterion("4. boundary weights reduce to the single-component rankings", [&] {
        RankSettings settings;
        settings.strategy = CatStrategy::parse(Task::ListCompletion, "base");
        auto naive = naive_components(corpus, topic, settings.top_n, settings.top_k);

        settings.params = {0.0, 1.0};
        if (ids_of(rank(corpus, pages, nullptr, topic, settings)) !=
            sort_by(naive.s_c)) return false;

        settings.params = {0.0, 0.0};
        if (ids_of(rank(corpus, pages, nullptr, topic, settings)) !=
            sort_by(naive.s_z)) return false;

        settings.params = {1.0, 0.0};
        if (ids_of(rank(corpus, pages, nullptr, topic, settings)) !=
            sort_by(naive.s_l)) return false;
        return true;
    });

    criterion("5. sweeps emit 20 and 66 rows; every cell equals its single run", [&] {
        RankSettings lex;
        lex.strategy = CatStrategy::parse(Task::EntityRanking, "lex-tc");
        auto m_rows = sweep_m(corpus, pages, cats, topics, qrels, lex);
        if (m_rows.size() != 20) return false;
        for (const auto& row : m_rows) {
            RankSettings single = lex;
            single.strategy.m = row.m;
            if (row.map != run_map(corpus, pages, &cats, topics, qrels, single))
                return false;
        }

        RankSettings t2;
        t2.strategy = CatStrategy::parse(Task::ListCompletion, "base");
        auto ab_rows = sweep_alpha_beta(corpus, pages, nullptr, topics, qrels, t2);
        if (ab_rows.size() != 66) return false;
        for (const auto& row : ab_rows) {
            RankSettings single = t2;
            single.params = {row.alpha, row.beta};
            if (row.map != run_map(corpus, pages, nullptr, topics, qrels, single))
                return false;
        }
        return true;
    });

    criterion("6. category-extension laws hold over 500 random cyclic graphs", [&] {
        auto start = std::chrono::steady_clock::now();
        std::mt19937 rng(1234321);
        for (int iter = 0; iter < 500; ++iter) {
            const int n = 2 + int(rng() % 10);
            CategoryGraph g;
            for (CategoryId c = 0; c < CategoryId(n); ++c) g.add_category(c, "c");
            for (int e = 0, m = int(rng() % (2 * n)); e < m; ++e) {
                g.add_edge(rng() % n, rng() % n);
            }
            std::set<CategoryId> answer, target;
            for (CategoryId c = 0; c < CategoryId(n); ++c) {
                if (rng() % 2) answer.insert(c);
                if (rng() % 2) target.insert(c);
            }
            if (target.empty()) target.insert(rng() % n);

            auto up = parents_one_up(g, answer);
            auto down = children_one_down(g, target);
            if (!std::includes(up.begin(), up.end(), answer.begin(), answer.end()))
                return false;
            if (!std::includes(down.begin(), down.end(), target.begin(),
                               target.end()))
                return false;
            if (overlap_ratio(up, target) < overlap_ratio(answer, target))
                return false;
        }
        return std::chrono::steady_clock::now() - start < std::chrono::seconds(5);
    });

    criterion("7. example-entity categories beat loose target categories (MAP direction)", [&] {
        RankSettings t2;
        t2.strategy = CatStrategy::parse(Task::ListCompletion, "base");
        RankSettings t1;
        t1.strategy = CatStrategy::parse(Task::EntityRanking, "base");
        double map2 = run_map(corpus, pages, nullptr, topics, qrels, t2);
        double map1 = run_map(corpus, pages, nullptr, topics, qrels, t1);
        std::cout << "    task2 base MAP=" << map2 << "  task1 base MAP=" << map1
                  << "\n";
        return map2 > map1;
    });

    criterion("8. the example topic parses to the published field values", [&] {
        const char* xml = R"(<inex_topic>
<title>
European countries where I can pay with Euros
</title>
<description>
I want a list of European countries where
I can pay with Euros.
</description>
<narrative>
Each answer should be the article about a
specific European country that uses the
Euro as currency.
</narrative>
<entities>
   <entity ID="10581">France</entity>
   <entity ID="11867">Germany</entity>
   <entity ID="26667">Spain</entity>
</entities>
<categories>
   <category ID="185">european countries
   </category>
</categories>
</inex_topic>)";
        Topic parsed = parse_topic(xml, "fig1");
        if (parsed.title != "European countries where I can pay with Euros")
            return false;
        if (parsed.example_ids() != std::set<PageId>{10581, 11867, 26667})
            return false;
        if (parsed.target_categories.size() != 1) return false;
        return parsed.target_categories[0] ==
               std::pair<CategoryId, std::string>{185, "european countries"};
    });

    criterion("9. two consecutive rank invocations produce byte-identical run files", [&] {
        namespace fs = std::filesystem;
        auto dir = fs::temp_directory_path() / "entrank_acceptance";
        fs::create_directories(dir);
        auto run_once = [&](const std::string& out) {
            std::string cmd = std::string(CLI_BINARY) +
                " rank --corpus " + testsup::fixture("miniwiki/pages.tsv") +
                " --categories " + testsup::fixture("miniwiki/categories.tsv") +
                " --topics " + testsup::fixture("miniwiki/topics") +
                " --task 2 --strategy base --alpha 0.1 --beta 0.8" +
                " --tag accept --out " + out;
            return std::system(cmd.c_str());
        };
        std::string f1 = (dir / "run1.txt").string();
        std::string f2 = (dir / "run2.txt").string();
        if (run_once(f1) != 0 || run_once(f2) != 0) return false;
        std::string a = read_file(f1), b = read_file(f2);
        fs::remove_all(dir);
        return !a.empty() && a == b;
    });

    std::cout << (g_failures == 0 ? "all criteria passed"
                                  : std::to_string(g_failures) + " criteria failed")
              << "\n";
    return g_failures == 0 ? 0 : 1;
}
