// Command-line front end: index, rank, eval, sweep.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "entrank/catsim.hpp"
#include "entrank/corpus.hpp"
#include "entrank/evaluation.hpp"
#include "entrank/fusion.hpp"
#include "entrank/topics.hpp"

namespace fs = std::filesystem;
using namespace entrank;

namespace {

struct CommonOpts {
    std::string corpus_path;
    std::string categories_path;
    std::string topics_path;
    std::string qrels_path;
    int task = 1;
    std::string strategy = "base";
    std::string cat_index = "c";
    int m = 10;
    std::size_t top_n = kDefaultTopN;
    std::size_t top_k = 100;
    double alpha = 0.1;
    double beta = 0.8;
    std::size_t max_results = 100;
    std::string out_path;
    std::string tag = "entrank";
    bool csv = false;
};

// Expands `--config FILE` into the argument list. The file is flat
// key=value text (one option per line, '#' comments); explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (it + 1 == args.end()) throw LoadError("--config needs a file path");
    const std::string path = *(it + 1);
    args.erase(it, it + 2);

    std::ifstream in(path);
    if (!in) throw LoadError("cannot open config file " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw LoadError(path + ":" + std::to_string(lineno) +
                            ": expected key=value");
        }
        const std::string flag = "--" + line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (std::find(args.begin(), args.end(), flag) != args.end()) {
            continue;  // a command-line flag overrides the config entry
        }
        if (value == "true") {
            args.push_back(flag);
        } else if (value != "false") {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

void add_corpus_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--corpus", opts.corpus_path, "pages.tsv path")->required();
    cmd->add_option("--categories", opts.categories_path, "categories.tsv path")
        ->required();
}

void add_rank_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--topics", opts.topics_path,
                    "topic XML file or directory of topic files")
        ->required();
    cmd->add_option("--task", opts.task, "1 = entity ranking, 2 = list completion")
        ->check(CLI::IsMember({1, 2}));
    cmd->add_option("--strategy", opts.strategy,
                    "task 1: base|extended|lex-c|lex-t|lex-tc; "
                    "task 2: base|u-t|u-e|u-both");
    cmd->add_option("--cat-index", opts.cat_index,
                    "category index flavor: c (names) or ce (names+entities)")
        ->check(CLI::IsMember({"c", "ce"}));
    cmd->add_option("-M,--m", opts.m, "top-M lexically retrieved categories");
    cmd->add_option("--top-n", opts.top_n, "pages mined for links");
    cmd->add_option("--top-k", opts.top_k, "retrieval depth");
    cmd->add_option("--alpha", opts.alpha, "linkrank weight");
    cmd->add_option("--beta", opts.beta, "category weight");
    cmd->add_option("--max-results", opts.max_results, "result list cap");
    cmd->add_option("--tag", opts.tag, "run tag");
}

RankSettings make_settings(const CommonOpts& opts) {
    RankSettings settings;
    settings.strategy = CatStrategy::parse(
        opts.task == 1 ? Task::EntityRanking : Task::ListCompletion,
        opts.strategy);
    settings.strategy.cat_flavor = opts.cat_index == "ce"
        ? IndexFlavor::CatNamesPlusEntities
        : IndexFlavor::CatNames;
    settings.strategy.m = opts.m;
    settings.params = {opts.alpha, opts.beta};
    settings.params.validate();
    settings.top_n = opts.top_n;
    settings.top_k = opts.top_k;
    settings.max_results = opts.max_results;
    return settings;
}

std::vector<Topic> load_topics(const std::string& path) {
    std::vector<Topic> topics;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.path().extension() == ".xml") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) topics.push_back(parse_topic_file(f.string()));
    } else {
        topics.push_back(parse_topic_file(path));
    }
    if (topics.empty()) throw LoadError("no topic files found in " + path);
    return topics;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write " + path);
    out << content;
}

int cmd_index(const CommonOpts& opts) {
    Corpus corpus = Corpus::load(opts.corpus_path, opts.categories_path);
    auto pages = TextIndex::build(corpus, IndexFlavor::Pages);
    auto cats = TextIndex::build(corpus, opts.cat_index == "ce"
                                             ? IndexFlavor::CatNamesPlusEntities
                                             : IndexFlavor::CatNames);
    std::cout << "pages indexed: " << pages.doc_count() << "\n"
              << "categories indexed (" << opts.cat_index << "): "
              << cats.doc_count() << "\n"
              << "links: " << corpus.link_count() << "\n"
              << "mean categories per page: "
              << corpus.mean_categories_per_page() << "\n";
    return 0;
}

int cmd_rank(const CommonOpts& opts) {
    Corpus corpus = Corpus::load(opts.corpus_path, opts.categories_path);
    RankSettings settings = make_settings(opts);
    auto pages_index = TextIndex::build(corpus, IndexFlavor::Pages);
    std::optional<TextIndex> cat_index;
    if (settings.strategy.is_lexical()) {
        cat_index = TextIndex::build(corpus, settings.strategy.cat_flavor);
    }

    std::map<std::string, std::vector<ScoredEntity>> run;
    bool partial_failure = false;
    for (const auto& topic : load_topics(opts.topics_path)) {
        try {
            run[topic.id] = rank(corpus, pages_index,
                                 cat_index ? &*cat_index : nullptr, topic,
                                 settings);
        } catch (const std::exception& e) {
            std::cerr << "topic " << topic.id << " skipped: " << e.what() << "\n";
            partial_failure = true;
        }
    }
    std::ostringstream buf;
    write_run_file(buf, run, opts.tag);
    if (opts.out_path.empty()) {
        std::cout << buf.str();
    } else {
        write_text_file(opts.out_path, buf.str());
    }
    return partial_failure ? 1 : 0;
}

int cmd_eval(const std::string& run_path, const CommonOpts& opts) {
    Run run = parse_run_file(run_path);
    Qrels qrels = parse_qrels(opts.qrels_path);
    bool intersects = std::any_of(run.begin(), run.end(), [&](const auto& kv) {
        return qrels.count(kv.first) != 0;
    });
    if (!intersects) {
        throw LoadError("run and qrels share no topic ids");
    }
    MetricReport report = evaluate_run(run, qrels, opts.tag);
    std::cout << (opts.csv ? format_csv(report) : format_table(report));
    if (!opts.out_path.empty()) {
        write_text_file(opts.out_path, format_tsv(report));
    }
    return 0;
}

int cmd_sweep(const std::string& which, const CommonOpts& opts) {
    Corpus corpus = Corpus::load(opts.corpus_path, opts.categories_path);
    RankSettings settings = make_settings(opts);
    auto pages_index = TextIndex::build(corpus, IndexFlavor::Pages);
    auto topics = load_topics(opts.topics_path);
    Qrels qrels = parse_qrels(opts.qrels_path);

    const char sep = opts.csv ? ',' : '\t';
    std::ostringstream out;
    out << std::fixed << std::setprecision(6);
    if (which == "m") {
        auto cat_index = TextIndex::build(corpus, settings.strategy.cat_flavor);
        auto rows = sweep_m(corpus, pages_index, cat_index, topics, qrels,
                            settings);
        out << "M" << sep << "MAP\n";
        const MSweepRow* best = &rows.front();
        for (const auto& row : rows) {
            out << row.m << sep << row.map << "\n";
            if (row.map > best->map) best = &row;
        }
        std::cerr << "best M=" << best->m << " MAP=" << best->map << "\n";
    } else {
        std::optional<TextIndex> cat_index;
        if (settings.strategy.is_lexical()) {
            cat_index = TextIndex::build(corpus, settings.strategy.cat_flavor);
        }
        auto rows = sweep_alpha_beta(corpus, pages_index,
                                     cat_index ? &*cat_index : nullptr, topics,
                                     qrels, settings);
        out << "alpha" << sep << "beta" << sep << "MAP\n";
        const AlphaBetaRow* best = &rows.front();
        for (const auto& row : rows) {
            out << row.alpha << sep << row.beta << sep << row.map << "\n";
            if (row.map > best->map) best = &row;
        }
        std::cerr << "best alpha=" << best->alpha << " beta=" << best->beta
                  << " MAP=" << best->map << "\n";
    }
    if (opts.out_path.empty()) {
        std::cout << out.str();
    } else {
        write_text_file(opts.out_path, out.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wikipedia entity ranking: BM25 retrieval, category "
                 "similarity, link scoring, and linear fusion.\n"
                 "Any subcommand accepts --config FILE (flat key=value, "
                 "explicit flags override)."};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string run_path;
    std::string sweep_which;

    auto* index = app.add_subcommand("index", "load the corpus and report index sizes");
    add_corpus_flags(index, opts);
    index->add_option("--cat-index", opts.cat_index)->check(CLI::IsMember({"c", "ce"}));

    auto* rank_cmd = app.add_subcommand("rank", "rank entities per topic, write a TREC run file");
    add_corpus_flags(rank_cmd, opts);
    add_rank_flags(rank_cmd, opts);
    rank_cmd->add_option("--out", opts.out_path, "run file path (stdout if omitted)");

    auto* eval_cmd = app.add_subcommand("eval", "score a run file against qrels");
    eval_cmd->add_option("--run", run_path, "TREC run file")->required();
    eval_cmd->add_option("--qrels", opts.qrels_path, "TREC qrels file")->required();
    eval_cmd->add_option("--out", opts.out_path, "TSV report path");
    eval_cmd->add_option("--tag", opts.tag, "report label");
    eval_cmd->add_flag("--csv", opts.csv, "emit CSV instead of aligned text");

    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps (M or alpha/beta grid)");
    add_corpus_flags(sweep_cmd, opts);
    add_rank_flags(sweep_cmd, opts);
    sweep_cmd->add_option("--which", sweep_which, "m or alphabeta")
        ->required()
        ->check(CLI::IsMember({"m", "alphabeta"}));
    sweep_cmd->add_option("--qrels", opts.qrels_path, "TREC qrels file")->required();
    sweep_cmd->add_option("--out", opts.out_path, "table output path (stdout if omitted)");
    sweep_cmd->add_flag("--csv", opts.csv, "emit CSV instead of TSV");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (index->parsed()) return cmd_index(opts);
        if (rank_cmd->parsed()) return cmd_rank(opts);
        if (eval_cmd->parsed()) return cmd_eval(run_path, opts);
        return cmd_sweep(sweep_which, opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
