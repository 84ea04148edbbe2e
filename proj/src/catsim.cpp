#include "entrank/catsim.hpp"

#include <algorithm>
#include <iterator>

namespace entrank {

CatStrategy CatStrategy::parse(Task task, const std::string& name) {
    CatStrategy s;
    s.task = task;
    if (task == Task::EntityRanking) {
        if (name == "base") s.t1 = Task1Variant::Base;
        else if (name == "extended") s.t1 = Task1Variant::Extended;
        else if (name == "lex-c") s.t1 = Task1Variant::LexC;
        else if (name == "lex-t") s.t1 = Task1Variant::LexT;
        else if (name == "lex-tc") s.t1 = Task1Variant::LexTC;
        else throw ContractError("unknown task-1 strategy '" + name + "'");
    } else {
        if (name == "base") s.t2 = Task2Variant::Base;
        else if (name == "u-t") s.t2 = Task2Variant::ExtendAnswer;
        else if (name == "u-e") s.t2 = Task2Variant::ExtendExamples;
        else if (name == "u-both") s.t2 = Task2Variant::ExtendBoth;
        else throw ContractError("unknown task-2 strategy '" + name + "'");
    }
    return s;
}

std::string CatStrategy::name() const {
    if (task == Task::EntityRanking) {
        switch (t1) {
            case Task1Variant::Base: return "base";
            case Task1Variant::Extended: return "extended";
            case Task1Variant::LexC: return "lex-c";
            case Task1Variant::LexT: return "lex-t";
            case Task1Variant::LexTC: return "lex-tc";
        }
    }
    switch (t2) {
        case Task2Variant::Base: return "base";
        case Task2Variant::ExtendAnswer: return "u-t";
        case Task2Variant::ExtendExamples: return "u-e";
        case Task2Variant::ExtendBoth: return "u-both";
    }
    return "?";
}

double overlap_ratio(const std::set<CategoryId>& answer_cats,
                     const std::set<CategoryId>& target_cats) {
    if (target_cats.empty()) {
        throw ContractError("category overlap with empty target set");
    }
    std::size_t common = 0;
    for (CategoryId c : answer_cats) common += target_cats.count(c);
    return static_cast<double>(common) / static_cast<double>(target_cats.size());
}

namespace {

std::string lexical_query(const Topic& topic, Task1Variant variant) {
    std::string cat_names;
    for (const auto& [id, name] : topic.target_categories) {
        if (!cat_names.empty()) cat_names += " ";
        cat_names += name;
    }
    switch (variant) {
        case Task1Variant::LexC: return cat_names;
        case Task1Variant::LexT: return topic.title;
        default: return topic.title + " " + cat_names;
    }
}

}  // namespace

TargetCatSet build_target_set_task1(const Corpus& corpus,
                                    const TextIndex* cat_index,
                                    const Topic& topic,
                                    const CatStrategy& strategy) {
    TargetCatSet out;
    out.provenance = "task1/" + strategy.name();
    std::set<CategoryId> base = topic.target_category_ids();
    for (CategoryId c : base) {
        if (!corpus.graph().has_category(c)) {
            throw NotFoundError("topic references unknown category " +
                                std::to_string(c));
        }
    }
    switch (strategy.t1) {
        case Task1Variant::Base:
            out.cats = base;
            break;
        case Task1Variant::Extended:
            out.cats = children_one_down(corpus.graph(), base);
            break;
        default: {
            if (cat_index == nullptr) {
                throw ContractError("lexical strategy requires a category index");
            }
            if (strategy.m < 1) {
                throw ContractError("lexical strategy requires M >= 1");
            }
            out.cats = base;
            auto hits = cat_index->search(lexical_query(topic, strategy.t1),
                                          static_cast<std::size_t>(strategy.m));
            for (const auto& hit : hits) {
                out.cats.insert(static_cast<CategoryId>(hit.doc));
            }
            break;
        }
    }
    return out;
}

TargetCatSet build_target_set_task2(const Corpus& corpus, const Topic& topic,
                                    const CatStrategy& strategy) {
    if (topic.examples.empty()) {
        throw ContractError("task 2 requires example entities");
    }
    TargetCatSet out;
    out.provenance = "task2/" + strategy.name();
    for (const auto& [id, name] : topic.examples) {
        const auto& cats = corpus.categories_of(id);
        out.cats.insert(cats.begin(), cats.end());
    }
    if (strategy.t2 == Task2Variant::ExtendExamples ||
        strategy.t2 == Task2Variant::ExtendBoth) {
        out.cats = parents_one_up(corpus.graph(), out.cats);
    }
    return out;
}

TargetCatSet build_target_set(const Corpus& corpus, const TextIndex* cat_index,
                              const Topic& topic, const CatStrategy& strategy) {
    return strategy.task == Task::EntityRanking
        ? build_target_set_task1(corpus, cat_index, topic, strategy)
        : build_target_set_task2(corpus, topic, strategy);
}

double category_score(const Corpus& corpus, const TargetCatSet& target_set,
                      const CatStrategy& strategy, PageId t) {
    std::set<CategoryId> answer = corpus.categories_of(t);
    if (strategy.answer_side_extended()) {
        answer = parents_one_up(corpus.graph(), answer);
    }
    return overlap_ratio(answer, target_set.cats);
}

}  // namespace entrank
