#pragma once

#include <optional>
#include <set>
#include <string>

#include "entrank/corpus.hpp"
#include "entrank/text_index.hpp"
#include "entrank/topics.hpp"

namespace entrank {

/// Task-1 target-set construction variants.
///   Base     — target categories as given
///   Extended — target categories plus subcategories (one level down),
///              with the answer side extended one level up
///   LexC     — augment with top-M categories retrieved for the category names
///   LexT     — augment with top-M categories retrieved for the topic title
///   LexTC    — augment with top-M categories retrieved for title + names
enum class Task1Variant { Base, Extended, LexC, LexT, LexTC };

/// Task-2 variants: which side of the overlap is extended one level up.
enum class Task2Variant { Base, ExtendAnswer, ExtendExamples, ExtendBoth };

struct CatStrategy {
    Task task = Task::EntityRanking;
    Task1Variant t1 = Task1Variant::Base;
    Task2Variant t2 = Task2Variant::Base;
    IndexFlavor cat_flavor = IndexFlavor::CatNames;
    int m = 10;  // top-M lexically retrieved categories, lexical variants only

    bool is_lexical() const {
        return task == Task::EntityRanking &&
               (t1 == Task1Variant::LexC || t1 == Task1Variant::LexT ||
                t1 == Task1Variant::LexTC);
    }
    /// True when the answer entity's categories are extended one level up.
    bool answer_side_extended() const {
        if (task == Task::EntityRanking) return t1 == Task1Variant::Extended;
        return t2 == Task2Variant::ExtendAnswer || t2 == Task2Variant::ExtendBoth;
    }

    /// Parses a CLI strategy name. Task 1: base, extended, lex-c, lex-t,
    /// lex-tc. Task 2: base, u-t, u-e, u-both.
    static CatStrategy parse(Task task, const std::string& name);
    std::string name() const;
};

/// The denominator set of the category overlap, plus which strategy built it.
struct TargetCatSet {
    std::set<CategoryId> cats;
    std::string provenance;
};

/// |answer ∩ target| / |target|. Throws ContractError on an empty target set.
double overlap_ratio(const std::set<CategoryId>& answer_cats,
                     const std::set<CategoryId>& target_cats);

/// Builds the task-1 target set. `cat_index` is required for lexical
/// variants and ignored otherwise. Lexical variants union the retrieved
/// categories with the topic's target categories, so an empty retrieval
/// degrades to the base set.
TargetCatSet build_target_set_task1(const Corpus& corpus,
                                    const TextIndex* cat_index,
                                    const Topic& topic,
                                    const CatStrategy& strategy);

/// Builds the task-2 target set: the union of the example entities'
/// categories, extended one level up for the ExtendExamples/ExtendBoth
/// variants.
TargetCatSet build_target_set_task2(const Corpus& corpus, const Topic& topic,
                                    const CatStrategy& strategy);

TargetCatSet build_target_set(const Corpus& corpus, const TextIndex* cat_index,
                              const Topic& topic, const CatStrategy& strategy);

/// Category similarity score S_C in [0,1] for answer entity `t`.
double category_score(const Corpus& corpus, const TargetCatSet& target_set,
                      const CatStrategy& strategy, PageId t);

}  // namespace entrank
