#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entrank/corpus.hpp"

namespace entrank {

enum class Task { EntityRanking = 1, ListCompletion = 2 };

/// An INEX-style entity ranking topic. Task 1 (entity ranking) needs at
/// least one target category; task 2 (list completion) needs at least one
/// example entity. Description and narrative are parsed but the pipeline
/// queries with the title only.
struct Topic {
    std::string id;
    std::string title;
    std::string description;
    std::string narrative;
    std::vector<std::pair<PageId, std::string>> examples;
    std::vector<std::pair<CategoryId, std::string>> target_categories;

    bool valid_for(Task task) const {
        return task == Task::EntityRanking ? !target_categories.empty()
                                           : !examples.empty();
    }
    std::set<PageId> example_ids() const;
    std::set<CategoryId> target_category_ids() const;
};

/// Parses a topic from XML text. The topic id comes from the root `id`
/// attribute when present, otherwise `fallback_id` (the filename stem when
/// reading from disk). Element text is whitespace-normalized.
Topic parse_topic(std::string_view xml, std::string_view fallback_id = "");

Topic parse_topic_file(const std::string& path);

std::string serialize_topic(const Topic& topic);

/// Per-topic relevant entity sets, keyed by topic id.
using Qrels = std::map<std::string, std::set<PageId>>;

/// TREC qrels format: `topic 0 page_id rel` with rel in {0,1}. Only rel=1
/// entries are retained; a topic seen only with rel=0 maps to an empty set.
Qrels parse_qrels(const std::string& path);

}  // namespace entrank
