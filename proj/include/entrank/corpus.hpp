#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "entrank/errors.hpp"

namespace entrank {

using PageId = std::uint32_t;
using CategoryId = std::uint32_t;

/// A resolved intra-collection link occurrence. The element path of the
/// occurrence is carried for future locality-aware scoring but is not used
/// by the link score itself.
struct Link {
    PageId target = 0;
    std::string anchor;
    std::string xml_path;
};

struct Page {
    PageId id = 0;
    std::string title;
    std::string body;  // link markup already replaced by anchor text
    std::vector<Link> outlinks;
    std::set<CategoryId> categories;
};

/// Category nodes with parent/child edges and page attachments. The graph
/// may contain cycles and nodes with multiple parents; no acyclicity check
/// is performed. Immutable once the corpus is loaded.
class CategoryGraph {
public:
    void add_category(CategoryId id, std::string name);
    void add_edge(CategoryId parent, CategoryId child);
    void attach(PageId page, CategoryId cat);

    bool has_category(CategoryId id) const { return names_.count(id) != 0; }
    const std::string& name(CategoryId id) const;
    const std::map<CategoryId, std::string>& names() const { return names_; }

    const std::set<CategoryId>& parents(CategoryId id) const;
    const std::set<CategoryId>& children(CategoryId id) const;
    const std::set<PageId>& pages_of(CategoryId id) const;
    const std::set<CategoryId>& cats_of(PageId page) const;

    std::size_t size() const { return names_.size(); }

private:
    std::map<CategoryId, std::string> names_;
    std::map<CategoryId, std::set<CategoryId>> children_;
    std::map<CategoryId, std::set<CategoryId>> parents_;
    std::map<CategoryId, std::set<PageId>> pages_of_;
    std::map<PageId, std::set<CategoryId>> cats_of_;

    static const std::set<CategoryId> kEmptyCats;
    static const std::set<PageId> kEmptyPages;
};

/// One-level-up expansion: the input categories plus their direct parents.
/// Never recurses, so self-loops and cycles contribute at most one step.
std::set<CategoryId> parents_one_up(const CategoryGraph& graph,
                                    const std::set<CategoryId>& cats);

/// One-level-down expansion with child edges.
std::set<CategoryId> children_one_down(const CategoryGraph& graph,
                                       const std::set<CategoryId>& cats);

/// Immutable in-memory collection model: pages with resolved links plus the
/// category graph. Dangling link targets are dropped during load.
class Corpus {
public:
    static Corpus load(const std::string& pages_path,
                       const std::string& categories_path);

    const std::map<PageId, Page>& pages() const { return pages_; }
    const CategoryGraph& graph() const { return graph_; }

    bool has_page(PageId id) const { return pages_.count(id) != 0; }
    const Page& page(PageId id) const;

    /// Categories directly attached to a page; never includes ancestors.
    const std::set<CategoryId>& categories_of(PageId id) const;

    std::size_t page_count() const { return pages_.size(); }
    std::size_t category_count() const { return graph_.size(); }
    std::size_t link_count() const;
    double mean_categories_per_page() const;

private:
    std::map<PageId, Page> pages_;
    CategoryGraph graph_;
};

/// Lowercase, split on non-alphanumeric bytes, no stemming or stopwords.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace entrank
