#include "entrank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace entrank {

const std::set<CategoryId> CategoryGraph::kEmptyCats;
const std::set<PageId> CategoryGraph::kEmptyPages;

void CategoryGraph::add_category(CategoryId id, std::string name) {
    if (names_.count(id)) {
        throw LoadError("duplicate category id " + std::to_string(id));
    }
    names_.emplace(id, std::move(name));
}

void CategoryGraph::add_edge(CategoryId parent, CategoryId child) {
    if (!has_category(parent) || !has_category(child)) {
        throw LoadError("edge references unknown category " +
                        std::to_string(has_category(parent) ? child : parent));
    }
    children_[parent].insert(child);
    parents_[child].insert(parent);
}

void CategoryGraph::attach(PageId page, CategoryId cat) {
    if (!has_category(cat)) {
        throw LoadError("page " + std::to_string(page) +
                        " references unknown category " + std::to_string(cat));
    }
    pages_of_[cat].insert(page);
    cats_of_[page].insert(cat);
}

const std::string& CategoryGraph::name(CategoryId id) const {
    auto it = names_.find(id);
    if (it == names_.end()) {
        throw NotFoundError("unknown category id " + std::to_string(id));
    }
    return it->second;
}

const std::set<CategoryId>& CategoryGraph::parents(CategoryId id) const {
    if (!has_category(id)) {
        throw NotFoundError("unknown category id " + std::to_string(id));
    }
    auto it = parents_.find(id);
    return it == parents_.end() ? kEmptyCats : it->second;
}

const std::set<CategoryId>& CategoryGraph::children(CategoryId id) const {
    if (!has_category(id)) {
        throw NotFoundError("unknown category id " + std::to_string(id));
    }
    auto it = children_.find(id);
    return it == children_.end() ? kEmptyCats : it->second;
}

const std::set<PageId>& CategoryGraph::pages_of(CategoryId id) const {
    if (!has_category(id)) {
        throw NotFoundError("unknown category id " + std::to_string(id));
    }
    auto it = pages_of_.find(id);
    return it == pages_of_.end() ? kEmptyPages : it->second;
}

const std::set<CategoryId>& CategoryGraph::cats_of(PageId page) const {
    auto it = cats_of_.find(page);
    return it == cats_of_.end() ? kEmptyCats : it->second;
}

std::set<CategoryId> parents_one_up(const CategoryGraph& graph,
                                    const std::set<CategoryId>& cats) {
    std::set<CategoryId> out = cats;
    for (CategoryId c : cats) {
        const auto& ps = graph.parents(c);
        out.insert(ps.begin(), ps.end());
    }
    return out;
}

std::set<CategoryId> children_one_down(const CategoryGraph& graph,
                                       const std::set<CategoryId>& cats) {
    std::set<CategoryId> out = cats;
    for (CategoryId c : cats) {
        const auto& cs = graph.children(c);
        out.insert(cs.begin(), cs.end());
    }
    return out;
}

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return out;
}

LoadError bad_line(const std::string& path, std::size_t lineno,
                   const std::string& what) {
    return LoadError(path + ":" + std::to_string(lineno) + ": " + what);
}

std::uint32_t parse_id(const std::string& s, const std::string& path,
                       std::size_t lineno) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw bad_line(path, lineno, "malformed id '" + s + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(s));
}

// Body link markup: [[target_id|anchor|xml_path]]. Returns the body with
// markup replaced by anchor text and appends parsed links (target resolution
// happens later, once all pages are known).
std::string parse_body(const std::string& raw, std::vector<Link>& links,
                       const std::string& path, std::size_t lineno) {
    std::string body;
    std::size_t pos = 0;
    while (true) {
        std::size_t open = raw.find("[[", pos);
        if (open == std::string::npos) {
            body.append(raw, pos, std::string::npos);
            break;
        }
        body.append(raw, pos, open - pos);
        std::size_t close = raw.find("]]", open);
        if (close == std::string::npos) {
            throw bad_line(path, lineno, "unterminated link markup");
        }
        // xml paths may themselves end in ']' (e.g. p[1]); the markup ends at
        // the last pair of a bracket run.
        while (close + 2 < raw.size() && raw[close + 2] == ']') ++close;
        std::string inner = raw.substr(open + 2, close - open - 2);
        std::size_t p1 = inner.find('|');
        std::size_t p2 = inner.find('|', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos) {
            throw bad_line(path, lineno, "malformed link markup '" + inner + "'");
        }
        Link link;
        link.target = parse_id(inner.substr(0, p1), path, lineno);
        link.anchor = inner.substr(p1 + 1, p2 - p1 - 1);
        link.xml_path = inner.substr(p2 + 1);
        if (link.xml_path.empty()) {
            throw bad_line(path, lineno, "link with empty xml path");
        }
        links.push_back(std::move(link));
        body.append(links.back().anchor);
        pos = close + 2;
    }
    return body;
}

}  // namespace

Corpus Corpus::load(const std::string& pages_path,
                    const std::string& categories_path) {
    Corpus corpus;

    std::ifstream cat_file(categories_path);
    if (!cat_file) {
        throw LoadError("cannot open " + categories_path);
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(cat_file, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields[0] == "C") {
            if (fields.size() != 3) {
                throw bad_line(categories_path, lineno, "expected C\\tid\\tname");
            }
            CategoryId id = parse_id(fields[1], categories_path, lineno);
            corpus.graph_.add_category(id, lowercase(fields[2]));
        } else if (fields[0] == "E") {
            if (fields.size() != 3) {
                throw bad_line(categories_path, lineno,
                               "expected E\\tparent\\tchild");
            }
            CategoryId parent = parse_id(fields[1], categories_path, lineno);
            CategoryId child = parse_id(fields[2], categories_path, lineno);
            corpus.graph_.add_edge(parent, child);
        } else {
            throw bad_line(categories_path, lineno,
                           "unknown record type '" + fields[0] + "'");
        }
    }

    std::ifstream pages_file(pages_path);
    if (!pages_file) {
        throw LoadError("cannot open " + pages_path);
    }
    lineno = 0;
    while (std::getline(pages_file, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 4) {
            throw bad_line(pages_path, lineno,
                           "expected id\\ttitle\\tcats\\tbody");
        }
        Page page;
        page.id = parse_id(fields[0], pages_path, lineno);
        if (corpus.pages_.count(page.id)) {
            throw bad_line(pages_path, lineno,
                           "duplicate page id " + std::to_string(page.id));
        }
        page.title = fields[1];
        if (!fields[2].empty()) {
            std::stringstream cats(fields[2]);
            std::string item;
            while (std::getline(cats, item, ',')) {
                CategoryId cat = parse_id(item, pages_path, lineno);
                page.categories.insert(cat);
            }
        }
        page.body = parse_body(fields[3], page.outlinks, pages_path, lineno);
        corpus.pages_.emplace(page.id, std::move(page));
    }

    // Resolve links and attachments once all pages exist; dangling targets
    // are dropped, mirroring the discard of unresolvable collection links.
    for (auto& [id, page] : corpus.pages_) {
        std::erase_if(page.outlinks, [&](const Link& l) {
            return !corpus.pages_.count(l.target);
        });
        for (CategoryId cat : page.categories) {
            corpus.graph_.attach(id, cat);
        }
    }
    return corpus;
}

const Page& Corpus::page(PageId id) const {
    auto it = pages_.find(id);
    if (it == pages_.end()) {
        throw NotFoundError("unknown page id " + std::to_string(id));
    }
    return it->second;
}

const std::set<CategoryId>& Corpus::categories_of(PageId id) const {
    return page(id).categories;
}

std::size_t Corpus::link_count() const {
    std::size_t n = 0;
    for (const auto& [id, page] : pages_) n += page.outlinks.size();
    return n;
}

double Corpus::mean_categories_per_page() const {
    if (pages_.empty()) return 0.0;
    std::size_t n = 0;
    for (const auto& [id, page] : pages_) n += page.categories.size();
    return static_cast<double>(n) / static_cast<double>(pages_.size());
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

}  // namespace entrank
