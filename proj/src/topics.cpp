#include "entrank/topics.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace entrank {

namespace {

std::string normalize_ws(std::string_view text) {
    std::string out;
    bool in_space = true;  // trims leading whitespace
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            out.push_back(static_cast<char>(c));
            in_space = false;
        }
    }
    return out;
}

struct Element {
    std::string attrs;     // raw text inside the open tag, after the name
    std::string_view body; // text between open and close tag
    bool found = false;
};

// Finds the first <tag ...>...</tag> in `xml` starting at `from`.
Element find_element(std::string_view xml, std::string_view tag,
                     std::size_t from = 0) {
    Element el;
    const std::string open = "<" + std::string(tag);
    std::size_t pos = from;
    while (true) {
        pos = xml.find(open, pos);
        if (pos == std::string_view::npos) return el;
        std::size_t after = pos + open.size();
        if (after < xml.size() &&
            (xml[after] == '>' || std::isspace(static_cast<unsigned char>(xml[after])))) {
            break;
        }
        pos = after;  // matched a longer tag name, keep scanning
    }
    std::size_t open_end = xml.find('>', pos);
    if (open_end == std::string_view::npos) {
        throw ParseError("unterminated <" + std::string(tag) + "> tag");
    }
    const std::string close = "</" + std::string(tag) + ">";
    std::size_t close_pos = xml.find(close, open_end);
    if (close_pos == std::string_view::npos) {
        throw ParseError("missing " + close);
    }
    el.attrs = std::string(xml.substr(pos + open.size(), open_end - pos - open.size()));
    el.body = xml.substr(open_end + 1, close_pos - open_end - 1);
    el.found = true;
    return el;
}

std::string attr_value(const std::string& attrs, const std::string& name) {
    std::size_t pos = attrs.find(name + "=\"");
    if (pos == std::string::npos) return {};
    std::size_t start = pos + name.size() + 2;
    std::size_t end = attrs.find('"', start);
    if (end == std::string::npos) {
        throw ParseError("unterminated attribute " + name);
    }
    return attrs.substr(start, end - start);
}

std::uint32_t parse_id_attr(const std::string& attrs) {
    std::string value = attr_value(attrs, "ID");
    if (value.empty() ||
        value.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("malformed ID attribute '" + value + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(value));
}

}  // namespace

std::set<PageId> Topic::example_ids() const {
    std::set<PageId> out;
    for (const auto& [id, name] : examples) out.insert(id);
    return out;
}

std::set<CategoryId> Topic::target_category_ids() const {
    std::set<CategoryId> out;
    for (const auto& [id, name] : target_categories) out.insert(id);
    return out;
}

Topic parse_topic(std::string_view xml, std::string_view fallback_id) {
    Element root = find_element(xml, "inex_topic");
    if (!root.found) {
        throw ParseError("missing <inex_topic> root element");
    }
    Topic topic;
    topic.id = attr_value(root.attrs, "id");
    if (topic.id.empty()) topic.id = std::string(fallback_id);

    Element title = find_element(root.body, "title");
    if (!title.found) throw ParseError("missing <title>");
    topic.title = normalize_ws(title.body);
    if (topic.title.empty()) throw ParseError("empty <title>");

    if (Element d = find_element(root.body, "description"); d.found) {
        topic.description = normalize_ws(d.body);
    }
    if (Element n = find_element(root.body, "narrative"); n.found) {
        topic.narrative = normalize_ws(n.body);
    }

    if (Element entities = find_element(root.body, "entities"); entities.found) {
        std::size_t pos = 0;
        while (true) {
            Element e = find_element(entities.body, "entity", pos);
            if (!e.found) break;
            topic.examples.emplace_back(parse_id_attr(e.attrs), normalize_ws(e.body));
            pos = entities.body.find("</entity>", pos) + 1;
        }
    }
    if (Element cats = find_element(root.body, "categories"); cats.found) {
        std::size_t pos = 0;
        while (true) {
            Element c = find_element(cats.body, "category", pos);
            if (!c.found) break;
            topic.target_categories.emplace_back(parse_id_attr(c.attrs),
                                                 normalize_ws(c.body));
            pos = cats.body.find("</category>", pos) + 1;
        }
    }
    return topic;
}

Topic parse_topic_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_topic(buf.str(), std::filesystem::path(path).stem().string());
}

std::string serialize_topic(const Topic& topic) {
    std::ostringstream out;
    out << "<inex_topic id=\"" << topic.id << "\">\n";
    out << "<title>" << topic.title << "</title>\n";
    out << "<description>" << topic.description << "</description>\n";
    out << "<narrative>" << topic.narrative << "</narrative>\n";
    out << "<entities>\n";
    for (const auto& [id, name] : topic.examples) {
        out << "  <entity ID=\"" << id << "\">" << name << "</entity>\n";
    }
    out << "</entities>\n<categories>\n";
    for (const auto& [id, name] : topic.target_categories) {
        out << "  <category ID=\"" << id << "\">" << name << "</category>\n";
    }
    out << "</categories>\n</inex_topic>\n";
    return out.str();
}

Qrels parse_qrels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path);
    Qrels qrels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string topic, iter, page, rel;
        if (!(fields >> topic >> iter >> page >> rel) ||
            page.find_first_not_of("0123456789") != std::string::npos ||
            (rel != "0" && rel != "1")) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": malformed qrels line");
        }
        auto& set = qrels[topic];  // rel=0 still registers the topic
        if (rel == "1") {
            set.insert(static_cast<PageId>(std::stoul(page)));
        }
    }
    return qrels;
}

}  // namespace entrank
