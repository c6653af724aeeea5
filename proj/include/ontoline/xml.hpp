#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoline/error.hpp"

// Minimal XML reader/writer covering exactly what the ReqIF and OWL subsets
// need: elements, attributes, text content, comments, the five named
// entities. Mixed content is not supported; an element holds either child
// elements or text.

namespace ontoline::xml {

struct Node {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<Node> children;
    std::string text;

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attrs)
            if (k == key) return &v;
        return nullptr;
    }

    const Node* child(std::string_view name_) const {
        for (const auto& c : children)
            if (c.name == name_) return &c;
        return nullptr;
    }

    std::vector<const Node*> children_named(std::string_view name_) const {
        std::vector<const Node*> out;
        for (const auto& c : children)
            if (c.name == name_) out.push_back(&c);
        return out;
    }
};

inline std::string escape_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string escape_attr(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Node parse_document() {
        skip_misc();
        if (eof()) fail("document has no root element");
        Node root = parse_element();
        skip_misc();
        if (!eof()) fail("content after root element");
        return root;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    [[noreturn]] void fail(const std::string& what) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i)
            if (text_[i] == '\n') ++line;
        raise("xml", "MalformedXml", what + " (line " + std::to_string(line) + ")");
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
            ++pos_;
    }

    // Whitespace, prolog, comments.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<?")) {
                auto end = text_.find("?>", pos_);
                if (end == std::string_view::npos) fail("unterminated processing instruction");
                pos_ = end + 2;
            } else if (starts_with("<!--")) {
                auto end = text_.find("-->", pos_);
                if (end == std::string_view::npos) fail("unterminated comment");
                pos_ = end + 3;
            } else {
                return;
            }
        }
    }

    static bool is_name_char(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '-' || c == '_' || c == '.' || c == ':';
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (!eof() && is_name_char(peek())) ++pos_;
        if (pos_ == start) fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string unescape(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size();) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            auto semi = raw.find(';', i);
            if (semi == std::string_view::npos) fail("unterminated entity reference");
            std::string_view ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "amp") out += '&';
            else if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else fail("unknown entity '&" + std::string(ent) + ";'");
            i = semi + 1;
        }
        return out;
    }

    Node parse_element() {
        if (eof() || peek() != '<') fail("expected '<'");
        ++pos_;
        Node node;
        node.name = parse_name();
        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag");
            if (starts_with("/>")) {
                pos_ += 2;
                return node;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string key = parse_name();
            skip_ws();
            if (eof() || peek() != '=') fail("expected '=' after attribute name");
            ++pos_;
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
            char quote = peek();
            ++pos_;
            auto end = text_.find(quote, pos_);
            if (end == std::string_view::npos) fail("unterminated attribute value");
            node.attrs.emplace_back(key, unescape(text_.substr(pos_, end - pos_)));
            pos_ = end + 1;
        }
        // Content: either child elements (whitespace/comments between) or text.
        std::size_t content_start = pos_;
        for (;;) {
            if (eof()) fail("unterminated element '" + node.name + "'");
            if (peek() == '<') {
                if (starts_with("</")) {
                    if (node.children.empty()) {
                        std::string_view raw = text_.substr(content_start, pos_ - content_start);
                        node.text = unescape(raw);
                    }
                    pos_ += 2;
                    std::string closing = parse_name();
                    if (closing != node.name)
                        fail("mismatched close tag '" + closing + "' for '" + node.name + "'");
                    skip_ws();
                    if (eof() || peek() != '>') fail("expected '>' in close tag");
                    ++pos_;
                    return node;
                }
                if (starts_with("<!--")) {
                    auto end = text_.find("-->", pos_);
                    if (end == std::string_view::npos) fail("unterminated comment");
                    pos_ = end + 3;
                    continue;
                }
                node.children.push_back(parse_element());
                skip_ws();
                continue;
            }
            ++pos_;
        }
    }
};

inline void write_node(const Node& node, std::string& out, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out += indent + "<" + node.name;
    for (const auto& [k, v] : node.attrs) out += " " + k + "=\"" + escape_attr(v) + "\"";
    if (node.children.empty() && node.text.empty()) {
        out += "/>\n";
        return;
    }
    if (node.children.empty()) {
        out += ">" + escape_text(node.text) + "</" + node.name + ">\n";
        return;
    }
    out += ">\n";
    for (const auto& child : node.children) write_node(child, out, depth + 1);
    out += indent + "</" + node.name + ">\n";
}

}  // namespace detail

inline Node parse(std::string_view text) { return detail::Parser(text).parse_document(); }

inline std::string serialize(const Node& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    detail::write_node(root, out, 0);
    return out;
}

}  // namespace ontoline::xml
