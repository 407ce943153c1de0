#include "ecn/xml.hpp"

#include <cctype>

#include "ecn/errors.hpp"

namespace ecn::xml {

namespace {

class Parser {
public:
    explicit Parser(const std::string& input) : input_(input) {}

    Document run() {
        Document doc;
        skip_prolog();
        doc.root = parse_element();
        skip_misc();
        if (pos_ != input_.size()) fail("trailing content after document element");
        return doc;
    }

private:
    const std::string& input_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("xml: " + message + " at offset " + std::to_string(pos_));
    }

    bool eof() const { return pos_ >= input_.size(); }
    char peek() const { return input_[pos_]; }
    bool starts_with(const char* token) const { return input_.compare(pos_, std::char_traits<char>::length(token), token) == 0; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    void skip_until(const std::string& token, const char* what) {
        auto end = input_.find(token, pos_);
        if (end == std::string::npos) fail(std::string("unterminated ") + what);
        pos_ = end + token.size();
    }

    // XML declaration, DOCTYPE, comments and PIs before/after the root.
    void skip_prolog() {
        for (;;) {
            skip_ws();
            if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else if (starts_with("<!--")) {
                skip_until("-->", "comment");
            } else if (starts_with("<!DOCTYPE")) {
                skip_doctype();
            } else {
                return;
            }
        }
    }

    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<!--")) skip_until("-->", "comment");
            else if (starts_with("<?")) skip_until("?>", "processing instruction");
            else return;
        }
    }

    void skip_doctype() {
        // May contain an internal subset in brackets.
        int depth = 0;
        while (!eof()) {
            char c = input_[pos_++];
            if (c == '[') ++depth;
            else if (c == ']') --depth;
            else if (c == '>' && depth == 0) return;
        }
        fail("unterminated DOCTYPE");
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
               c == ':';
    }

    std::string read_name() {
        std::size_t start = pos_;
        while (!eof() && is_name_char(peek())) ++pos_;
        if (pos_ == start) fail("expected a name");
        return input_.substr(start, pos_ - start);
    }

    std::string decode_entities(const std::string& raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out.push_back(raw[i]);
                continue;
            }
            auto end = raw.find(';', i);
            if (end == std::string::npos) fail("unterminated entity reference");
            std::string entity = raw.substr(i + 1, end - i - 1);
            if (entity == "amp") out.push_back('&');
            else if (entity == "lt") out.push_back('<');
            else if (entity == "gt") out.push_back('>');
            else if (entity == "quot") out.push_back('"');
            else if (entity == "apos") out.push_back('\'');
            else if (!entity.empty() && entity[0] == '#') {
                long code = 0;
                try {
                    code = entity[1] == 'x' || entity[1] == 'X'
                               ? std::stol(entity.substr(2), nullptr, 16)
                               : std::stol(entity.substr(1));
                } catch (...) {
                    fail("bad character reference &" + entity + ";");
                }
                append_utf8(out, code);
            } else {
                fail("unknown entity &" + entity + ";");
            }
            i = end;
        }
        return out;
    }

    static void append_utf8(std::string& out, long code) {
        if (code < 0x80) {
            out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (code >> 6)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (code >> 12)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (code >> 18)));
            out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
    }

    std::unique_ptr<Element> parse_element() {
        if (eof() || peek() != '<') fail("expected an element");
        ++pos_;
        auto element = std::make_unique<Element>();
        element->name = read_name();
        parse_attributes(*element);
        skip_ws();
        if (starts_with("/>")) {
            pos_ += 2;
            return element;
        }
        if (eof() || peek() != '>') fail("malformed start tag <" + element->name + ">");
        ++pos_;
        parse_content(*element);
        return element;
    }

    void parse_attributes(Element& element) {
        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag <" + element.name + ">");
            if (peek() == '>' || starts_with("/>")) return;
            std::string key = read_name();
            skip_ws();
            if (eof() || peek() != '=') fail("attribute '" + key + "' missing '='");
            ++pos_;
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\'')) fail("attribute '" + key + "' missing quote");
            char quote = input_[pos_++];
            auto end = input_.find(quote, pos_);
            if (end == std::string::npos) fail("unterminated attribute value");
            element.attributes[key] = decode_entities(input_.substr(pos_, end - pos_));
            pos_ = end + 1;
        }
    }

    void parse_content(Element& element) {
        for (;;) {
            if (eof()) fail("unterminated element <" + element.name + ">");
            if (peek() == '<') {
                if (starts_with("</")) {
                    pos_ += 2;
                    std::string closing = read_name();
                    if (closing != element.name) {
                        fail("mismatched closing tag </" + closing + "> for <" + element.name + ">");
                    }
                    skip_ws();
                    if (eof() || peek() != '>') fail("malformed closing tag");
                    ++pos_;
                    return;
                }
                if (starts_with("<!--")) {
                    skip_until("-->", "comment");
                    continue;
                }
                if (starts_with("<![CDATA[")) {
                    pos_ += 9;
                    auto end = input_.find("]]>", pos_);
                    if (end == std::string::npos) fail("unterminated CDATA section");
                    element.text.append(input_, pos_, end - pos_);
                    pos_ = end + 3;
                    continue;
                }
                if (starts_with("<?")) {
                    skip_until("?>", "processing instruction");
                    continue;
                }
                element.children.push_back(parse_element());
                continue;
            }
            std::size_t start = pos_;
            while (!eof() && peek() != '<') ++pos_;
            element.text += decode_entities(input_.substr(start, pos_ - start));
        }
    }
};

} // namespace

const Element* Element::find(const std::string& child_name) const {
    for (const auto& child : children) {
        if (child->name == child_name) return child.get();
    }
    return nullptr;
}

std::vector<const Element*> Element::find_all(const std::string& child_name) const {
    std::vector<const Element*> out;
    for (const auto& child : children) {
        if (child->name == child_name) out.push_back(child.get());
    }
    return out;
}

std::string Element::attribute(const std::string& key, const std::string& fallback) const {
    auto it = attributes.find(key);
    return it == attributes.end() ? fallback : it->second;
}

Document parse(const std::string& input) {
    return Parser(input).run();
}

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string escape_attr(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

} // namespace ecn::xml
