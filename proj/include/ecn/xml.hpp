#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ecn::xml {

// Small DOM for the well-formed XML we consume (E-utilities responses,
// GraphML). Not a general-purpose parser: no namespaces, no external
// entities, DOCTYPE and processing instructions are skipped.
struct Element {
    std::string name;
    std::map<std::string, std::string> attributes;
    std::vector<std::unique_ptr<Element>> children;
    std::string text; // concatenated character data directly under this element

    const Element* find(const std::string& child_name) const;
    std::vector<const Element*> find_all(const std::string& child_name) const;
    std::string attribute(const std::string& key, const std::string& fallback = "") const;
};

struct Document {
    std::unique_ptr<Element> root;
};

// Throws ecn::ParseError on malformed input.
Document parse(const std::string& input);

std::string escape(const std::string& text);
std::string escape_attr(const std::string& text);

} // namespace ecn::xml
