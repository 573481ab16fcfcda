#include "orbitfed/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orbitfed::toml {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strip a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("toml: line " + std::to_string(line) + ": " + msg);
}

} // namespace

bool Document::has(const std::string& table, const std::string& key) const {
    auto t = tables.find(table);
    return t != tables.end() && t->second.count(key) > 0;
}

std::optional<std::string> Document::get_string(const std::string& table,
                                                const std::string& key) const {
    auto t = tables.find(table);
    if (t == tables.end()) return std::nullopt;
    auto k = t->second.find(key);
    if (k == t->second.end()) return std::nullopt;
    return k->second;
}

std::optional<double> Document::get_double(const std::string& table,
                                           const std::string& key) const {
    auto raw = get_string(table, key);
    if (!raw) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(raw->c_str(), &end);
    if (end == raw->c_str() || *end != '\0') {
        throw std::runtime_error("toml: key " + table + "." + key +
                                 " is not a number: " + *raw);
    }
    return v;
}

std::optional<long long> Document::get_int(const std::string& table,
                                           const std::string& key) const {
    auto raw = get_string(table, key);
    if (!raw) return std::nullopt;
    char* end = nullptr;
    const long long v = std::strtoll(raw->c_str(), &end, 10);
    if (end == raw->c_str() || *end != '\0') {
        throw std::runtime_error("toml: key " + table + "." + key +
                                 " is not an integer: " + *raw);
    }
    return v;
}

std::optional<bool> Document::get_bool(const std::string& table,
                                       const std::string& key) const {
    auto raw = get_string(table, key);
    if (!raw) return std::nullopt;
    if (*raw == "true") return true;
    if (*raw == "false") return false;
    throw std::runtime_error("toml: key " + table + "." + key +
                             " is not a boolean: " + *raw);
}

Document parse(const std::string& text) {
    Document doc;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated table header");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) fail(lineno, "empty table name");
            if (current.find('.') != std::string::npos) {
                fail(lineno, "nested tables are not supported");
            }
            doc.tables[current];
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (value.empty()) fail(lineno, "empty value for key " + key);
        if (value.front() == '[') fail(lineno, "arrays are not supported");
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') {
                fail(lineno, "unterminated string for key " + key);
            }
            value = value.substr(1, value.size() - 2);
        }
        if (doc.tables[current].count(key)) {
            fail(lineno, "duplicate key " + key);
        }
        doc.tables[current][key] = value;
    }
    return doc;
}

Document parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

} // namespace orbitfed::toml
