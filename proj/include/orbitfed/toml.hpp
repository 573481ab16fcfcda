#pragma once

#include <map>
#include <optional>
#include <string>

namespace orbitfed::toml {

// Minimal TOML subset: [tables], key = value with strings, numbers and
// booleans, '#' comments. Enough for flat scenario files; nested tables and
// arrays are rejected with a diagnostic.
struct Document {
    // table -> key -> raw value text (strings unquoted)
    std::map<std::string, std::map<std::string, std::string>> tables;

    bool has(const std::string& table, const std::string& key) const;
    std::optional<std::string> get_string(const std::string& table,
                                          const std::string& key) const;
    std::optional<double> get_double(const std::string& table,
                                     const std::string& key) const;
    std::optional<long long> get_int(const std::string& table,
                                     const std::string& key) const;
    std::optional<bool> get_bool(const std::string& table,
                                 const std::string& key) const;
};

// Throws std::runtime_error with a line-numbered message on malformed input.
Document parse(const std::string& text);
Document parse_file(const std::string& path);

} // namespace orbitfed::toml
