#pragma once
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwl::config {

// Error with the line/field context the CLI reports on exit code 1.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& field, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) +
                             (field.empty() ? "" : " (" + field + ")") + ": " + what),
          line_(line),
          field_(field) {}
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

struct Value {
    enum class Kind { number, boolean, string, array };
    Kind kind = Kind::number;
    double number = 0.0;
    bool boolean = false;
    std::string text;
    std::vector<Value> array;
    int line = 0;
};

// Key-value tree in TOML syntax: [dotted.tables], key = value, # comments,
// values are numbers, booleans, "strings", or single-line arrays thereof.
// Keys are flattened to dotted paths.
class Tree {
public:
    static Tree parse(const std::string& text);
    static Tree parse_file(const std::string& path);

    bool has(const std::string& key) const { return entries_.count(key) > 0; }
    const Value* find(const std::string& key) const;

    double get_number(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_numbers(const std::string& key,
                                    const std::vector<double>& fallback) const;

    // immediate child table names under a dotted prefix
    std::vector<std::string> children(const std::string& prefix) const;

    const std::map<std::string, Value>& entries() const { return entries_; }
    const std::string& source_text() const { return source_; }

private:
    std::map<std::string, Value> entries_;
    std::string source_;
};

} // namespace dwl::config
