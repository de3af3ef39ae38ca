#include "core/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace dwl::config {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// removes a trailing comment that is not inside a string
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
              c == '-'))
            return false;
    return true;
}

Value parse_scalar(const std::string& tok, int line, const std::string& field) {
    Value v;
    v.line = line;
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
        v.kind = Value::Kind::string;
        v.text = tok.substr(1, tok.size() - 2);
        return v;
    }
    if (tok == "true" || tok == "false") {
        v.kind = Value::Kind::boolean;
        v.boolean = tok == "true";
        return v;
    }
    char* end = nullptr;
    v.number = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ConfigError(line, field, "cannot parse value '" + tok + "'");
    v.kind = Value::Kind::number;
    return v;
}

Value parse_value(const std::string& raw, int line, const std::string& field) {
    std::string tok = strip(raw);
    if (tok.empty()) throw ConfigError(line, field, "missing value");
    if (tok.front() == '[') {
        if (tok.back() != ']')
            throw ConfigError(line, field, "unterminated array");
        Value v;
        v.kind = Value::Kind::array;
        v.line = line;
        std::string body = tok.substr(1, tok.size() - 2);
        std::string item;
        bool in_string = false;
        for (char c : body) {
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                if (!strip(item).empty())
                    v.array.push_back(parse_scalar(strip(item), line, field));
                item.clear();
            } else {
                item.push_back(c);
            }
        }
        if (!strip(item).empty())
            v.array.push_back(parse_scalar(strip(item), line, field));
        return v;
    }
    return parse_scalar(tok, line, field);
}

} // namespace

Tree Tree::parse(const std::string& text) {
    Tree t;
    t.source_ = text;
    std::istringstream in(text);
    std::string raw;
    std::string prefix;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = strip(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(line, "", "unterminated table header");
            prefix = strip(s.substr(1, s.size() - 2));
            if (!valid_key(prefix))
                throw ConfigError(line, prefix, "invalid table name");
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "", "expected key = value");
        std::string key = strip(s.substr(0, eq));
        if (!valid_key(key)) throw ConfigError(line, key, "invalid key");
        std::string full = prefix.empty() ? key : prefix + "." + key;
        if (t.entries_.count(full))
            throw ConfigError(line, full, "duplicate key");
        t.entries_[full] = parse_value(s.substr(eq + 1), line, full);
    }
    return t;
}

Tree Tree::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, path, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const Value* Tree::find(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

double Tree::get_number(const std::string& key, double fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::number)
        throw ConfigError(v->line, key, "expected a number");
    return v->number;
}

bool Tree::get_bool(const std::string& key, bool fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::boolean)
        throw ConfigError(v->line, key, "expected true/false");
    return v->boolean;
}

std::string Tree::get_string(const std::string& key, const std::string& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::string)
        throw ConfigError(v->line, key, "expected a quoted string");
    return v->text;
}

std::vector<double> Tree::get_numbers(const std::string& key,
                                      const std::vector<double>& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind == Value::Kind::number) return {v->number};
    if (v->kind != Value::Kind::array)
        throw ConfigError(v->line, key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& item : v->array) {
        if (item.kind != Value::Kind::number)
            throw ConfigError(item.line, key, "expected numeric array entries");
        out.push_back(item.number);
    }
    return out;
}

std::vector<std::string> Tree::children(const std::string& prefix) const {
    std::set<std::string> names;
    std::string p = prefix.empty() ? "" : prefix + ".";
    for (const auto& [key, value] : entries_) {
        if (key.rfind(p, 0) != 0) continue;
        std::string rest = key.substr(p.size());
        std::size_t dot = rest.find('.');
        if (dot != std::string::npos) names.insert(rest.substr(0, dot));
    }
    return {names.begin(), names.end()};
}

} // namespace dwl::config
