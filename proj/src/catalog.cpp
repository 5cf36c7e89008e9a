#include "g2cal/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "g2cal/seqparse.hpp"

#ifndef G2CAL_SOURCE_CATALOG
#define G2CAL_SOURCE_CATALOG ""
#endif

namespace g2cal {

const std::string& CatalogEntry::at(const std::string& key) const {
    auto it = fields.find(key);
    if (it == fields.end())
        throw UnknownName("catalog entry '" + name + "' has no field '" + key + "'");
    return it->second;
}

bool CatalogEntry::flag(const std::string& key) const {
    auto it = fields.find(key);
    return it != fields.end() && it->second == "true";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

CatalogEntry load_entry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open catalog file " + path.string());
    CatalogEntry entry;
    std::string line;
    std::string pending_key;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        // continuation lines start with whitespace
        if (!line.empty() && (line[0] == ' ' || line[0] == '\t') && !pending_key.empty()) {
            entry.fields[pending_key] += trim(line);
            continue;
        }
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        const std::string key = trim(line.substr(0, colon));
        const std::string value = trim(line.substr(colon + 1));
        if (key == "name")
            entry.name = value;
        else if (key == "equations")
            entry.equations = value;
        else
            entry.fields[key] = value;
        pending_key = (key == "name" || key == "equations") ? "" : key;
    }
    if (entry.name.empty() || entry.equations.empty())
        throw Error("catalog file " + path.string() + " lacks name/equations");
    return entry;
}

}  // namespace

Catalog::Catalog(const std::string& directory) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory))
        throw Error("catalog directory not found: " + directory);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(directory))
        if (e.path().extension() == ".lie") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        CatalogEntry entry = load_entry(f);
        index_[entry.name] = entries_.size();
        entries_.push_back(std::move(entry));
    }
    if (entries_.empty()) throw Error("catalog directory is empty: " + directory);
}

std::string Catalog::default_directory() {
    if (const char* env = std::getenv("G2CAL_CATALOG")) return env;
    return G2CAL_SOURCE_CATALOG;
}

const Catalog& Catalog::builtin() {
    static Catalog catalog(default_directory());
    return catalog;
}

const CatalogEntry& Catalog::get(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownName("unknown catalog name: " + name);
    return entries_[it->second];
}

std::vector<std::string> Catalog::list(const std::map<std::string, std::string>& filter) const {
    std::vector<std::string> names;
    for (const auto& e : entries_) {
        bool ok = true;
        for (const auto& [k, v] : filter) {
            if (k == "name") {
                ok = ok && e.name == v;
            } else {
                auto it = e.fields.find(k);
                ok = ok && it != e.fields.end() && it->second == v;
            }
        }
        if (ok) names.push_back(e.name);
    }
    return names;
}

LieAlgebra family_algebra(const CatalogEntry& entry, const Scalar& alpha) {
    if (!entry.has("family_pattern"))
        throw UnknownName("catalog entry '" + entry.name + "' is not a parameterized family");
    if (!(alpha.sign() > 0))
        throw Error("family parameter must be positive for " + entry.name);
    std::string pattern = entry.at("family_pattern");
    const std::string value = "(" + alpha.to_string() + ")";
    std::string out;
    for (std::size_t i = 0; i < pattern.size();) {
        if (pattern.compare(i, 5, "alpha") == 0) {
            out += value;
            i += 5;
        } else {
            out += pattern[i];
            ++i;
        }
    }
    return parse_structure_equations(out);
}

ExactMatrix parse_matrix_literal(const std::string& text) {
    const std::string s = trim(text);
    auto split_top = [](const std::string& body) {
        std::vector<std::string> parts;
        int depth = 0;
        std::string cur;
        for (char ch : body) {
            if (ch == '(' || ch == '[') ++depth;
            if (ch == ')' || ch == ']') --depth;
            if (ch == ',' && depth == 0) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!trim(cur).empty()) parts.push_back(cur);
        return parts;
    };

    if (s.rfind("diag(", 0) == 0 && s.back() == ')') {
        auto parts = split_top(s.substr(5, s.size() - 6));
        ExactMatrix M(parts.size(), parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i)
            M(i, i) = parse_scalar_literal(trim(parts[i]));
        return M;
    }
    if (s.size() >= 4 && s.front() == '[' && s.back() == ']') {
        auto rows = split_top(s.substr(1, s.size() - 2));
        std::vector<std::vector<Scalar>> data;
        for (auto& row : rows) {
            const std::string r = trim(row);
            if (r.size() < 2 || r.front() != '[' || r.back() != ']')
                throw SyntaxError("matrix rows must be bracketed", 0);
            std::vector<Scalar> vals;
            for (auto& cell : split_top(r.substr(1, r.size() - 2)))
                vals.push_back(parse_scalar_literal(trim(cell)));
            data.push_back(std::move(vals));
        }
        if (data.empty()) throw SyntaxError("empty matrix", 0);
        ExactMatrix M(data.size(), data[0].size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data[i].size() != data[0].size())
                throw SyntaxError("ragged matrix rows", 0);
            for (std::size_t j = 0; j < data[i].size(); ++j) M(i, j) = data[i][j];
        }
        return M;
    }
    throw SyntaxError("expected diag(...) or [[...],...] matrix literal", 0);
}

double parse_time_expr(const std::string& text) {
    const std::string s = trim(text);
    if (s == "pi") return M_PI;
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "*pi") == 0)
        return parse_scalar_literal(s.substr(0, s.size() - 3)).to_double() * M_PI;
    if (s.rfind("ln(", 0) == 0 && s.back() == ')') {
        const std::string inner = trim(s.substr(3, s.size() - 4));
        // accept "(num)/(den)" or "(num)/den" with scalar-literal pieces
        Scalar value(0);
        if (!inner.empty() && inner.front() == '(') {
            int depth = 0;
            std::size_t close = std::string::npos;
            for (std::size_t i = 0; i < inner.size(); ++i) {
                if (inner[i] == '(') ++depth;
                if (inner[i] == ')' && --depth == 0) {
                    close = i;
                    break;
                }
            }
            if (close == std::string::npos) throw SyntaxError("unbalanced parentheses", 0);
            value = parse_scalar_literal(inner.substr(1, close - 1));
            std::string rest = trim(inner.substr(close + 1));
            if (!rest.empty()) {
                if (rest[0] != '/') throw SyntaxError("expected '/' in ln argument", 0);
                rest = trim(rest.substr(1));
                if (!rest.empty() && rest.front() == '(' && rest.back() == ')')
                    rest = rest.substr(1, rest.size() - 2);
                value /= parse_scalar_literal(rest);
            }
        } else {
            value = parse_scalar_literal(inner);
        }
        const double v = value.to_double();
        if (!(v > 0)) throw Error("ln argument must be positive");
        return std::log(v);
    }
    return parse_scalar_literal(s).to_double();
}

}  // namespace g2cal
