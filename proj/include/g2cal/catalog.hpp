#ifndef G2CAL_CATALOG_HPP
#define G2CAL_CATALOG_HPP

#include <map>
#include <string>
#include <vector>

#include "g2cal/liealg.hpp"

namespace g2cal {

/// One catalog algebra: the structure-equation text plus keyed known facts
/// (flags, stored forms, certificates) that the test suite re-verifies.
struct CatalogEntry {
    std::string name;
    std::string equations;
    std::map<std::string, std::string> fields;

    LieAlgebra algebra() const { return parse_structure_equations(equations); }

    bool has(const std::string& key) const { return fields.count(key) != 0; }
    const std::string& at(const std::string& key) const;
    bool flag(const std::string& key) const;  // "true"/"false", false when absent
};

/// Read-only repository of the named algebras, loaded from a directory of
/// ".lie" files (env G2CAL_CATALOG overrides the built-in location).
class Catalog {
public:
    explicit Catalog(const std::string& directory);

    static const Catalog& builtin();
    static std::string default_directory();

    const CatalogEntry& get(const std::string& name) const;
    std::vector<std::string> list(const std::map<std::string, std::string>& filter = {}) const;
    const std::vector<CatalogEntry>& all() const { return entries_; }

private:
    std::vector<CatalogEntry> entries_;
    std::map<std::string, std::size_t> index_;
};

/// Instantiates a one-parameter family entry at a rational parameter value
/// (textual substitution into the stored pattern).
LieAlgebra family_algebra(const CatalogEntry& entry, const Scalar& alpha);

/// Parses a matrix literal: "diag(a,b,...)" or "[[a,b,...],[...],...]"
/// with scalar-literal entries.
ExactMatrix parse_matrix_literal(const std::string& text);

/// Parses a time expression: "2*pi", "pi", "ln(<scalar>)", or a scalar
/// literal; "ln" accepts "(p+q*sqrt(m))/(r+s*sqrt(m))"-style arguments.
double parse_time_expr(const std::string& text);

}  // namespace g2cal

#endif
