#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace quadcycle {

/// Round-trip-safe formatting: every emitted number carries 17 significant
/// digits so downstream tools reproduce the exact double.
std::string fmt17(double v);

/// Minimal ordered JSON document builder for reports.  Insertion order is
/// preserved and numbers are printed via fmt17, which keeps repeated runs
/// byte-identical.
class Json {
public:
    Json() = default;

    static Json object();
    static Json array();
    static Json number(double v);
    static Json integer(long long v);
    static Json boolean(bool v);
    static Json string(std::string v);

    /// Object access: inserts the key on first use (order preserved).
    Json& operator[](const std::string& key);

    /// Array append.
    Json& push(Json v);

    bool is_object() const { return type_ == Type::object; }
    bool is_array() const { return type_ == Type::array; }

    std::string dump(int indent = 2) const;

private:
    enum class Type { null, object, array, number, integer, boolean, string };
    Type type_ = Type::null;
    double num_ = 0.0;
    long long int_ = 0;
    bool bool_ = false;
    std::string str_;
    std::vector<std::pair<std::string, Json>> members_;
    std::vector<Json> items_;

    void dump_to(std::string& out, int indent, int depth) const;
};

/// One CSV row from already-formatted cells.
std::string csv_row(const std::vector<std::string>& cells);

} // namespace quadcycle
