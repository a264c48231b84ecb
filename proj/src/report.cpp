#include "quadcycle/report.hpp"

#include <cstdio>

namespace quadcycle {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json Json::object() {
    Json j;
    j.type_ = Type::object;
    return j;
}

Json Json::array() {
    Json j;
    j.type_ = Type::array;
    return j;
}

Json Json::number(double v) {
    Json j;
    j.type_ = Type::number;
    j.num_ = v;
    return j;
}

Json Json::integer(long long v) {
    Json j;
    j.type_ = Type::integer;
    j.int_ = v;
    return j;
}

Json Json::boolean(bool v) {
    Json j;
    j.type_ = Type::boolean;
    j.bool_ = v;
    return j;
}

Json Json::string(std::string v) {
    Json j;
    j.type_ = Type::string;
    j.str_ = std::move(v);
    return j;
}

Json& Json::operator[](const std::string& key) {
    if (type_ == Type::null) type_ = Type::object;
    for (auto& [k, v] : members_)
        if (k == key) return v;
    members_.emplace_back(key, Json{});
    return members_.back().second;
}

Json& Json::push(Json v) {
    if (type_ == Type::null) type_ = Type::array;
    items_.push_back(std::move(v));
    return *this;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

} // namespace

void Json::dump_to(std::string& out, int indent, int depth) const {
    switch (type_) {
        case Type::null: out += "null"; return;
        case Type::number: out += fmt17(num_); return;
        case Type::integer: out += std::to_string(int_); return;
        case Type::boolean: out += bool_ ? "true" : "false"; return;
        case Type::string: append_escaped(out, str_); return;
        case Type::array: {
            if (items_.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            for (std::size_t i = 0; i < items_.size(); ++i) {
                if (i) out += ',';
                newline_indent(out, indent, depth + 1);
                items_[i].dump_to(out, indent, depth + 1);
            }
            newline_indent(out, indent, depth);
            out += ']';
            return;
        }
        case Type::object: {
            if (members_.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            for (std::size_t i = 0; i < members_.size(); ++i) {
                if (i) out += ',';
                newline_indent(out, indent, depth + 1);
                append_escaped(out, members_[i].first);
                out += indent > 0 ? ": " : ":";
                members_[i].second.dump_to(out, indent, depth + 1);
            }
            newline_indent(out, indent, depth);
            out += '}';
            return;
        }
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

} // namespace quadcycle
