#include "voigt/report_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace voigt {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

JsonValue JsonValue::number(double v) {
    JsonValue j;
    j.kind_ = Kind::Number;
    j.num_ = v;
    return j;
}

JsonValue JsonValue::integer(long long v) {
    JsonValue j;
    j.kind_ = Kind::Integer;
    j.int_ = v;
    return j;
}

JsonValue JsonValue::boolean(bool v) {
    JsonValue j;
    j.kind_ = Kind::Boolean;
    j.bool_ = v;
    return j;
}

JsonValue JsonValue::string(std::string v) {
    JsonValue j;
    j.kind_ = Kind::String;
    j.str_ = std::move(v);
    return j;
}

JsonValue JsonValue::array(std::vector<JsonValue> items) {
    JsonValue j;
    j.kind_ = Kind::Array;
    j.items_ = std::move(items);
    return j;
}

JsonValue JsonValue::object() {
    JsonValue j;
    j.kind_ = Kind::Object;
    return j;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    members_.insert_or_assign(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    items_.push_back(std::move(v));
    return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += ch;
        }
    }
    out += '"';
}

void write_newline(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent) * depth, ' ');
}

} // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
    switch (kind_) {
        case Kind::Number:
            if (std::isfinite(num_)) {
                out += format_g17(num_);
            } else {
                out += "null";
            }
            break;
        case Kind::Integer:
            out += std::to_string(int_);
            break;
        case Kind::Boolean:
            out += bool_ ? "true" : "false";
            break;
        case Kind::String:
            write_escaped(out, str_);
            break;
        case Kind::Array: {
            out += '[';
            bool first = true;
            for (const auto& item : items_) {
                if (!first) out += ',';
                first = false;
                write_newline(out, indent, depth + 1);
                item.write(out, indent, depth + 1);
            }
            if (!items_.empty()) write_newline(out, indent, depth);
            out += ']';
            break;
        }
        case Kind::Object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : members_) {
                if (!first) out += ',';
                first = false;
                write_newline(out, indent, depth + 1);
                write_escaped(out, key);
                out += indent > 0 ? ": " : ":";
                value.write(out, indent, depth + 1);
            }
            if (!members_.empty()) write_newline(out, indent, depth);
            out += '}';
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace voigt
