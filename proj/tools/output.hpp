#ifndef BSC_TOOLS_OUTPUT_HPP
#define BSC_TOOLS_OUTPUT_HPP

#include <charconv>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Minimal deterministic JSON/CSV emitters. Doubles are printed with 17
// significant digits through std::to_chars, so output is locale-independent,
// round-trips exactly and is byte-stable across runs.

namespace out {

inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

class Json;
using JsonArray = std::vector<Json>;
using JsonMember = std::pair<std::string, Json>;

class Json {
public:
    using Object = std::vector<JsonMember>; // insertion order preserved

    Json() : v_(nullptr) {}
    Json(std::nullptr_t) : v_(nullptr) {}
    Json(bool b) : v_(b) {}
    Json(int i) : v_(static_cast<std::int64_t>(i)) {}
    Json(std::int64_t i) : v_(i) {}
    Json(double d) : v_(d) {}
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}
    Json(JsonArray a) : v_(std::move(a)) {}
    Json(Object o) : v_(std::move(o)) {}

    static Json object() { return Json(Object{}); }
    Json& set(std::string key, Json value) {
        std::get<Object>(v_).emplace_back(std::move(key), std::move(value));
        return *this;
    }

    std::string dump(int indent = 0) const {
        std::string s;
        write(s, indent, 0);
        s.push_back('\n');
        return s;
    }

private:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, JsonArray, Object> v_;

    static void escape(std::string& s, const std::string& in) {
        s.push_back('"');
        for (char c : in) {
            switch (c) {
                case '"': s += "\\\""; break;
                case '\\': s += "\\\\"; break;
                case '\n': s += "\\n"; break;
                case '\t': s += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        s += buf;
                    } else {
                        s.push_back(c);
                    }
            }
        }
        s.push_back('"');
    }

    void write(std::string& s, int indent, int depth) const {
        const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
        const std::string pad1(static_cast<std::size_t>(indent) * (depth + 1), ' ');
        const char* nl = indent > 0 ? "\n" : "";
        if (std::holds_alternative<std::nullptr_t>(v_)) {
            s += "null";
        } else if (auto* b = std::get_if<bool>(&v_)) {
            s += *b ? "true" : "false";
        } else if (auto* i = std::get_if<std::int64_t>(&v_)) {
            s += std::to_string(*i);
        } else if (auto* d = std::get_if<double>(&v_)) {
            s += format_double(*d);
        } else if (auto* str = std::get_if<std::string>(&v_)) {
            escape(s, *str);
        } else if (auto* arr = std::get_if<JsonArray>(&v_)) {
            if (arr->empty()) { s += "[]"; return; }
            s += "[";
            s += nl;
            for (std::size_t i2 = 0; i2 < arr->size(); ++i2) {
                s += pad1;
                (*arr)[i2].write(s, indent, depth + 1);
                if (i2 + 1 < arr->size()) s += ",";
                s += nl;
            }
            s += pad;
            s += "]";
        } else if (auto* obj = std::get_if<Object>(&v_)) {
            if (obj->empty()) { s += "{}"; return; }
            s += "{";
            s += nl;
            for (std::size_t i2 = 0; i2 < obj->size(); ++i2) {
                s += pad1;
                escape(s, (*obj)[i2].first);
                s += indent > 0 ? ": " : ":";
                (*obj)[i2].second.write(s, indent, depth + 1);
                if (i2 + 1 < obj->size()) s += ",";
                s += nl;
            }
            s += pad;
            s += "}";
        }
    }
};

// CSV: header row naming every field, '.' decimal separator, one record per line.
class Csv {
public:
    explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    std::string dump() const {
        std::string s = join(header_);
        for (const auto& r : rows_) {
            s += "\n";
            s += join(r);
        }
        s += "\n";
        return s;
    }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ",";
            s += cells[i];
        }
        return s;
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace out

#endif
