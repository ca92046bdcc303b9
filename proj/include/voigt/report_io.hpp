#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace voigt {

/// "%.17g" with the C locale; the one number format used in every CSV and
/// JSON artifact so that repeated runs are byte-identical.
std::string format_g17(double v);

/// Minimal JSON document builder for report artifacts. Object keys are
/// emitted in sorted order and numbers through format_g17. (Parsing of
/// input files uses nlohmann/json; this writer exists to keep output
/// formatting under the project's determinism rules.)
class JsonValue {
public:
    static JsonValue number(double v);
    static JsonValue integer(long long v);
    static JsonValue boolean(bool v);
    static JsonValue string(std::string v);
    static JsonValue array(std::vector<JsonValue> items = {});
    static JsonValue object();

    JsonValue& set(const std::string& key, JsonValue v); ///< object member
    JsonValue& push(JsonValue v);                        ///< array element

    std::string dump(int indent = 2) const;

private:
    enum class Kind { Number, Integer, Boolean, String, Array, Object };
    Kind kind_ = Kind::Object;
    double num_ = 0.0;
    long long int_ = 0;
    bool bool_ = false;
    std::string str_;
    std::vector<JsonValue> items_;
    std::map<std::string, JsonValue> members_;

    void write(std::string& out, int indent, int depth) const;
};

/// FNV-1a 64-bit, hex-encoded; fingerprints configs in manifests.
std::string fnv1a64_hex(const std::string& data);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace voigt
