#include "erw/io.hpp"

#include <cstdio>

namespace erw {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonWriter::sep() {
    if (!body_.empty()) body_ += ", ";
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
    sep();
    body_ += "\"" + key + "\": " + format_double(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, std::uint64_t value) {
    sep();
    body_ += "\"" + key + "\": " + std::to_string(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int value) {
    sep();
    body_ += "\"" + key + "\": " + std::to_string(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
    sep();
    body_ += "\"" + key + "\": " + (value ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
    sep();
    body_ += "\"" + key + "\": \"" + value + "\"";
    return *this;
}

// without this overload a string literal would take the bool conversion
JsonWriter& JsonWriter::field(const std::string& key, const char* value) {
    return field(key, std::string(value));
}

JsonWriter& JsonWriter::field(const std::string& key, const std::vector<double>& values) {
    sep();
    body_ += "\"" + key + "\": [";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ", ";
        body_ += format_double(values[i]);
    }
    body_ += "]";
    return *this;
}

std::string JsonWriter::str() const { return "{" + body_ + "}"; }

}  // namespace erw
