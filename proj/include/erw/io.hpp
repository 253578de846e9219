#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Minimal structured output helpers.  All floating-point values serialize
// with 17 significant digits so every double round-trips exactly.

namespace erw {

// %.17g rendering (shortest form is not enough: 17 digits are required for
// lossless round-trip of arbitrary doubles).
std::string format_double(double v);

// Insertion-ordered flat JSON object writer.
class JsonWriter {
public:
    JsonWriter& field(const std::string& key, double value);
    JsonWriter& field(const std::string& key, std::uint64_t value);
    JsonWriter& field(const std::string& key, int value);
    JsonWriter& field(const std::string& key, bool value);
    JsonWriter& field(const std::string& key, const std::string& value);
    JsonWriter& field(const std::string& key, const char* value);
    JsonWriter& field(const std::string& key, const std::vector<double>& values);
    std::string str() const;

private:
    void sep();
    std::string body_;
};

}  // namespace erw
