#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tangenttri::cli {

/// Shortest form is not used: every number is printed with 17 significant
/// digits so output can be compared byte for byte.
std::string format_number(double v);

/// Minimal streaming JSON writer with two-space indentation. Non-finite
/// numbers are written as null.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(std::string_view s);

  template <class T>
  JsonWriter& field(std::string_view name, const T& v) {
    key(name);
    return value(v);
  }

  /// Terminates the document with a newline.
  void finish();

 private:
  struct Level {
    bool is_object;
    bool empty;
  };

  void before_value();
  void newline_indent();
  void write_string(std::string_view s);
  JsonWriter& open(char bracket, bool is_object);
  JsonWriter& close(char bracket);

  std::ostream& os_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

}  // namespace tangenttri::cli
