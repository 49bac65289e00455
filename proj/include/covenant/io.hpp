#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace covenant {

// %.12g -- all human-facing numbers go through this so reruns are
// byte-identical and free of trailing representation noise.
std::string fmt_sig(double v);

// Minimal streaming JSON writer: insertion order preserved, two-space
// indentation, numbers via fmt_sig. Enough for the CLI payloads; parsing
// stays with a real JSON library on the consumer side.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(bool v);
  JsonWriter& value(long long v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }

  JsonWriter& kv(std::string_view k, double v) { return key(k).value(v); }
  JsonWriter& kv(std::string_view k, bool v) { return key(k).value(v); }
  JsonWriter& kv(std::string_view k, long long v) { return key(k).value(v); }
  JsonWriter& kv(std::string_view k, std::uint64_t v) { return key(k).value(v); }
  JsonWriter& kv(std::string_view k, std::string_view v) { return key(k).value(v); }
  JsonWriter& kv(std::string_view k, const char* v) { return key(k).value(std::string_view(v)); }

  std::string str() const;

 private:
  struct Level {
    bool array;
    bool first;
  };

  void element_prefix();
  void indent(std::size_t depth);
  void value_quoted(std::string_view v);

  std::string out_;
  std::vector<Level> stack_;
  bool key_pending_ = false;
};

}  // namespace covenant
