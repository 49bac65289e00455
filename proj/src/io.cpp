#include <covenant/io.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace covenant {

std::string fmt_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  element_prefix();
  out_ += '{';
  stack_.push_back({false, true});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  if (stack_.empty() || stack_.back().array || key_pending_)
    throw std::logic_error("JsonWriter: unbalanced end_object");
  const bool empty = stack_.back().first;
  stack_.pop_back();
  if (!empty) {
    out_ += '\n';
    indent(stack_.size());
  }
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  element_prefix();
  out_ += '[';
  stack_.push_back({true, true});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  if (stack_.empty() || !stack_.back().array)
    throw std::logic_error("JsonWriter: unbalanced end_array");
  const bool empty = stack_.back().first;
  stack_.pop_back();
  if (!empty) {
    out_ += '\n';
    indent(stack_.size());
  }
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  if (stack_.empty() || stack_.back().array || key_pending_)
    throw std::logic_error("JsonWriter: key outside object");
  element_prefix();
  value_quoted(k);
  out_ += ": ";
  key_pending_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  element_prefix();
  if (std::isfinite(v))
    out_ += fmt_sig(v);
  else
    out_ += "null";  // JSON has no NaN/inf
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  element_prefix();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  element_prefix();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  element_prefix();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  element_prefix();
  value_quoted(v);
  return *this;
}

std::string JsonWriter::str() const {
  if (!stack_.empty()) throw std::logic_error("JsonWriter: unclosed containers");
  return out_ + "\n";
}

void JsonWriter::element_prefix() {
  if (key_pending_) {
    key_pending_ = false;
    return;
  }
  if (stack_.empty()) return;
  if (!stack_.back().first) out_ += ',';
  stack_.back().first = false;
  out_ += '\n';
  indent(stack_.size());
}

void JsonWriter::indent(std::size_t depth) { out_.append(2 * depth, ' '); }

void JsonWriter::value_quoted(std::string_view v) {
  out_ += '"';
  for (char ch : v) {
    switch (ch) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out_ += buf;
        } else {
          out_ += ch;
        }
    }
  }
  out_ += '"';
}

}  // namespace covenant
