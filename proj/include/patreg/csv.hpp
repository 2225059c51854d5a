#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace patreg::csv {

// RFC-4180-style: comma delimiter, double-quote quoting, "" escapes a quote,
// records end with LF or CRLF. The reader accepts any byte stream: an
// unterminated quote runs to end of input, a quote inside an unquoted field
// is kept literally. Typed validation happens downstream.

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  /// Scans one record into `fields`; false at end of input. `line` is the
  /// 1-based physical line the record started on.
  bool next_record(std::vector<std::string>& fields, std::size_t& line) {
    fields.clear();
    if (pos_ >= text_.size()) return false;
    line = line_;
    std::string field;
    bool quoted = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (quoted) {
        if (c == '"') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
            field.push_back('"');
            pos_ += 2;
          } else {
            quoted = false;
            ++pos_;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
          ++pos_;
        }
        continue;
      }
      switch (c) {
        case '"':
          if (field.empty()) {
            quoted = true;
          } else {
            field.push_back('"');
          }
          ++pos_;
          break;
        case ',':
          fields.push_back(std::move(field));
          field.clear();
          ++pos_;
          break;
        case '\r':
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
            ++pos_;
            break;  // handled by the \n case next iteration
          }
          field.push_back(c);
          ++pos_;
          break;
        case '\n':
          ++pos_;
          ++line_;
          fields.push_back(std::move(field));
          return true;
        default:
          field.push_back(c);
          ++pos_;
          break;
      }
    }
    fields.push_back(std::move(field));  // final record without trailing newline
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

inline bool needs_quoting(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void append_field(std::string& out, std::string_view field) {
  if (!needs_quoting(field)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

/// Canonical record form: minimal quoting, LF terminator.
template <typename Range>
void append_record(std::string& out, const Range& fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out.push_back(',');
    append_field(out, f);
    first = false;
  }
  out.push_back('\n');
}

}  // namespace patreg::csv
