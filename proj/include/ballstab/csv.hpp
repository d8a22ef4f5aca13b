#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ballstab {

// Full round-trip formatting: 17 significant digits, C locale, '.' decimal.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using CsvCell = std::variant<double, long long, std::string>;

// RFC-4180-style writer: quoted only when needed, LF line endings,
// header always first.
class CsvWriter {
   public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<CsvCell>& cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) out_ << ',';
            first = false;
            if (std::holds_alternative<double>(c)) {
                out_ << format_double(std::get<double>(c));
            } else if (std::holds_alternative<long long>(c)) {
                out_ << std::get<long long>(c);
            } else {
                write_escaped(std::get<std::string>(c));
            }
        }
        out_ << '\n';
    }

   private:
    void write_escaped(std::string_view s) {
        if (s.find_first_of(",\"\n") == std::string_view::npos) {
            out_ << s;
            return;
        }
        out_ << '"';
        for (char ch : s) {
            if (ch == '"') out_ << '"';
            out_ << ch;
        }
        out_ << '"';
    }

    std::ostream& out_;
};

}  // namespace ballstab
