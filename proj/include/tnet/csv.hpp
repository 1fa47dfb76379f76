#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tnet::csv {

/// Parse error carrying the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class Row {
public:
    Row(std::size_t line, std::vector<std::string_view> fields) : line_(line), fields_(std::move(fields)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t size() const noexcept { return fields_.size(); }
    std::string_view operator[](std::size_t i) const { return fields_.at(i); }

    template <class T>
    T get(std::size_t i) const
    {
        const auto text = fields_.at(i);
        T value{};
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
            throw ParseError(line_, "malformed field " + std::to_string(i + 1) + " '" + std::string(text) + "'");
        }
        return value;
    }

private:
    std::size_t line_;
    std::vector<std::string_view> fields_;
};

/// Minimal comma-separated reader for the project's flat numeric files: no
/// quoting, exact header match, fixed column count, blank lines skipped.
class Reader {
public:
    Reader(std::istream& in, std::vector<std::string> header) : in_(in), columns_(header.size())
    {
        std::string first;
        if (!std::getline(in_, first)) throw ParseError(1, "missing header");
        line_ = 1;
        strip_cr(first);
        std::string expected;
        for (std::size_t i = 0; i < header.size(); ++i) expected += (i ? "," : "") + header[i];
        if (first != expected) throw ParseError(1, "expected header '" + expected + "', got '" + first + "'");
    }

    std::optional<Row> next()
    {
        while (std::getline(in_, buffer_)) {
            ++line_;
            strip_cr(buffer_);
            if (buffer_.empty()) continue;
            std::vector<std::string_view> fields;
            std::string_view rest(buffer_);
            for (;;) {
                const auto comma = rest.find(',');
                fields.push_back(rest.substr(0, comma));
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
            if (fields.size() != columns_) {
                fail("expected " + std::to_string(columns_) + " fields, got " + std::to_string(fields.size()));
            }
            return Row(line_, std::move(fields));
        }
        return std::nullopt;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

    std::size_t line() const noexcept { return line_; }

private:
    static void strip_cr(std::string& s)
    {
        if (!s.empty() && s.back() == '\r') s.pop_back();
    }

    std::istream& in_;
    std::size_t columns_;
    std::size_t line_ = 0;
    std::string buffer_;
};

} // namespace tnet::csv
