// Copyright 2026 The qcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include "qcoh/linalg.hpp"

namespace qcoh {

/// Matrix text format:
///
///     n
///     z_11 z_12 ... z_1n
///     ...
///     z_n1 z_n2 ... z_nn
///
/// Each entry is `a`, `bj`, `a+bj` or `a-bj` (whitespace allowed around the
/// sign). Blank lines and lines starting with `#` are ignored. A basis file
/// holds the unitary whose columns are the basis vectors.
namespace detail {

class EntryScanner {
   public:
    EntryScanner(std::string_view text, int line) : text_(text), line_(line) {}

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    Complex next() {
        skip_ws();
        double first = 0.0;
        if (!read_double(first)) fail("expected a number");
        if (consume_j()) return {0.0, first};
        const std::size_t saved = pos_;
        skip_ws();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            const double sign = text_[pos_] == '-' ? -1.0 : 1.0;
            ++pos_;
            skip_ws();
            double im = 0.0;
            const std::size_t im_start = pos_;
            if (pos_ < text_.size() && text_[pos_] != '+' && text_[pos_] != '-' && read_double(im) && consume_j()) {
                return {first, sign * im};
            }
            if (im_start < text_.size() && text_[im_start] == 'j') {
                pos_ = im_start + 1;
                return {first, sign};
            }
        }
        pos_ = saved;
        if (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        }
        return {first, 0.0};
    }

    [[noreturn]] void fail(const std::string &what) const {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_) + ": " + what);
    }

   private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume_j() {
        if (pos_ < text_.size() && text_[pos_] == 'j') {
            ++pos_;
            return true;
        }
        return false;
    }

    bool read_double(double &out) {
        const char *begin = text_.data() + pos_;
        const char *end = text_.data() + text_.size();
        if (begin < end && *begin == '+') ++begin;
        const auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc()) return false;
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return true;
    }

    std::string_view text_;
    int line_;
    std::size_t pos_ = 0;
};

inline bool is_skippable(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace detail

/// Parses one complex entry; the whole string must be consumed.
inline Complex parse_complex(std::string_view text) {
    detail::EntryScanner scanner(text, 1);
    const Complex z = scanner.next();
    if (!scanner.at_end()) scanner.fail("trailing characters after complex number");
    return z;
}

inline Matrix read_matrix(std::istream &in) {
    std::string line;
    int line_no = 0;
    Index n = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_skippable(line)) continue;
        std::string_view s(line);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        long long value = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size() || value < 1) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected a positive dimension");
        }
        n = static_cast<Index>(value);
        break;
    }
    if (n < 0) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": missing dimension line");
    Matrix m(n, n);
    Index row = 0;
    while (row < n && std::getline(in, line)) {
        ++line_no;
        if (detail::is_skippable(line)) continue;
        detail::EntryScanner scanner(line, line_no);
        Index col = 0;
        while (!scanner.at_end()) {
            const Complex z = scanner.next();
            if (col >= n) scanner.fail("more than " + std::to_string(n) + " entries");
            m(row, col++) = z;
        }
        if (col != n) {
            scanner.fail("expected " + std::to_string(n) + " entries, got " + std::to_string(col));
        }
        ++row;
    }
    if (row != n) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                                               " rows, got " + std::to_string(row));
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::is_skippable(line)) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unexpected extra row");
        }
    }
    return m;
}

inline Matrix read_matrix_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return read_matrix(in);
}

inline std::string format_complex(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

inline std::string format_matrix(const Matrix &m) {
    std::ostringstream out;
    out << m.rows() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_complex(m(i, j));
        out << '\n';
    }
    return out.str();
}

}  // namespace qcoh
