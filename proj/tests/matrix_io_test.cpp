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

#include "qcoh/matrix_io.hpp"

#include <sstream>

#include "gtest/gtest.h"
#include "qcoh/haar.hpp"

using namespace qcoh;

namespace {

int parse_error_line(const std::string &text) {
    std::istringstream in(text);
    try {
        read_matrix(in);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        const std::string msg = e.what();
        const auto pos = msg.find("line ");
        EXPECT_NE(pos, std::string::npos) << msg;
        return std::stoi(msg.substr(pos + 5));
    }
    ADD_FAILURE() << "no parse error for:\n" << text;
    return -1;
}

}  // namespace

TEST(parse_complex, syntax) {
    EXPECT_EQ(parse_complex("0.5"), Complex(0.5, 0));
    EXPECT_EQ(parse_complex("-2j"), Complex(0, -2));
    EXPECT_EQ(parse_complex("1+2j"), Complex(1, 2));
    EXPECT_EQ(parse_complex("1-2j"), Complex(1, -2));
    EXPECT_EQ(parse_complex("1 - 2j"), Complex(1, -2));
    EXPECT_EQ(parse_complex("+1e-3+2.5e2j"), Complex(1e-3, 250));
    EXPECT_EQ(parse_complex("3+j"), Complex(3, 1));
    EXPECT_THROW(parse_complex("abc"), Error);
    EXPECT_THROW(parse_complex("1+2k"), Error);
}

TEST(read_matrix, entries_and_layout) {
    std::istringstream in(
        "# counterexample\n"
        "2\n"
        "0.5 0.05+0j\n"
        "\n"
        "0.05 - 0j   0.5\n");
    const Matrix m = read_matrix(in);
    ASSERT_EQ(m.rows(), 2);
    EXPECT_EQ(m(0, 1), Complex(0.05, 0));
    EXPECT_EQ(m(1, 0), Complex(0.05, 0));
    EXPECT_EQ(m(1, 1), Complex(0.5, 0));

    std::istringstream signs("2\n1 -2\n3 +4j 5\n");
    const Matrix s = read_matrix(signs);
    EXPECT_EQ(s(0, 1), Complex(-2, 0));
    EXPECT_EQ(s(1, 0), Complex(3, 4));
    EXPECT_EQ(s(1, 1), Complex(5, 0)) << "3 +4j is one entry";
}

TEST(read_matrix, errors_name_the_line) {
    EXPECT_EQ(parse_error_line("2\n1 0\n0 1 5\n"), 3);
    EXPECT_EQ(parse_error_line("3\n1 0 0\n0 1\n0 0 1\n"), 3);
    EXPECT_EQ(parse_error_line("2\n1 0\n"), 2);
    EXPECT_EQ(parse_error_line("two\n1 0\n0 1\n"), 1);
    EXPECT_EQ(parse_error_line("2\n1 0\n0 x\n"), 3);
    EXPECT_EQ(parse_error_line("1\n1\n2\n"), 3);
}

TEST(format_matrix, round_trips_exactly) {
    SeededGenerator g(1);
    for (Index n : {1, 3, 6}) {
        const Matrix u = sample_haar_unitary(n, g);
        std::istringstream in(format_matrix(u));
        EXPECT_EQ(read_matrix(in), u);
    }
}
