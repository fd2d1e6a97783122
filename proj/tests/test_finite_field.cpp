/*
   Copyright 2026 The dpcover Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <set>

#include <gtest/gtest.h>

#include "dpcover/finite_field.hpp"

using namespace dpcover;

namespace {

std::set<std::uint32_t> squares(const FieldSpec& F) {
    std::set<std::uint32_t> s;
    for (std::uint32_t b = 1; b < F.q(); ++b) s.insert(F.mul({b}, {b}).code);
    return s;
}

}  // namespace

TEST(FieldSpec, PrimeField) {
    FieldSpec F(5, 1);
    EXPECT_EQ(F.q(), 5u);
    EXPECT_EQ(F.mul(F.from_int(2), F.from_int(3)), F.one());
    EXPECT_EQ(F.from_int(-1), F.from_int(4));
}

TEST(FieldSpec, ModulusIsSmallestIrreducible) {
    FieldSpec F(3, 2);
    EXPECT_EQ(F.q(), 9u);
    EXPECT_EQ(F.modulus(), (std::vector<std::int64_t>{1, 0, 1}));
    // x^2 + a x + b over F_3 is irreducible iff it has no root; check the
    // lexicographic minimality of (b, a) directly.
    for (std::int64_t b = 0; b < 3; ++b)
        for (std::int64_t a = 0; a < 3; ++a) {
            if (std::make_pair(b, a) >= std::make_pair<std::int64_t, std::int64_t>(1, 0)) continue;
            bool has_root = false;
            for (std::int64_t x = 0; x < 3; ++x) has_root |= (x * x + a * x + b) % 3 == 0;
            EXPECT_TRUE(has_root) << "x^2 + " << a << "x + " << b;
        }
}

TEST(FieldSpec, ExtensionMultiplication) {
    FieldSpec F(3, 2);
    const FieldElement x = F.from_coeffs({0, 1});
    EXPECT_EQ(F.mul(x, x), F.from_int(2));
}

TEST(FieldSpec, RejectsBadParameters) {
    EXPECT_THROW(FieldSpec(2, 1), InvalidArgument);
    EXPECT_THROW(FieldSpec(9, 1), InvalidArgument);
    EXPECT_THROW(FieldSpec(5, 0), InvalidArgument);
    EXPECT_THROW(FieldSpec::from_order(15), InvalidArgument);
}

TEST(FieldSpec, ChiExamples) {
    FieldSpec F(5, 1);
    EXPECT_EQ(F.chi(F.one()), 1);
    EXPECT_EQ(F.chi(F.from_int(2)), -1);
    EXPECT_EQ(F.chi(F.from_int(-1)), 1);
    EXPECT_THROW(F.chi(F.zero()), MathError);
    EXPECT_THROW(F.inv(F.zero()), MathError);
}

class FieldOrder : public ::testing::TestWithParam<int> {};

TEST_P(FieldOrder, ChiAgreesWithSquareSet) {
    FieldSpec F = FieldSpec::from_order(GetParam());
    const auto sq = squares(F);
    EXPECT_EQ(sq.size(), (F.q() - 1) / 2);
    for (std::uint32_t a = 1; a < F.q(); ++a) EXPECT_EQ(F.chi({a}), sq.count(a) ? 1 : -1);
}

TEST_P(FieldOrder, ChiIsMultiplicativeAndFrobeniusInvariant) {
    FieldSpec F = FieldSpec::from_order(GetParam());
    for (std::uint32_t a = 1; a < F.q(); ++a) {
        EXPECT_EQ(F.chi(F.pow({a}, F.p())), F.chi({a}));
        for (std::uint32_t b = 1; b < F.q(); ++b) EXPECT_EQ(F.chi(F.mul({a}, {b})), F.chi({a}) * F.chi({b}));
    }
}

TEST_P(FieldOrder, FieldLaws) {
    FieldSpec F = FieldSpec::from_order(GetParam());
    for (std::uint32_t a = 1; a < F.q(); ++a) {
        EXPECT_EQ(F.pow({a}, F.q() - 1), F.one());
        EXPECT_EQ(F.mul({a}, F.inv({a})), F.one());
        EXPECT_EQ(F.add({a}, F.neg({a})), F.zero());
    }
}

TEST_P(FieldOrder, MinusOneIsSquareIffOneModFour) {
    FieldSpec F = FieldSpec::from_order(GetParam());
    EXPECT_EQ(F.chi(F.from_int(-1)) == 1, F.q() % 4 == 1);
}

INSTANTIATE_TEST_SUITE_P(Orders, FieldOrder, ::testing::Values(3, 5, 7, 9, 11, 13, 17, 25, 27));

TEST(FieldSpec, TextForm) {
    EXPECT_EQ(FieldSpec(5, 1).to_string({3}), "3");
    FieldSpec F(3, 2);
    EXPECT_EQ(F.to_string(F.from_coeffs({2, 1})), "2,1");
}
