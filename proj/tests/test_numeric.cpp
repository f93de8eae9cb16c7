#include <gtest/gtest.h>

#include "reeb/numeric.hpp"

using namespace reeb;

TEST(Numeric, ParsesIntegersAndFractions)
{
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1) / 2);
    EXPECT_EQ(parse_rational("4/-8"), Rational(-1) / 2);
    EXPECT_EQ(parse_integer("+12"), Integer(12));
    EXPECT_EQ(parse_integer("123456789012345678901234567890").str(), "123456789012345678901234567890");
}

TEST(Numeric, RejectsGarbage)
{
    EXPECT_THROW(parse_rational("1/0"), StructuralError);
    EXPECT_THROW(parse_rational("x"), StructuralError);
    EXPECT_THROW(parse_rational(""), StructuralError);
    EXPECT_THROW(parse_integer("1.5"), StructuralError);
    EXPECT_THROW(parse_integer("-"), StructuralError);
}

TEST(Numeric, Formatting)
{
    EXPECT_EQ(to_string(Rational(5) / 10), "1/2");
    EXPECT_EQ(to_string(Rational(-4)), "-4");
    EXPECT_TRUE(is_integral(Rational(6) / 3));
    EXPECT_TRUE(fits_int64(Integer("9223372036854775807")));
    EXPECT_FALSE(fits_int64(Integer("9223372036854775808")));
}
