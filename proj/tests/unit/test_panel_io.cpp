#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include "alphatest/errors.hpp"
#include "alphatest/panel_io.hpp"
#include "test_support.hpp"

using namespace alphatest;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("alphatest_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseCsv, ReadsHeaderAndValues) {
  const CsvMatrix m = parse_csv_matrix("a, b\n1, 2.5\r\n\n-3e2,+4\n", "x.csv");
  EXPECT_EQ(m.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(m.values.rows(), 2);
  EXPECT_EQ(m.values(0, 1), 2.5);
  EXPECT_EQ(m.values(1, 0), -300.0);
  EXPECT_EQ(m.values(1, 1), 4.0);
}

TEST(ParseCsv, ErrorsNameTheCell) {
  const std::string nan = message_of([] { parse_csv_matrix("a,b\n1,2\n3,NaN\n", "r.csv"); });
  EXPECT_NE(nan.find("r.csv"), std::string::npos) << nan;
  EXPECT_NE(nan.find("row 2"), std::string::npos) << nan;
  EXPECT_NE(nan.find("'b'"), std::string::npos) << nan;
  EXPECT_THROW(parse_csv_matrix("a,b\n1,inf\n", "r"), ParseError);
  EXPECT_THROW(parse_csv_matrix("a,b\n1,x\n", "r"), ParseError);
  EXPECT_THROW(parse_csv_matrix("a,b\n1,\n", "r"), ParseError);
  EXPECT_THROW(parse_csv_matrix("a,b\n1,2,3\n", "r"), ParseError);
  EXPECT_THROW(parse_csv_matrix("a,b\n1.5abc,2\n", "r"), ParseError);
  EXPECT_THROW(parse_csv_matrix("", "r"), ParseError);
}

TEST_F(TempDir, LoadsWellFormedPanel) {
  std::string returns = "s1,s2,s3\n";
  std::string factors = "mkt,smb\n";
  for (int t = 0; t < 10; ++t) {
    returns += std::to_string(0.1 * t) + "," + std::to_string(-0.2 * t) + "," +
               std::to_string(t % 3) + "\n";
    factors += std::to_string(std::sin(t)) + "," + std::to_string(std::cos(2.0 * t)) + "\n";
  }
  const FactorPanel p = load_panel(write("r.csv", returns), write("f.csv", factors));
  EXPECT_EQ(p.securities(), 3u);
  EXPECT_EQ(p.periods(), 10u);
  EXPECT_EQ(p.factor_count(), 2u);
  EXPECT_NEAR(p.returns()(1, 4), -0.8, 1e-12);
}

TEST_F(TempDir, ShapeErrors) {
  std::string returns = "s1,s2,s3\n";
  std::string factors = "mkt\n";
  for (int t = 0; t < 10; ++t) {
    returns += "1,2," + std::to_string(t) + "\n";
    if (t < 9) factors += std::to_string(t * t) + "\n";
  }
  EXPECT_THROW(load_panel(write("r.csv", returns), write("f.csv", factors)), ShapeMismatch);
  std::string short_r = "s1,s2\n", short_f = "a,b,c\n";
  for (int t = 0; t < 8; ++t) {
    short_r += "1," + std::to_string(t) + "\n";
    short_f += std::to_string(t) + "," + std::to_string(t * t) + "," + std::to_string(t % 2) + "\n";
  }
  EXPECT_THROW(load_panel(write("r2.csv", short_r), write("f2.csv", short_f)), TooFewObservations);
  EXPECT_THROW(load_panel(dir_ / "missing.csv", dir_ / "f.csv"), InputError);
}

TEST_F(TempDir, SeventeenDigitRoundTrip) {
  const Matrix y = testkit::random_matrix(5, 30, 3) * 1e-3;
  Matrix f = testkit::random_matrix(30, 3, 4);
  f(0, 0) = 1.0 / 3.0;
  f(1, 1) = 1.2345678901234567e-300;
  f(2, 2) = -1.7976931348623157e308;
  const FactorPanel panel(y, f);
  write_file_atomic(dir_ / "out/returns.csv", returns_csv(panel));
  write_file_atomic(dir_ / "out/factors.csv", factors_csv(panel, {"mkt", "smb", "hml"}));
  const FactorPanel back = load_panel(dir_ / "out/returns.csv", dir_ / "out/factors.csv");
  EXPECT_TRUE(back == panel);
  EXPECT_EQ(read_csv_matrix(dir_ / "out/factors.csv").header,
            (std::vector<std::string>{"mkt", "smb", "hml"}));
  EXPECT_FALSE(fs::exists(dir_ / "out/returns.csv.tmp"));
}

TEST(FormatNumber, ShortestExactDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}
