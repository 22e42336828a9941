#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "gsp/error.hpp"
#include "gsp/experiments.hpp"
#include "gsp/io.hpp"
#include "support.hpp"

using namespace gsp;
using testing_support::code_of;

namespace fs = std::filesystem;

namespace {

Matrix read_string(const std::string& text, io::MatrixFormat format) {
  std::istringstream in(text);
  return io::read_matrix(in, format);
}

std::string error_message(const std::string& text, io::MatrixFormat format) {
  try {
    read_string(text, format);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

fs::path tmp(const std::string& name) { return fs::path(GSP_TEST_TMPDIR) / ("io_" + name); }

}  // namespace

TEST(MatrixFormat, FromPathAndName) {
  EXPECT_EQ(io::format_from_path("a/b.mtx"), io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(io::format_from_path("b.mm"), io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(io::format_from_path("b.csv"), io::MatrixFormat::DenseCsv);
  EXPECT_EQ(io::parse_matrix_format("matrix-market"), io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(io::parse_matrix_format("dense-csv"), io::MatrixFormat::DenseCsv);
  EXPECT_EQ(code_of([] { io::parse_matrix_format("xml"); }), ErrorCode::BadFlag);
}

TEST(DenseCsv, FiveNodeShiftEqualsFixture) {
  const Matrix m = io::read_matrix(fs::path(GSP_TEST_DATA) / "five_node.csv", io::MatrixFormat::DenseCsv);
  EXPECT_LT((m - five_node_shift().weights()).cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_LT((build_shift(m, false).weights() - five_node_shift().weights()).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(DenseCsv, ComplexCellsAndWhitespace) {
  const Matrix m = read_string("1, 2+3j\n-1.5e-3-2i, 4j\n", io::MatrixFormat::DenseCsv);
  ASSERT_EQ(m.rows(), 2);
  EXPECT_EQ(m(0, 0), Complex(1, 0));
  EXPECT_EQ(m(0, 1), Complex(2, 3));
  EXPECT_EQ(m(1, 0), Complex(-1.5e-3, -2));
  EXPECT_EQ(m(1, 1), Complex(0, 4));
  EXPECT_EQ(read_string("1e+2+1e-1j\n", io::MatrixFormat::DenseCsv)(0, 0), Complex(100, 0.1));
}

TEST(DenseCsv, RoundTrip) {
  Rng rng(3);
  const Matrix real = testing_support::random_complex(12, rng).real().cast<Complex>().reshaped(3, 4);
  const Matrix cplx = testing_support::random_complex(12, rng).reshaped(4, 3);
  for (const Matrix& m : {real, cplx}) {
    std::stringstream s;
    io::write_dense_csv(s, m);
    EXPECT_EQ(io::read_matrix(s, io::MatrixFormat::DenseCsv), m);
  }
  std::stringstream s;
  io::write_dense_csv(s, real);
  EXPECT_EQ(s.str().find('j'), std::string::npos);
}

TEST(DenseCsv, Errors) {
  EXPECT_EQ(code_of([] { read_string("", io::MatrixFormat::DenseCsv); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { read_string("1,2\n3\n", io::MatrixFormat::DenseCsv); }), ErrorCode::ParseError);
  EXPECT_NE(error_message("1,2\n3\n", io::MatrixFormat::DenseCsv).find("line 2"), std::string::npos);
  EXPECT_NE(error_message("1,2\n3,abc\n", io::MatrixFormat::DenseCsv).find("line 2: not a number"), std::string::npos);
  EXPECT_EQ(code_of([] { io::read_matrix(fs::path("/nonexistent/x.csv"), io::MatrixFormat::DenseCsv); }),
            ErrorCode::IoError);
}

TEST(MatrixMarket, RealCoordinateRoundTrip) {
  const Matrix m = five_node_shift().weights();
  const fs::path p = tmp("five.mtx");
  io::write_matrix_market(p, m);
  EXPECT_EQ(io::read_matrix(p, io::MatrixFormat::MatrixMarket), m);
  std::ifstream in(p);
  std::string banner;
  std::getline(in, banner);
  EXPECT_EQ(banner, "%%MatrixMarket matrix coordinate real general");
  std::string size;
  std::getline(in, size);
  EXPECT_EQ(size, "5 5 12");
}

TEST(MatrixMarket, ComplexRoundTripViaWriteMatrix) {
  Rng rng(9);
  const Matrix m = testing_support::random_complex(20, rng).reshaped(4, 5);
  const fs::path p = tmp("c.mtx");
  io::write_matrix(p, m);
  EXPECT_EQ(io::read_matrix(p, io::format_from_path(p)), m);
  const fs::path q = tmp("c.csv");
  io::write_matrix(q, m);
  EXPECT_EQ(io::read_matrix(q, io::format_from_path(q)), m);
}

TEST(MatrixMarket, SymmetryVariants) {
  const Matrix sym = read_string("%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n2 1 4\n3 3 1\n",
                                 io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(sym(0, 1), Complex(4));
  EXPECT_EQ(sym(1, 0), Complex(4));
  EXPECT_EQ(sym(2, 2), Complex(1));
  const Matrix skew = read_string("%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 3\n",
                                  io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(skew(1, 0), Complex(3));
  EXPECT_EQ(skew(0, 1), Complex(-3));
  const Matrix herm = read_string("%%MatrixMarket matrix coordinate complex hermitian\n2 2 1\n2 1 1 2\n",
                                  io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(herm(1, 0), Complex(1, 2));
  EXPECT_EQ(herm(0, 1), Complex(1, -2));
  const Matrix pat = read_string("%%MatrixMarket matrix coordinate pattern general\n% comment\n2 3 2\n1 3\n2 1\n",
                                 io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(pat(0, 2), Complex(1));
  EXPECT_EQ(pat(1, 0), Complex(1));
  EXPECT_EQ(pat.cwiseAbs().sum(), 2.0);
  const Matrix ints = read_string("%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 -7\n",
                                  io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(ints(0, 0), Complex(-7));
}

TEST(MatrixMarket, ArrayLayout) {
  const Matrix gen = read_string("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n",
                                 io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(gen(1, 0), Complex(2));
  EXPECT_EQ(gen(0, 1), Complex(3));
  const Matrix sym = read_string("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n",
                                 io::MatrixFormat::MatrixMarket);
  EXPECT_EQ(sym(0, 1), Complex(2));
  EXPECT_EQ(sym(1, 1), Complex(3));
}

TEST(MatrixMarket, Errors) {
  const auto mm = io::MatrixFormat::MatrixMarket;
  EXPECT_EQ(code_of([&] { read_string("", mm); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { read_string("hello\n", mm); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { read_string("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n", mm); }),
            ErrorCode::DimensionHeaderMismatch);
  EXPECT_EQ(code_of([&] { read_string("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n2 2 2\n", mm); }),
            ErrorCode::DimensionHeaderMismatch);
  EXPECT_EQ(code_of([&] { read_string("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n", mm); }),
            ErrorCode::DimensionHeaderMismatch);
  EXPECT_NE(error_message("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n", mm).find("line 3"),
            std::string::npos);
  EXPECT_NE(error_message("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n", mm).find("line 3"),
            std::string::npos);
  EXPECT_NE(error_message("%%MatrixMarket matrix coordinate real banana\n1 1 0\n", mm).find("line 1"),
            std::string::npos);
}

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::numeric_limits<double>::denorm_min(),
                   std::numeric_limits<double>::max()}) {
    EXPECT_EQ(std::strtod(io::format_double(v).c_str(), nullptr), v);
    const std::vector<double> col{v};
    const std::vector<io::SignalColumn> cols{{"v", col}};
    std::stringstream s;
    io::write_signal_csv(s, cols);
    EXPECT_EQ(io::read_signal_csv(s)[0].second(0), v);
  }
  EXPECT_EQ(io::format_double(-0.0), "-0");
  EXPECT_EQ(io::format_double(1.0), "1");
}

TEST(SignalCsv, BitExactRoundTrip) {
  Rng rng(4);
  const RealVector a = gaussian_vector(9, rng);
  const Vector c = testing_support::random_complex(9, rng);
  std::vector<double> idx(9);
  for (int i = 0; i < 9; ++i) idx[static_cast<std::size_t>(i)] = i;
  const std::vector<io::SignalColumn> cols{{"vertex", idx}, {"original", a}, {"z", c}};
  const fs::path p = tmp("sig.csv");
  io::write_signal_csv(p, cols);
  const auto back = io::read_signal_csv(p);
  ASSERT_EQ(back.size(), 4u);
  EXPECT_EQ(back[0].first, "vertex");
  EXPECT_EQ(back[1].first, "original");
  EXPECT_EQ(back[2].first, "z_re");
  EXPECT_EQ(back[3].first, "z_im");
  EXPECT_EQ(back[1].second, a);
  EXPECT_EQ(back[2].second, c.real());
  EXPECT_EQ(back[3].second, c.imag());
  EXPECT_EQ(back[0].second(8), 8.0);
}

TEST(SignalCsv, HeaderAndLineEndings) {
  const std::vector<double> p{0.1, 0.2};
  const std::vector<double> rate{1.0, 0.5};
  const std::vector<io::SignalColumn> cols{{"p", p}, {"rate", rate}};
  std::ostringstream out;
  io::write_signal_csv(out, cols);
  EXPECT_EQ(out.str().substr(0, out.str().find("\r\n")), "p,rate");
  EXPECT_NE(out.str().find("0.10000000000000001,1\r\n"), std::string::npos);
  const std::vector<io::SignalColumn> odd{{"a,b", p}};
  std::ostringstream quoted;
  io::write_signal_csv(quoted, odd);
  EXPECT_EQ(quoted.str().substr(0, 6), "\"a,b\"\r");
  std::istringstream in(quoted.str());
  EXPECT_EQ(io::read_signal_csv(in)[0].first, "a,b");
}

TEST(SignalCsv, Errors) {
  const std::vector<double> two{1, 2};
  const std::vector<double> three{1, 2, 3};
  const std::vector<io::SignalColumn> ragged{{"a", two}, {"b", three}};
  std::ostringstream out;
  EXPECT_EQ(code_of([&] { io::write_signal_csv(out, ragged); }), ErrorCode::DimensionMismatch);
  const std::vector<io::SignalColumn> ok{{"a", two}};
  EXPECT_EQ(code_of([&] { io::write_signal_csv(fs::path("/nonexistent/dir/x.csv"), ok); }), ErrorCode::IoError);
  std::istringstream bad("a,b\n1,2\n3\n");
  EXPECT_EQ(code_of([&] { io::read_signal_csv(bad); }), ErrorCode::ParseError);
}

TEST(FeatureCsv, HeaderLabelsAndErrors) {
  std::istringstream in("x,y,label\n0.5,1,0\n-2,3.5,1\n");
  const FeatureSet f = io::read_feature_csv(in, true);
  EXPECT_EQ(f.size(), 2);
  EXPECT_EQ(f.features.cols(), 2);
  EXPECT_EQ(f.features(1, 1), 3.5);
  EXPECT_EQ(*f.labels, (std::vector<int>{0, 1}));
  std::istringstream plain("1,2\n3,4\n");
  const FeatureSet g = io::read_feature_csv(plain, false);
  EXPECT_FALSE(g.labels.has_value());
  EXPECT_EQ(g.features(1, 0), 3.0);
  std::istringstream frac("1,2,0.5\n");
  EXPECT_EQ(code_of([&] { io::read_feature_csv(frac, true); }), ErrorCode::ParseError);
  std::istringstream ragged("1,2,0\n1,0\n");
  EXPECT_EQ(code_of([&] { io::read_feature_csv(ragged, true); }), ErrorCode::ParseError);
  std::istringstream empty("");
  EXPECT_EQ(code_of([&] { io::read_feature_csv(empty, true); }), ErrorCode::ParseError);
}
