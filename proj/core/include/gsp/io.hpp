#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gsp/ssl.hpp"
#include "gsp/types.hpp"

namespace gsp::io {

enum class MatrixFormat { MatrixMarket, DenseCsv };

/// ".mtx" / ".mm" -> MatrixMarket, anything else -> DenseCsv.
MatrixFormat format_from_path(const std::filesystem::path& path);
MatrixFormat parse_matrix_format(const std::string& name);

/// Matrix Market 1.0 (coordinate or array; real, integer, complex or
/// pattern; general, symmetric, skew-symmetric or hermitian) or a dense CSV
/// with one matrix row per line. CSV cells are real numbers or complex values
/// written as `a+bj` / `a-bj` / `bj`.
/// Throws ParseError ("line N: ...") or DimensionHeaderMismatch.
Matrix read_matrix(const std::filesystem::path& path, MatrixFormat format);
Matrix read_matrix(std::istream& in, MatrixFormat format);

/// Coordinate/general; `real` field when every imaginary part is zero.
void write_matrix_market(const std::filesystem::path& path, const Matrix& m);
void write_matrix_market(std::ostream& out, const Matrix& m);

/// One matrix row per line; complex cells as `a+bj` when any imaginary part is nonzero.
void write_dense_csv(const std::filesystem::path& path, const Matrix& m);
void write_dense_csv(std::ostream& out, const Matrix& m);

/// Matrix Market for ".mtx" / ".mm", dense CSV otherwise.
void write_matrix(const std::filesystem::path& path, const Matrix& m);

/// Decimal form that reads back to the identical double (17 significant digits).
std::string format_double(double v);

struct SignalColumn {
  std::string name;
  std::variant<RealVector, Vector, std::vector<double>> values;
};

/// RFC 4180 CSV: header row then one row per entry. Complex columns become a
/// `name_re,name_im` pair. Throws DimensionMismatch for ragged columns and
/// IoError when the file cannot be written.
void write_signal_csv(const std::filesystem::path& path, std::span<const SignalColumn> columns);
void write_signal_csv(std::ostream& out, std::span<const SignalColumn> columns);

/// Numeric CSV with a header row, returned as named columns.
std::vector<std::pair<std::string, RealVector>> read_signal_csv(const std::filesystem::path& path);
std::vector<std::pair<std::string, RealVector>> read_signal_csv(std::istream& in);

/// One row per item, numeric feature columns, optionally a final integer
/// label column. A first line that fails to parse as numbers is a header.
FeatureSet read_feature_csv(const std::filesystem::path& path, bool has_label_column);
FeatureSet read_feature_csv(std::istream& in, bool has_label_column);

}  // namespace gsp::io
