#include "gsp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "gsp/error.hpp"

namespace gsp::io {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& reason) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason);
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<double> parse_real(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

// "a", "a+bj", "a-bi", "bj".
std::optional<Complex> parse_complex(std::string_view text) {
  std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  if (auto r = parse_real(t)) return Complex{*r, 0.0};
  const char tail = static_cast<char>(std::tolower(static_cast<unsigned char>(t.back())));
  if (tail != 'j' && tail != 'i') return std::nullopt;
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    const char c = t[i];
    const char prev = static_cast<char>(std::tolower(static_cast<unsigned char>(t[i - 1])));
    if ((c == '+' || c == '-') && prev != 'e') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    if (t.empty() || t == "+" || t == "-") return Complex{0.0, t == "-" ? -1.0 : 1.0};
    auto im = parse_real(t);
    if (!im) return std::nullopt;
    return Complex{0.0, *im};
  }
  auto re = parse_real(std::string_view(t).substr(0, split));
  const std::string im_text = t.substr(split);
  std::optional<double> im;
  if (im_text == "+" || im_text == "-") {
    im = im_text == "-" ? -1.0 : 1.0;
  } else {
    im = parse_real(im_text);
  }
  if (!re || !im) return std::nullopt;
  return Complex{*re, *im};
}

// RFC 4180 field splitting for one physical line.
std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) parse_fail(line_no, "unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool getline_stripped(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

enum class Field { Real, Complex, Integer, Pattern };
enum class Symmetry { General, Symmetric, Skew, Hermitian };

Matrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!getline_stripped(in, line)) parse_fail(1, "empty file");
  ++line_no;

  std::istringstream banner(line);
  std::string tag, object, layout, field_name, symmetry_name;
  banner >> tag >> object >> layout >> field_name >> symmetry_name;
  if (lower(tag) != "%%matrixmarket") parse_fail(line_no, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") parse_fail(line_no, "only 'matrix' objects are supported");
  layout = lower(layout);
  if (layout != "coordinate" && layout != "array") parse_fail(line_no, "unknown layout '" + layout + "'");

  Field field;
  field_name = lower(field_name);
  if (field_name == "real" || field_name == "double") field = Field::Real;
  else if (field_name == "complex") field = Field::Complex;
  else if (field_name == "integer") field = Field::Integer;
  else if (field_name == "pattern") field = Field::Pattern;
  else parse_fail(line_no, "unknown field '" + field_name + "'");

  Symmetry symmetry;
  symmetry_name = lower(symmetry_name);
  if (symmetry_name == "general") symmetry = Symmetry::General;
  else if (symmetry_name == "symmetric") symmetry = Symmetry::Symmetric;
  else if (symmetry_name == "skew-symmetric") symmetry = Symmetry::Skew;
  else if (symmetry_name == "hermitian") symmetry = Symmetry::Hermitian;
  else parse_fail(line_no, "unknown symmetry '" + symmetry_name + "'");
  if (layout == "array" && field == Field::Pattern) parse_fail(line_no, "pattern field requires coordinate layout");

  auto next_data_line = [&](std::string& out) {
    while (getline_stripped(in, out)) {
      ++line_no;
      const std::string t = trim(out);
      if (t.empty() || t[0] == '%') continue;
      out = t;
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) parse_fail(line_no, "missing size line");
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, nnz = -1;
  size_line >> rows >> cols;
  if (layout == "coordinate") size_line >> nnz;
  if (!size_line || rows < 0 || cols < 0 || (layout == "coordinate" && nnz < 0)) {
    parse_fail(line_no, "malformed size line");
  }
  if (symmetry != Symmetry::General && rows != cols) {
    fail(ErrorCode::DimensionHeaderMismatch, "symmetric storage declared for a non-square matrix");
  }

  Matrix m = Matrix::Zero(rows, cols);
  auto read_value = [&](std::istringstream& ss) -> Complex {
    double re = 1.0, im = 0.0;
    if (field != Field::Pattern && !(ss >> re)) parse_fail(line_no, "missing value");
    if (field == Field::Complex && !(ss >> im)) parse_fail(line_no, "missing imaginary part");
    std::string extra;
    if (ss >> extra) parse_fail(line_no, "unexpected trailing token '" + extra + "'");
    return {re, im};
  };
  auto mirror = [&](Index i, Index j, Complex v) {
    m(i, j) = v;
    if (i == j) return;
    switch (symmetry) {
      case Symmetry::General: break;
      case Symmetry::Symmetric: m(j, i) = v; break;
      case Symmetry::Skew: m(j, i) = -v; break;
      case Symmetry::Hermitian: m(j, i) = std::conj(v); break;
    }
  };

  long long count = 0;
  if (layout == "coordinate") {
    while (next_data_line(line)) {
      if (count == nnz) fail(ErrorCode::DimensionHeaderMismatch, "more than the declared " + std::to_string(nnz) + " entries");
      std::istringstream ss(line);
      long long i = 0, j = 0;
      if (!(ss >> i >> j)) parse_fail(line_no, "malformed entry");
      if (i < 1 || i > rows || j < 1 || j > cols) parse_fail(line_no, "entry index out of range");
      mirror(static_cast<Index>(i - 1), static_cast<Index>(j - 1), read_value(ss));
      ++count;
    }
    if (count != nnz) {
      fail(ErrorCode::DimensionHeaderMismatch, "declared " + std::to_string(nnz) + " entries, found " +
                                                   std::to_string(count));
    }
  } else {
    // Column-major; symmetric storage keeps the lower triangle only.
    std::vector<std::pair<Index, Index>> slots;
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) {
        if (symmetry == Symmetry::General || i > j || (i == j && symmetry != Symmetry::Skew)) {
          slots.emplace_back(i, j);
        }
      }
    }
    while (next_data_line(line)) {
      if (count == static_cast<long long>(slots.size())) {
        fail(ErrorCode::DimensionHeaderMismatch, "more values than the declared dimensions allow");
      }
      std::istringstream ss(line);
      const auto [i, j] = slots[static_cast<std::size_t>(count)];
      mirror(i, j, read_value(ss));
      ++count;
    }
    if (count != static_cast<long long>(slots.size())) {
      fail(ErrorCode::DimensionHeaderMismatch, "declared dimensions need " + std::to_string(slots.size()) +
                                                   " values, found " + std::to_string(count));
    }
  }
  return m;
}

Matrix read_dense_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<Complex>> rows;
  while (getline_stripped(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<Complex> row;
    for (const auto& cell : split_csv(line, line_no)) {
      auto v = parse_complex(cell);
      if (!v) parse_fail(line_no, "not a number: '" + trim(cell) + "'");
      row.push_back(*v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_fail(line_no, "expected " + std::to_string(rows.front().size()) + " columns, got " +
                              std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_fail(line_no == 0 ? 1 : line_no, "empty file");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::size_t column_length(const SignalColumn& c) {
  return std::visit([](const auto& v) { return static_cast<std::size_t>(v.size()); }, c.values);
}

}  // namespace

MatrixFormat format_from_path(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  return (ext == ".mtx" || ext == ".mm") ? MatrixFormat::MatrixMarket : MatrixFormat::DenseCsv;
}

MatrixFormat parse_matrix_format(const std::string& name) {
  const std::string n = lower(name);
  if (n == "mm" || n == "mtx" || n == "matrix-market") return MatrixFormat::MatrixMarket;
  if (n == "csv" || n == "dense-csv") return MatrixFormat::DenseCsv;
  fail(ErrorCode::BadFlag, "unknown matrix format '" + name + "' (expected matrix-market or dense-csv)");
}

Matrix read_matrix(std::istream& in, MatrixFormat format) {
  return format == MatrixFormat::MatrixMarket ? read_matrix_market(in) : read_dense_csv(in);
}

Matrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  auto in = open_input(path);
  return read_matrix(in, format);
}

std::string format_double(double v) {
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_market(std::ostream& out, const Matrix& m) {
  const bool complex = m.size() > 0 && m.imag().cwiseAbs().maxCoeff() != 0.0;
  Index nnz = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) nnz += m(i, j) != Complex{0.0, 0.0};
  }
  out << "%%MatrixMarket matrix coordinate " << (complex ? "complex" : "real") << " general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex v = m(i, j);
      if (v == Complex{0.0, 0.0}) continue;
      out << i + 1 << ' ' << j + 1 << ' ' << format_double(v.real());
      if (complex) out << ' ' << format_double(v.imag());
      out << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_output(path);
  write_matrix_market(out, m);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

void write_dense_csv(std::ostream& out, const Matrix& m) {
  const bool complex = m.size() > 0 && m.imag().cwiseAbs().maxCoeff() != 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      const Complex v = m(i, j);
      out << format_double(v.real());
      if (complex) {
        const double im = v.imag();
        out << (std::signbit(im) ? "-" : "+") << format_double(std::abs(im)) << 'j';
      }
    }
    out << '\n';
  }
}

void write_dense_csv(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_output(path);
  write_dense_csv(out, m);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  if (format_from_path(path) == MatrixFormat::MatrixMarket) {
    write_matrix_market(path, m);
  } else {
    write_dense_csv(path, m);
  }
}

void write_signal_csv(std::ostream& out, std::span<const SignalColumn> columns) {
  if (columns.empty()) return;
  const std::size_t rows = column_length(columns.front());
  for (const auto& c : columns) {
    if (column_length(c) != rows) {
      fail(ErrorCode::DimensionMismatch, "column '" + c.name + "' has " + std::to_string(column_length(c)) +
                                             " rows, expected " + std::to_string(rows));
    }
  }
  bool first = true;
  for (const auto& c : columns) {
    const bool complex = std::holds_alternative<Vector>(c.values);
    out << (first ? "" : ",");
    out << (complex ? quote_csv(c.name + "_re") + "," + quote_csv(c.name + "_im") : quote_csv(c.name));
    first = false;
  }
  out << "\r\n";
  for (std::size_t r = 0; r < rows; ++r) {
    first = true;
    for (const auto& c : columns) {
      out << (first ? "" : ",");
      first = false;
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Vector>) {
              const Complex z = v(static_cast<Index>(r));
              out << format_double(z.real()) << ',' << format_double(z.imag());
            } else if constexpr (std::is_same_v<T, RealVector>) {
              out << format_double(v(static_cast<Index>(r)));
            } else {
              out << format_double(v[r]);
            }
          },
          c.values);
    }
    out << "\r\n";
  }
}

void write_signal_csv(const std::filesystem::path& path, std::span<const SignalColumn> columns) {
  auto out = open_output(path);
  write_signal_csv(out, columns);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<std::pair<std::string, RealVector>> read_signal_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!getline_stripped(in, line)) parse_fail(1, "empty file");
  ++line_no;
  const auto header = split_csv(line, line_no);
  std::vector<std::vector<double>> data(header.size());
  while (getline_stripped(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line, line_no);
    if (cells.size() != header.size()) {
      parse_fail(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                              std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto v = parse_real(cells[c]);
      if (!v) parse_fail(line_no, "not a number: '" + trim(cells[c]) + "'");
      data[c].push_back(*v);
    }
  }
  std::vector<std::pair<std::string, RealVector>> out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    out.emplace_back(header[c], Eigen::Map<const RealVector>(data[c].data(), static_cast<Index>(data[c].size())));
  }
  return out;
}

std::vector<std::pair<std::string, RealVector>> read_signal_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_signal_csv(in);
}

FeatureSet read_feature_csv(std::istream& in, bool has_label_column) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  while (getline_stripped(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line, line_no);
    std::vector<double> values;
    bool numeric = true;
    for (const auto& cell : cells) {
      auto v = parse_real(cell);
      if (!v) {
        numeric = false;
        break;
      }
      values.push_back(*v);
    }
    if (!numeric) {
      if (rows.empty() && labels.empty() && line_no == 1) continue;  // header
      parse_fail(line_no, "non-numeric field");
    }
    if (has_label_column) {
      if (values.size() < 2) parse_fail(line_no, "need at least one feature and a label");
      const double label = values.back();
      if (label != std::floor(label) || label < 0) parse_fail(line_no, "label must be a non-negative integer");
      labels.push_back(static_cast<int>(label));
      values.pop_back();
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      parse_fail(line_no, "feature count differs from the first row");
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) parse_fail(line_no == 0 ? 1 : line_no, "no feature rows");
  FeatureSet out;
  out.features.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < out.features.rows(); ++i) {
    for (Index j = 0; j < out.features.cols(); ++j) {
      out.features(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  if (has_label_column) out.labels = std::move(labels);
  return out;
}

FeatureSet read_feature_csv(const std::filesystem::path& path, bool has_label_column) {
  auto in = open_input(path);
  return read_feature_csv(in, has_label_column);
}

}  // namespace gsp::io
