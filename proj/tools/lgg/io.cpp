#include "io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

namespace lgg::io {

namespace {

std::string describe(const std::string& message, std::optional<std::uint64_t> offset) {
  if (!offset) return message;
  return message + " (byte offset " + std::to_string(*offset) + ")";
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(bytes[at + b]) << (8 * b);
  return v;
}

std::uint64_t get_u64(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[at + b]) << (8 * b);
  return v;
}

bool has_magic_prefix(std::span<const std::uint8_t> bytes) {
  // no numeric CSV field starts with 'L', so it commits to the binary reader
  return !bytes.empty() && bytes[0] == 'L';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::size_t as_index(double v, const std::string& path, std::size_t row, const char* what) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 9007199254740992.0) {
    throw InputError(path, std::string(what) + " on row " + std::to_string(row + 1) +
                               " is not a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

InputError::InputError(const std::string& path, const std::string& message,
                       std::optional<std::uint64_t> offset)
    : std::runtime_error(path + ": " + describe(message, offset)),
      path_(path),
      detail_(message),
      offset_(offset) {}

std::vector<std::uint8_t> encode_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() > 0xFFFFFFFFLL || m.cols() > 0xFFFFFFFFLL) {
    throw std::length_error("matrix too large for the LGG1 format");
  }
  std::vector<std::uint8_t> out;
  out.reserve(12 + static_cast<std::size_t>(m.size()) * 8);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) put_u64(out, std::bit_cast<std::uint64_t>(m(r, c)));
  }
  return out;
}

Eigen::MatrixXd decode_matrix(std::span<const std::uint8_t> bytes, const std::string& path) {
  if (bytes.size() < 4) throw InputError(path, "truncated magic", bytes.size());
  for (std::size_t b = 0; b < 4; ++b) {
    if (bytes[b] != static_cast<std::uint8_t>(kMagic[b])) {
      throw InputError(path, "bad magic, expected \"LGG1\"", b);
    }
  }
  if (bytes.size() < 12) throw InputError(path, "truncated header", bytes.size());
  const std::uint64_t rows = get_u32(bytes, 4);
  const std::uint64_t cols = get_u32(bytes, 8);
  const std::uint64_t expected = rows * cols * 8;
  const std::uint64_t payload = bytes.size() - 12;
  if (payload != expected) {
    throw InputError(path,
                     "payload holds " + std::to_string(payload) + " bytes, header declares " +
                         std::to_string(rows) + "x" + std::to_string(cols) + " (" +
                         std::to_string(expected) + " bytes)",
                     12 + std::min(payload, expected));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t at = 12;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c, at += 8) {
      m(r, c) = std::bit_cast<double>(get_u64(bytes, at));
    }
  }
  return m;
}

Eigen::MatrixXd parse_csv_matrix(std::string_view text, const std::string& path) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(line_start, line_end - line_start);
    if (!trim(line).empty()) {
      std::size_t count = 0;
      std::size_t field_start = 0;
      while (true) {
        std::size_t comma = line.find(',', field_start);
        const bool last = comma == std::string_view::npos;
        if (last) comma = line.size();
        const std::string_view raw = line.substr(field_start, comma - field_start);
        const std::string_view field = trim(raw);
        const std::uint64_t offset = line_start + field_start +
                                     static_cast<std::size_t>(field.data() - raw.data());
        double v = 0.0;
        const char* begin = field.data();
        const char* end = field.data() + field.size();
        if (!field.empty() && *begin == '+') ++begin;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (field.empty() || ec != std::errc() || ptr != end) {
          throw InputError(path, "invalid numeric field \"" + std::string(field.substr(0, 32)) +
                                     "\" on line " + std::to_string(rows + 1),
                           offset);
        }
        values.push_back(v);
        ++count;
        if (last) break;
        field_start = comma + 1;
      }
      if (rows == 0) {
        cols = count;
      } else if (count != cols) {
        throw InputError(path, "row " + std::to_string(rows + 1) + " has " +
                                   std::to_string(count) + " fields, expected " +
                                   std::to_string(cols),
                         line_start);
      }
      ++rows;
    }
    line_start = line_end + 1;
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * cols + c];
    }
  }
  return m;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot open file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw InputError(path.string(), "read error");
  return bytes;
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path.string(), "cannot open file for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError(path.string(), "write error");
}

namespace {

Eigen::MatrixXd load_matrix(const std::filesystem::path& path, bool allow_empty) {
  const auto bytes = read_bytes(path);
  if (has_magic_prefix(bytes)) return decode_matrix(bytes, path.string());
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  Eigen::MatrixXd m = parse_csv_matrix(text, path.string());
  if (m.size() == 0 && !allow_empty) throw InputError(path.string(), "no numeric rows", 0);
  return m;
}

}  // namespace

Eigen::MatrixXd read_matrix(const std::filesystem::path& path) {
  return load_matrix(path, false);
}

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  write_bytes(path, encode_matrix(m));
}

LabelVector read_labels(const std::filesystem::path& path) {
  const Eigen::MatrixXd m = read_matrix(path);
  if (m.cols() != 1) throw InputError(path.string(), "labels must be a single column");
  std::vector<std::size_t> labels;
  std::size_t classes = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    labels.push_back(as_index(m(r, 0), path.string(), static_cast<std::size_t>(r), "label"));
    classes = std::max(classes, labels.back() + 1);
  }
  return LabelVector(std::move(labels), classes);
}

PartialLabels read_partial_labels(const std::filesystem::path& path, std::size_t n,
                                  std::optional<std::size_t> num_classes) {
  const Eigen::MatrixXd m = read_matrix(path);
  if (m.cols() != 2) throw InputError(path.string(), "partial labels need `index,class` rows");
  std::vector<std::size_t> indices;
  std::vector<std::size_t> labels;
  std::size_t classes = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto row = static_cast<std::size_t>(r);
    indices.push_back(as_index(m(r, 0), path.string(), row, "index"));
    labels.push_back(as_index(m(r, 1), path.string(), row, "class"));
    classes = std::max(classes, labels.back() + 1);
  }
  return PartialLabels(n, std::move(indices), std::move(labels), num_classes.value_or(classes));
}

SparseGraph read_edge_list(const std::filesystem::path& path, std::size_t n) {
  const Eigen::MatrixXd m = load_matrix(path, true);
  if (m.rows() == 0) return SparseGraph(n);
  if (m.cols() != 3) throw InputError(path.string(), "edge lists need `i,j,w` rows");
  std::vector<Edge> edges;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto row = static_cast<std::size_t>(r);
    edges.push_back({as_index(m(r, 0), path.string(), row, "i"),
                     as_index(m(r, 1), path.string(), row, "j"), m(r, 2)});
  }
  return SparseGraph(n, std::move(edges));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_edge_list(const SparseGraph& graph) {
  std::string out;
  for (const auto& e : graph.edges()) {
    out += std::to_string(e.i) + "," + std::to_string(e.j) + "," + format_double(e.w) + "\n";
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> read_pairs(const std::filesystem::path& path) {
  const Eigen::MatrixXd m = read_matrix(path);
  if (m.cols() != 2) throw InputError(path.string(), "pair lists need `i,j` rows");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto row = static_cast<std::size_t>(r);
    pairs.emplace_back(as_index(m(r, 0), path.string(), row, "i"),
                       as_index(m(r, 1), path.string(), row, "j"));
  }
  return pairs;
}

std::string format_pseudo_labels(const PseudoLabelResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.pseudo_labels.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(result.pseudo_labels[i]) + "," +
           format_double(result.omega[static_cast<Eigen::Index>(i)]) + "\n";
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace lgg::io
