#pragma once

// File formats of the lgg tool.
//
// MatrixFile ("LGG1"): 4-byte magic, rows and cols as little-endian u32,
// then rows*cols little-endian IEEE-754 doubles in row-major order.
// Readers also accept headerless numeric CSV; the magic decides.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lgg/denoise.hpp"
#include "lgg/graph.hpp"
#include "lgg/types.hpp"

namespace lgg::io {

/// Malformed or unreadable input file. `offset` is the byte offset of the
/// offending data when known.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& path, const std::string& message,
             std::optional<std::uint64_t> offset = std::nullopt);

  const std::string& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::uint64_t> offset() const noexcept { return offset_; }

 private:
  std::string path_;
  std::string detail_;
  std::optional<std::uint64_t> offset_;
};

inline constexpr char kMagic[4] = {'L', 'G', 'G', '1'};

std::vector<std::uint8_t> encode_matrix(const Eigen::MatrixXd& m);
Eigen::MatrixXd decode_matrix(std::span<const std::uint8_t> bytes, const std::string& path = "<memory>");
Eigen::MatrixXd parse_csv_matrix(std::string_view text, const std::string& path = "<memory>");

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Reads a MatrixFile or a numeric CSV, chosen by the leading magic bytes.
Eigen::MatrixXd read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);

/// One nonnegative integer label per row (single-column matrix or CSV).
LabelVector read_labels(const std::filesystem::path& path);

/// `index,class` rows.
PartialLabels read_partial_labels(const std::filesystem::path& path, std::size_t n,
                                  std::optional<std::size_t> num_classes = std::nullopt);

/// `i,j,w` rows over n vertices.
SparseGraph read_edge_list(const std::filesystem::path& path, std::size_t n);
std::string format_edge_list(const SparseGraph& graph);

/// `i,j` rows.
std::vector<std::pair<std::size_t, std::size_t>> read_pairs(const std::filesystem::path& path);

std::string format_pseudo_labels(const PseudoLabelResult& result);

/// %.17g formatting shared by every textual output.
std::string format_double(double v);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lgg::io
