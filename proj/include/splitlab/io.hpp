#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "splitlab/matrix.hpp"

namespace splitlab::io {

// Text format: "rows cols" on the first line, then one row per line,
// entries whitespace-separated, 17 significant digits on output.
void write_matrix(std::ostream& os, const Matrix& m);
std::string format_matrix(const Matrix& m);
// Reads one matrix; `line` tracks the current line for error reports.
Matrix read_matrix(std::istream& is, std::size_t& line);
Matrix parse_matrix(const std::string& text);

Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m);

// Matrices separated by lines containing only "---".
std::vector<Matrix> parse_bundle(const std::string& text);
std::vector<Matrix> load_bundle(const std::filesystem::path& path);
void save_bundle(const std::filesystem::path& path, const std::vector<Matrix>& ms);

// Column vectors are stored as n×1 matrices; a 1×n row is accepted too.
Vector load_vector(const std::filesystem::path& path);
void save_vector(const std::filesystem::path& path, const Vector& v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace splitlab::io
