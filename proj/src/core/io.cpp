#include "splitlab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "splitlab/errors.hpp"

namespace splitlab::io {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

bool separator(const std::string& line) {
    const auto t = tokens(line);
    return t.size() == 1 && t[0] == "---";
}

double parse_double(const std::string& tok, std::size_t line) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError(line, "not a number: '" + tok + "'");
    if (!std::isfinite(v)) throw ParseError(line, "non-finite entry '" + tok + "'");
    return v;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
        throw ParseError(line, "expected a positive dimension, got '" + tok + "'");
    return v;
}

}  // namespace

void write_matrix(std::ostream& os, const Matrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << format_double(m(i, j));
        }
        os << '\n';
    }
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

Matrix read_matrix(std::istream& is, std::size_t& line) {
    std::string text;
    std::vector<std::string> head;
    while (std::getline(is, text)) {
        ++line;
        if (blank(text)) continue;
        head = tokens(text);
        break;
    }
    if (head.empty()) throw ParseError(line, "expected a 'rows cols' header");
    if (head.size() != 2) throw ParseError(line, "header must be 'rows cols'");
    const std::size_t rows = parse_count(head[0], line), cols = parse_count(head[1], line);
    std::vector<double> entries;
    entries.reserve(rows * cols);
    std::size_t got_rows = 0;
    while (got_rows < rows && std::getline(is, text)) {
        ++line;
        if (blank(text)) continue;
        if (separator(text)) throw ParseError(line, "separator before all " + std::to_string(rows) + " rows were read");
        const auto t = tokens(text);
        if (t.size() != cols)
            throw ParseError(line, "expected " + std::to_string(cols) + " entries, found " + std::to_string(t.size()));
        for (const auto& tok : t) entries.push_back(parse_double(tok, line));
        ++got_rows;
    }
    if (got_rows < rows) throw ParseError(line, "file ended after " + std::to_string(got_rows) + " of " + std::to_string(rows) + " rows");
    return Matrix(rows, cols, std::move(entries));
}

Matrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    std::size_t line = 0;
    Matrix m = read_matrix(is, line);
    for (std::string rest; std::getline(is, rest);) {
        ++line;
        if (!blank(rest)) throw ParseError(line, "trailing content after matrix");
    }
    return m;
}

std::vector<Matrix> parse_bundle(const std::string& text) {
    std::istringstream is(text);
    std::vector<Matrix> out;
    std::size_t line = 0;
    std::string chunk;
    std::size_t chunk_start = 1;
    auto flush = [&]() {
        if (blank(chunk)) throw ParseError(chunk_start, "empty matrix section in bundle");
        std::istringstream cs(chunk);
        std::size_t local = chunk_start - 1;
        Matrix m = read_matrix(cs, local);
        for (std::string rest; std::getline(cs, rest);) {
            ++local;
            if (!blank(rest)) throw ParseError(local, "unexpected content after matrix");
        }
        out.push_back(std::move(m));
        chunk.clear();
    };
    for (std::string text_line; std::getline(is, text_line);) {
        ++line;
        if (separator(text_line)) {
            flush();
            chunk_start = line + 1;
            continue;
        }
        chunk += text_line;
        chunk += '\n';
    }
    if (!blank(chunk) || out.empty()) flush();
    return out;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

Matrix load_matrix(const std::filesystem::path& path) { return parse_matrix(read_text(path)); }

void save_matrix(const std::filesystem::path& path, const Matrix& m) { write_text(path, format_matrix(m)); }

std::vector<Matrix> load_bundle(const std::filesystem::path& path) { return parse_bundle(read_text(path)); }

void save_bundle(const std::filesystem::path& path, const std::vector<Matrix>& ms) {
    std::string text;
    for (std::size_t k = 0; k < ms.size(); ++k) {
        if (k) text += "---\n";
        text += format_matrix(ms[k]);
    }
    write_text(path, text);
}

Vector load_vector(const std::filesystem::path& path) {
    const Matrix m = load_matrix(path);
    if (m.cols() != 1 && m.rows() != 1) throw ParseError(1, "expected a vector, got " + m.shape_string());
    return m.entries();
}

void save_vector(const std::filesystem::path& path, const Vector& v) { save_matrix(path, Matrix::column(v)); }

}  // namespace splitlab::io
