#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "ffreduce/cayley.hpp"
#include "ffreduce/elemword.hpp"
#include "ffreduce/matrix.hpp"

namespace ffreduce {
namespace io {

// Matrix file (text): line 1 = "n p m"; then n lines of n integers in
// [0, q-1], base-p digit encoding for extension fields. Readers reject
// malformed dimensions and out-of-range entries.

struct LoadedMatrix {
    std::shared_ptr<Field> field;
    std::unique_ptr<Matrix> matrix;
};

LoadedMatrix read_matrix(std::istream& in);
LoadedMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& A);
void write_matrix_file(const std::string& path, const Matrix& A);

// Word file (text): header "word n p m order=application"; one op per line:
//   S i j  |  M i lambda  |  A src dst lambda
// Lines apply top-to-bottom; loading reverses into product order.

struct LoadedWord {
    std::shared_ptr<Field> field;
    Word word;  // product order
    std::size_t n = 0;
};

LoadedWord read_word(std::istream& in);
LoadedWord read_word_file(const std::string& path);
void write_word(std::ostream& out, const Word& w, std::size_t n, const Field& f);
void write_word_file(const std::string& path, const Word& w, std::size_t n, const Field& f);

// Histogram JSON:
// {"n":..., "p":..., "m":..., "group_order":"<decimal>",
//  "histogram":{"0":1, ...}, "diameter":..., "mean":...}
std::string histogram_to_json(const DistanceHistogram& h);
void write_histogram_file(const std::string& path, const DistanceHistogram& h);
DistanceHistogram read_histogram_file(const std::string& path);

// Locale-independent float formatting for CSV/JSON output.
std::string fmt_double(double v, int precision = 6);

}  // namespace io
}  // namespace ffreduce
