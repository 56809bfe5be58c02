#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lapreg/types.hpp"

namespace lapreg {

/// Shortest representation at 17 significant digits ("%.17g"), enough to
/// round-trip any double bit-exactly. All emitted files use this format.
std::string fmt17(double x);

/// Dense row-major CSV, one line per matrix row, no header.
void write_matrix_csv(const std::string& path, const Matrix& a);
Matrix read_matrix_csv(const std::string& path);

/// Flat "key=value" text file, one pair per line, insertion order kept.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& kv);

/// Creates the directory (and parents) and verifies it is writable by
/// touching a probe file. Throws io_error otherwise.
void ensure_writable_dir(const std::string& dir);

}  // namespace lapreg
