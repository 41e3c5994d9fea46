#pragma once

/// \file apss/io.hpp
/// MatrixMarket coordinate files, system manifests and eigenvalue CSVs.

#include <filesystem>
#include <map>
#include <string>

#include "apss/dense.hpp"
#include "apss/saddle.hpp"

namespace apss {

/// Reads `%%MatrixMarket matrix coordinate real general|symmetric`.
/// Symmetric files are expanded to full storage.
SparseMatrix load_matrix_market(const std::filesystem::path& path);

/// Writes a general real coordinate file with 17 significant digits.
void save_matrix_market(const SparseMatrix& m, const std::filesystem::path& path);

/// Text manifest naming the A, B, C MatrixMarket files of a system:
///
///     %APSS manifest
///     A A.mtx
///     B B.mtx
///     C C.mtx
///     dof 258
///     <any other key> <value...>
///
/// Relative paths are resolved against the manifest's directory.
struct SystemManifest {
  std::filesystem::path a, b, c;
  std::map<std::string, std::string> meta;
};

SystemManifest read_manifest(const std::filesystem::path& path);
SaddleSystem load_system(const std::filesystem::path& manifest_path);

/// Writes A.mtx, B.mtx, C.mtx and manifest.txt into `dir` and returns the
/// manifest path. `meta` entries are appended after the dof line.
std::filesystem::path save_system(const SaddleSystem& sys, const std::filesystem::path& dir,
                                  const std::map<std::string, std::string>& meta = {});

/// `re,im` header, one row per eigenvalue, 17 significant digits.
void write_eigenvalue_csv(const ComplexVector& eigs, const std::filesystem::path& path);

}  // namespace apss
