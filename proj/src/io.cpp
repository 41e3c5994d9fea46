#include "apss/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace apss {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SparseMatrix load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open MatrixMarket file " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + ": empty file");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate")
    throw Error(path.string() + ": expected a '%%MatrixMarket matrix coordinate' banner");
  if (lower(field) != "real") throw Error(path.string() + ": only real-valued files are supported");
  symmetry = lower(symmetry);
  if (symmetry != "general" && symmetry != "symmetric")
    throw Error(path.string() + ": unsupported symmetry '" + symmetry + "'");
  const bool symmetric = symmetry == "symmetric";

  // Size line: first non-comment, non-blank line.
  std::size_t rows = 0, cols = 0, count = 0;
  bool have_size = false;
  while (std::getline(in, line)) {
    if (line.starts_with('%') || is_blank(line)) continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> count)) throw Error(path.string() + ": malformed size line");
    have_size = true;
    break;
  }
  if (!have_size) throw Error(path.string() + ": missing size line");
  if (symmetric && rows != cols) throw Error(path.string() + ": symmetric matrix must be square");

  std::vector<Triplet> entries;
  entries.reserve(symmetric ? 2 * count : count);
  std::size_t read = 0;
  while (std::getline(in, line)) {
    if (line.starts_with('%') || is_blank(line)) continue;
    if (read == count) throw Error(path.string() + ": more entries than declared");
    std::istringstream ss(line);
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(ss >> i >> j >> v)) throw Error(path.string() + ": malformed entry line");
    if (i == 0 || j == 0 || i > rows || j > cols)
      throw Error(path.string() + ": entry index out of range");
    entries.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
    ++read;
  }
  if (read != count)
    throw Error(path.string() + ": declared " + std::to_string(count) + " entries but found " +
                std::to_string(read));
  return from_triplets(rows, cols, entries);
}

void save_matrix_market(const SparseMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const auto& e : m.triplets()) out << e.row + 1 << ' ' << e.col + 1 << ' ' << format17(e.value) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

SystemManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path.string());
  const auto base = path.parent_path();

  SystemManifest man;
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with('%') || line.starts_with('#') || is_blank(line)) continue;
    std::istringstream ss(line);
    std::string key, value;
    ss >> key;
    std::getline(ss >> std::ws, value);
    if (value.empty()) throw Error(path.string() + ": key '" + key + "' has no value");
    if (key == "A" || key == "B" || key == "C") {
      std::filesystem::path p(value);
      if (p.is_relative()) p = base / p;
      (key == "A" ? man.a : key == "B" ? man.b : man.c) = p;
    } else {
      man.meta[key] = value;
    }
  }
  if (man.a.empty() || man.b.empty() || man.c.empty())
    throw Error(path.string() + ": manifest must name A, B and C");
  return man;
}

SaddleSystem load_system(const std::filesystem::path& manifest_path) {
  const auto man = read_manifest(manifest_path);
  return {load_matrix_market(man.a), load_matrix_market(man.b), load_matrix_market(man.c)};
}

std::filesystem::path save_system(const SaddleSystem& sys, const std::filesystem::path& dir,
                                  const std::map<std::string, std::string>& meta) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory " + dir.string() + ": " + ec.message());
  save_matrix_market(sys.A(), dir / "A.mtx");
  save_matrix_market(sys.B(), dir / "B.mtx");
  save_matrix_market(sys.C(), dir / "C.mtx");

  const auto manifest = dir / "manifest.txt";
  std::ofstream out(manifest);
  if (!out) throw Error("cannot write " + manifest.string());
  out << "%APSS manifest\nA A.mtx\nB B.mtx\nC C.mtx\n";
  out << "dof " << sys.order() << '\n';
  out << "n " << sys.n() << "\nm " << sys.m() << "\nl " << sys.l() << '\n';
  for (const auto& [k, v] : meta) out << k << ' ' << v << '\n';
  if (!out) throw Error("write failed for " + manifest.string());
  return manifest;
}

void write_eigenvalue_csv(const ComplexVector& eigs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "re,im\n";
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    out << format17(eigs[i].real()) << ',' << format17(eigs[i].imag()) << '\n';
}

}  // namespace apss
