#include "mmrec/artifacts.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "mmrec/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "artifact formats are little-endian; big-endian hosts are unsupported");

namespace mmrec {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in, const std::filesystem::path& path) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    fail(ErrorCode::MalformedArtifact, "truncated file: " + path.string());
  return v;
}

std::uint64_t get_u64(std::istream& in, const std::filesystem::path& path) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    fail(ErrorCode::MalformedArtifact, "truncated file: " + path.string());
  return v;
}

void put_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
}

Eigen::MatrixXd get_matrix(std::istream& in, const std::filesystem::path& path) {
  const auto rows = get_u64(in, path);
  const auto cols = get_u64(in, path);
  if (rows > (1ULL << 32) || cols > (1ULL << 32))
    fail(ErrorCode::MalformedArtifact, "implausible matrix shape in " + path.string());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double v;
      if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        fail(ErrorCode::MalformedArtifact, "truncated matrix in " + path.string());
      m(r, c) = v;
    }
  return m;
}

}  // namespace

void write_matrix_artifact(const std::filesystem::path& path,
                           const nlohmann::json& header,
                           const std::vector<Eigen::MatrixXd>& matrices) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::MissingFile, "cannot open for writing: " + path.string());
  out << header.dump() << '\n';
  for (const auto& m : matrices) put_matrix(out, m);
  if (!out) fail(ErrorCode::Internal, "write failed: " + path.string());
}

MatrixArtifact read_matrix_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, path.string());
  std::string header_line;
  if (!std::getline(in, header_line))
    fail(ErrorCode::MalformedArtifact, "missing header: " + path.string());
  MatrixArtifact art;
  try {
    art.header = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedArtifact, path.string() + ": " + e.what());
  }
  while (in.peek() != std::ifstream::traits_type::eof())
    art.matrices.push_back(get_matrix(in, path));
  return art;
}

void write_simm(const std::filesystem::path& path, const SimilarityMatrix& sim) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::MissingFile, "cannot open for writing: " + path.string());
  out.write("SIMM", 4);
  put_u32(out, 1);
  put_u64(out, static_cast<std::uint64_t>(sim.ids.size()));
  for (const auto& id : sim.ids) {
    put_u32(out, static_cast<std::uint32_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
  }
  for (Eigen::Index r = 0; r < sim.values.rows(); ++r)
    for (Eigen::Index c = 0; c < sim.values.cols(); ++c) {
      const double v = sim.values(r, c);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  if (!out) fail(ErrorCode::Internal, "write failed: " + path.string());
}

SimilarityMatrix read_simm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, path.string());
  char magic[4] = {};
  if (!in.read(magic, 4) || std::memcmp(magic, "SIMM", 4) != 0)
    fail(ErrorCode::MalformedArtifact, "bad magic in " + path.string());
  const auto version = get_u32(in, path);
  if (version != 1)
    fail(ErrorCode::MalformedArtifact, "unsupported SIMM version in " + path.string());
  const auto n = get_u64(in, path);
  if (n > (1ULL << 24))
    fail(ErrorCode::MalformedArtifact, "implausible size in " + path.string());
  SimilarityMatrix sim;
  sim.ids.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto len = get_u32(in, path);
    std::string id(len, '\0');
    if (!in.read(id.data(), len))
      fail(ErrorCode::MalformedArtifact, "truncated id in " + path.string());
    sim.ids.push_back(std::move(id));
  }
  sim.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index r = 0; r < sim.values.rows(); ++r)
    for (Eigen::Index c = 0; c < sim.values.cols(); ++c) {
      double v;
      if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        fail(ErrorCode::MalformedArtifact, "truncated matrix in " + path.string());
      sim.values(r, c) = v;
    }
  return sim;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::MissingFile, "cannot open for writing: " + path.string());
  out << content;
  if (!out) fail(ErrorCode::Internal, "write failed: " + path.string());
}

}  // namespace mmrec
