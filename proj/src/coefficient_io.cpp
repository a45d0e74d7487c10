#include "radneedlet/coefficient_io.hpp"

#include <algorithm>
#include <cerrno>
#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace radneedlet {

namespace {

constexpr std::array<char, 4> kMagic = {'R', 'N', 'C', 'V'};
constexpr std::uint32_t kVersion = 1;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  }
  return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading: " + std::strerror(errno));
  }
  return in;
}

}  // namespace

void write_coefficients_csv(const CoefficientVector& c, std::ostream& out) {
  out << "k,l,i,value\n";
  out << std::setprecision(17);
  for (std::size_t r = 0; r < c.size(); ++r) {
    const SvdIndex idx = SvdIndex::from_rank(r);
    out << idx.k() << ',' << idx.l() << ',' << idx.i() << ',' << c.at_rank(r) << '\n';
  }
}

void write_coefficients_csv(const CoefficientVector& c, const std::string& path) {
  auto out = open_out(path);
  write_coefficients_csv(c, out);
}

CoefficientVector read_coefficients_csv(std::istream& in) {
  std::vector<std::tuple<int, int, int, double>> rows;
  std::string line;
  int max_k = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    int k = 0, l = 0, i = 0;
    double v = 0.0;
    if (!(fields >> k >> l >> i >> v)) {
      throw std::runtime_error("malformed coefficient row at line " + std::to_string(line_no));
    }
    SvdIndex check(k, l, i);
    (void)check;
    rows.emplace_back(k, l, i, v);
    max_k = std::max(max_k, k);
  }
  if (max_k < 0) {
    throw std::runtime_error("coefficient file holds no rows");
  }
  CoefficientVector c(max_k);
  for (const auto& [k, l, i, v] : rows) {
    c[SvdIndex(k, l, i)] = v;
  }
  return c;
}

CoefficientVector read_coefficients_csv(const std::string& path) {
  auto in = open_in(path);
  return read_coefficients_csv(in);
}

void write_coefficients_binary(const CoefficientVector& c, const std::string& path) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  const std::uint32_t degree = static_cast<std::uint32_t>(c.max_degree());
  const std::uint64_t count = c.size();
  const std::uint32_t reserved = 0;
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(&kVersion), sizeof kVersion);
  out.write(reinterpret_cast<const char*>(&degree), sizeof degree);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(&reserved), sizeof reserved);
  out.write(reinterpret_cast<const char*>(c.values().data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

CoefficientVector read_coefficients_binary(const std::string& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  std::array<char, 4> magic{};
  std::uint32_t version = 0, degree = 0, reserved = 0;
  std::uint64_t count = 0;
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&degree), sizeof degree);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  in.read(reinterpret_cast<char*>(&reserved), sizeof reserved);
  if (!in || magic != kMagic || version != kVersion) {
    throw std::runtime_error("'" + path + "' is not a coefficient file");
  }
  if (count != index_count(static_cast<int>(degree))) {
    throw std::runtime_error("'" + path + "' has inconsistent header");
  }
  std::vector<double> values(count);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) {
    throw std::runtime_error("'" + path + "' is truncated");
  }
  return CoefficientVector(static_cast<int>(degree), std::move(values));
}

CoefficientVector read_coefficients(const std::string& path) {
  return ends_with(path, ".csv") ? read_coefficients_csv(path) : read_coefficients_binary(path);
}

void write_coefficients(const CoefficientVector& c, const std::string& path) {
  if (ends_with(path, ".csv")) {
    write_coefficients_csv(c, path);
  } else {
    write_coefficients_binary(c, path);
  }
}

}  // namespace radneedlet
