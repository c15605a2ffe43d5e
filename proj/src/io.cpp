#include "qcorr/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qcorr {

namespace {

Mat4 parse_matrix(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.contains("dim") || j["dim"].get<int>() != 4) {
    throw std::invalid_argument("matrix file must declare \"dim\": 4");
  }
  if (!j.contains("re") || !j.contains("im")) {
    throw std::invalid_argument("matrix file must contain \"re\" and \"im\" arrays");
  }
  const auto& re = j["re"];
  const auto& im = j["im"];
  if (re.size() != 4 || im.size() != 4) {
    throw std::invalid_argument("matrix rows must have length 4");
  }
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    if (re[i].size() != 4 || im[i].size() != 4) {
      throw std::invalid_argument("matrix rows must have length 4");
    }
    for (std::size_t k = 0; k < 4; ++k) {
      m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
    }
  }
  return m;
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  return in;
}

}  // namespace

std::string density_matrix_to_json(const DensityMatrix& rho) {
  nlohmann::json j;
  j["dim"] = 4;
  auto re = nlohmann::json::array();
  auto im = nlohmann::json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    auto re_row = nlohmann::json::array();
    auto im_row = nlohmann::json::array();
    for (std::size_t k = 0; k < 4; ++k) {
      re_row.push_back(rho.matrix()(i, k).real());
      im_row.push_back(rho.matrix()(i, k).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump(2) + "\n";
}

DensityMatrix read_density_matrix(std::istream& in) {
  return DensityMatrix::make(parse_matrix(in));
}

DensityMatrix read_density_matrix_file(const std::string& path) {
  auto in = open_file(path);
  return read_density_matrix(in);
}

Mat4 read_unitary(std::istream& in) {
  const Mat4 u = parse_matrix(in);
  if (unitarity_defect(u) > 1e-8) {
    throw std::invalid_argument("matrix is not unitary within tolerance");
  }
  return u;
}

Mat4 read_unitary_file(const std::string& path) {
  auto in = open_file(path);
  return read_unitary(in);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << contents;
}

}  // namespace qcorr
