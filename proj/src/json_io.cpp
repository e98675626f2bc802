#include "detgeo/json_io.hpp"

#include <sstream>

namespace detgeo {

using nlohmann::json;

json matrix_to_json(const CMat& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

CMat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
      !j.contains("im")) {
    throw IoError("matrix json: expected object with rows, cols, re, im");
  }
  Index rows = j.at("rows").get<Index>();
  Index cols = j.at("cols").get<Index>();
  if (rows < 0 || cols < 0) {
    throw IoError("matrix json: negative dimensions");
  }
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() ||
      static_cast<Index>(re.size()) != rows * cols ||
      static_cast<Index>(im.size()) != rows * cols) {
    std::ostringstream os;
    os << "matrix json: entry arrays must have length rows*cols = " << rows * cols;
    throw IoError(os.str());
  }
  CMat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      size_t idx = static_cast<size_t>(i * cols + k);
      m(i, k) = Cplx(re.at(idx).get<double>(), im.at(idx).get<double>());
    }
  }
  return m;
}

namespace {

Polarization pol_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n_plus") || !j.contains("n_minus")) {
    throw IoError("polarization json: expected object with n_plus, n_minus");
  }
  return Polarization{j.at("n_plus").get<Index>(), j.at("n_minus").get<Index>()};
}

json pol_to_json(const Polarization& pol) {
  return json{{"n_plus", pol.n_plus}, {"n_minus", pol.n_minus}};
}

}  // namespace

json point_to_json(const GrassmannPoint& p) {
  return json{{"type", "grassmann_point"}, {"pol", pol_to_json(p.pol)},
              {"F", matrix_to_json(p.F)}};
}

GrassmannPoint point_from_json(const json& j) {
  if (!j.is_object() || j.value("type", "") != "grassmann_point") {
    throw IoError("grassmann point json: expected object with type=grassmann_point");
  }
  GrassmannPoint p{matrix_from_json(j.at("F")), pol_from_json(j.at("pol"))};
  if (p.F.rows() != p.pol.dim() || p.F.cols() != p.pol.dim()) {
    throw IoError("grassmann point json: matrix size does not match the polarization");
  }
  return p;
}

json frame_to_json(const Frame& w) {
  return json{{"type", "frame"}, {"pol", pol_to_json(w.pol)}, {"w", matrix_to_json(w.w)}};
}

Frame frame_from_json(const json& j) {
  if (!j.is_object() || j.value("type", "") != "frame") {
    throw IoError("frame json: expected object with type=frame");
  }
  Frame w{matrix_from_json(j.at("w")), pol_from_json(j.at("pol"))};
  if (w.w.rows() != w.pol.dim() || w.w.cols() != w.pol.n_plus) {
    throw IoError("frame json: matrix size does not match the polarization");
  }
  return w;
}

}  // namespace detgeo
