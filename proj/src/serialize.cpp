#include "lieortho/serialize.hpp"

#include <stdexcept>

namespace lieortho {

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json rvec_to_json(const RVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

namespace {

Cplx entry_from_json(const Json& e) {
  if (e.is_number()) return Cplx(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return Cplx(e[0].get<double>(), e[1].get<double>());
  throw std::invalid_argument(
      "matrix entry must be a number or a [re, im] pair of numbers");
}

}  // namespace

Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw std::invalid_argument("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();

  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::invalid_argument("matrix rows must all have the same length");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          entry_from_json(j[i][k]);
  }
  return m;
}

Json coxeter_lift_to_json(const CoxeterLift& l) {
  return Json{{"m", l.parent.n},
              {"n_mat", mat_to_json(l.n_mat)},
              {"g", mat_to_json(l.g_mat)},
              {"D", mat_to_json(l.d_mat)},
              {"Lambda", mat_to_json(l.lambda)},
              {"N", mat_to_json(l.n_log)}};
}

Json descent_trace_to_json(const DescentTrace& t) {
  Json steps = Json::array();
  for (const DescentStep& s : t.steps) {
    steps.push_back(Json{{"root_index", s.root_index},
                         {"angle", s.angle},
                         {"axis", s.axis},
                         {"h_coord", s.h_coord},
                         {"c_before", s.c_before},
                         {"c_after", s.c_after}});
  }
  return Json{{"iterations", t.iterations}, {"steps", std::move(steps)}};
}

Json goto_witness_to_json(const GotoWitness& w) {
  return Json{{"a", mat_to_json(w.a)},
              {"b", mat_to_json(w.b)},
              {"residual", w.residual},
              {"a_regular", w.a_regular},
              {"strategy", goto_strategy_to_string(w.strategy)}};
}

}  // namespace lieortho
