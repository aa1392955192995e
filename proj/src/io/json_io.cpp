#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "entroscope/io.hpp"

namespace entroscope::io {

namespace {

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(field, "number is not finite");
  return v;
}

const json& member(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("/", "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("/") + key, "missing field");
  return *it;
}

void dump_to(std::string& out, const json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  // innermost numeric arrays (e.g. [re, im]) stay on one line
  auto flat = [](const json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  switch (j.type()) {
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      bool one_line = flat(j);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += one_line && indent >= 0 ? ", " : ",";
        first = false;
        if (!one_line) newline(depth + 1);
        dump_to(out, e, indent, depth + 1);
      }
      if (!one_line) newline(depth);
      out += ']';
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        dump_to(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ParseError(field, "expected a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  Matrix m;
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    std::string rf = field + "/" + std::to_string(i);
    if (!row.is_array()) throw ParseError(rf, "expected an array of entries");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      m = Matrix::Zero(rows, cols);
    }
    if (static_cast<Index>(row.size()) != cols) throw ParseError(rf, "row length differs from the first row");
    for (Index k = 0; k < cols; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      std::string ef = rf + "/" + std::to_string(k);
      if (e.is_number()) {
        m(i, k) = number_at(e, ef);
      } else if (e.is_array() && e.size() == 2) {
        m(i, k) = cplx(number_at(e[0], ef + "/0"), number_at(e[1], ef + "/1"));
      } else {
        throw ParseError(ef, "expected [re, im] or a real number");
      }
    }
  }
  return m;
}

json state_to_json(const QState& rho) {
  json j;
  json dims = json::array(), labels = json::array();
  for (const auto& s : rho.layout().subsystems()) {
    dims.push_back(s.dim);
    labels.push_back(s.label);
  }
  j["dims"] = dims;
  j["labels"] = labels;
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

QState state_from_json(const json& j) {
  const json& dims = member(j, "dims");
  if (!dims.is_array() || dims.empty()) throw ParseError("/dims", "expected a nonempty array of dimensions");
  std::vector<Index> d;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!dims[i].is_number_integer() || dims[i].get<long long>() < 1)
      throw ParseError("/dims/" + std::to_string(i), "expected a positive integer");
    d.push_back(static_cast<Index>(dims[i].get<long long>()));
  }
  SystemLayout layout = SystemLayout::from_dims(d);
  if (j.contains("labels")) {
    const json& labels = j["labels"];
    if (!labels.is_array() || labels.size() != dims.size())
      throw ParseError("/labels", "expected one label per dimension");
    std::vector<Subsystem> subs;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i].is_string() || labels[i].get<std::string>().empty())
        throw ParseError("/labels/" + std::to_string(i), "expected a nonempty string");
      subs.push_back({labels[i].get<std::string>(), d[i]});
    }
    try {
      layout = SystemLayout(subs);
    } catch (const InvalidArgument& e) {
      throw ParseError("/labels", e.what());
    }
  }
  Matrix m = matrix_from_json(member(j, "matrix"), "/matrix");
  if (m.rows() != m.cols() || m.rows() != layout.total_dim())
    throw ParseError("/matrix", "shape does not match the product of dims (" + std::to_string(layout.total_dim()) + ")");
  try {
    return QState(HermitianOperator(m, 1e-10), layout);
  } catch (const InvalidArgument& e) {
    throw ParseError("/matrix", e.what());
  }
}

json channel_to_json(const QChannel& ch) {
  json j;
  j["dim_in"] = ch.dim_in();
  j["dim_out"] = ch.dim_out();
  j["trace_preserving"] = ch.trace_preserving();
  j["trace_non_increasing"] = ch.trace_non_increasing();
  j["sub_unital"] = ch.sub_unital();
  json kraus = json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  j["kraus"] = kraus;
  return j;
}

QChannel channel_from_json(const json& j) {
  const json& kraus = member(j, "kraus");
  if (!kraus.is_array() || kraus.empty()) throw ParseError("/kraus", "expected a nonempty array of matrices");
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < kraus.size(); ++i) ops.push_back(matrix_from_json(kraus[i], "/kraus/" + std::to_string(i)));
  try {
    return QChannel(std::move(ops));
  } catch (const InvalidArgument& e) {
    throw ParseError("/kraus", e.what());
  }
}

std::string dump(const json& j, int indent) {
  std::string out;
  dump_to(out, j, indent, 0);
  return out;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path, std::string("invalid JSON: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text << '\n';
  if (!out) throw Error("write failed for " + path);
}

}  // namespace entroscope::io
