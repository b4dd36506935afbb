#include "statemap/io.hpp"

#include <fstream>
#include <sstream>

namespace statemap::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw MalformedInput("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw MalformedInput(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t dimension(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw MalformedInput(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw MalformedInput("complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_array(std::span<const Complex> v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_pair(z));
  return out;
}

std::vector<Complex> complex_array_from(const Json& j) {
  if (!j.is_array()) throw MalformedInput("'data' must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from(e));
  return out;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = complex_array(m.data());
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = dimension(j, "rows"), cols = dimension(j, "cols");
  auto data = complex_array_from(field(j, "data"));
  if (data.size() != rows * cols) {
    throw MalformedInput("matrix data has " + std::to_string(data.size()) + " entries, expected " +
                         std::to_string(rows * cols));
  }
  try {
    return ComplexMatrix(rows, cols, std::move(data));
  } catch (const ShapeMismatch& e) {
    throw MalformedInput(e.what());
  }
}

Json to_json(const SuperOperator& phi) {
  Json j;
  j["dim_in"] = phi.dim_in;
  j["dim_out"] = phi.dim_out;
  j["matrix"] = to_json(phi.matrix);
  return j;
}

SuperOperator superoperator_from_json(const Json& j) {
  return SuperOperator(dimension(j, "dim_in"), dimension(j, "dim_out"), matrix_from_json(field(j, "matrix")));
}

Json to_json(const ChoiOperator& c) {
  Json j;
  j["dim1"] = c.dim1;
  j["dim2"] = c.dim2;
  j["twisted"] = false;
  j["matrix"] = to_json(c.matrix);
  return j;
}

Json to_json(const TwistedChoiOperator& c) {
  Json j;
  j["dim1"] = c.dim1;
  j["dim2"] = c.dim2;
  j["twisted"] = true;
  j["matrix"] = to_json(c.matrix);
  return j;
}

AnyChoi choi_from_json(const Json& j) {
  const std::size_t d1 = dimension(j, "dim1"), d2 = dimension(j, "dim2");
  const Json& tw = field(j, "twisted");
  if (!tw.is_boolean()) throw MalformedInput("field 'twisted' must be a boolean");
  ComplexMatrix m = matrix_from_json(field(j, "matrix"));
  AnyChoi out;
  out.twisted = tw.get<bool>();
  if (out.twisted) {
    out.twisted_op = TwistedChoiOperator(d1, d2, std::move(m));
  } else {
    out.plain = ChoiOperator(d1, d2, std::move(m));
  }
  return out;
}

Json to_json(const KrausChannel& k) {
  Json j;
  j["dim_in"] = k.dim_in;
  j["dim_out"] = k.dim_out;
  Json pairs = Json::array();
  for (const auto& t : k.terms) {
    Json p;
    p["A"] = to_json(t.a);
    p["B"] = to_json(t.b);
    p["weight"] = complex_pair(t.weight);
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

KrausChannel kraus_from_json(const Json& j) {
  const std::size_t d_in = dimension(j, "dim_in"), d_out = dimension(j, "dim_out");
  const Json& pairs = field(j, "pairs");
  if (!pairs.is_array()) throw MalformedInput("'pairs' must be an array");
  std::vector<KrausTerm> terms;
  for (const auto& p : pairs) {
    terms.push_back({matrix_from_json(field(p, "A")), matrix_from_json(field(p, "B")), complex_from(field(p, "weight"))});
  }
  return KrausChannel(d_in, d_out, std::move(terms));
}

Json to_json(const BipartiteVector& v) {
  Json j;
  j["dim1"] = v.dim1;
  j["dim2"] = v.dim2;
  j["data"] = complex_array(v.amplitudes);
  return j;
}

BipartiteVector vector_from_json(const Json& j) {
  const std::size_t d1 = dimension(j, "dim1"), d2 = dimension(j, "dim2");
  auto data = complex_array_from(field(j, "data"));
  if (data.size() != d1 * d2) throw MalformedInput("vector data length does not match dim1 * dim2");
  return BipartiteVector(d1, d2, std::move(data));
}

Json to_json(const PositivityVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["value"] = v.value;
  if (v.witness) {
    j["witness"] = std::visit([](const auto& w) { return to_json(w); }, *v.witness);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const HarnessReport& r) {
  Json j = to_json(r.cp);
  j["k"] = r.k;
  j["trials"] = r.trials;
  j["random_min_identity"] = r.random_min_identity;
  j["random_min_kraus"] = r.random_min_kraus;
  j["witness_min_identity"] = r.witness_min_identity ? Json(*r.witness_min_identity) : Json(nullptr);
  j["witness_min_kraus"] = r.witness_min_kraus ? Json(*r.witness_min_kraus) : Json(nullptr);
  j["max_hermiticity_defect"] = r.max_hermiticity_defect;
  j["most_negative"] = r.most_negative;
  j["violation"] = r.violation;
  return j;
}

Json to_json(const MeasureReport& r) {
  Json j;
  j["upper_bound"] = r.upper_bound;
  j["shifted"] = r.shifted;
  j["tol"] = r.tol;
  j["source"] = r.source;
  j["restart"] = r.restart;
  j["mix_dim"] = r.mix_dim;
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    Json e;
    e["weight"] = t.weight;
    e["schmidt_rank"] = t.schmidt_rank;
    e["vector"] = to_json(t.vector);
    terms.push_back(std::move(e));
  }
  j["decomposition"] = std::move(terms);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw MalformedInput("'" + path.string() + "': " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot write '" + path.string() + "'");
  out << dump(j);
}

}  // namespace statemap::io
