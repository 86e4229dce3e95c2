#include "ellgen/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ellgen/errors.hpp"

namespace ellgen {

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

namespace {

Integer integer_from_json(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()), 10);
  if (v.is_number_unsigned()) return Integer(std::to_string(v.get<unsigned long long>()), 10);
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw ParseError(where + ": expected an integer");
}

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

int small_int(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000)
    throw ParseError(std::string("field '") + key + "' must be a small non-negative integer");
  return v.get<int>();
}

const Json& chern_map(const Json& j) {
  if (!j.contains("chern") || !j.at("chern").is_object()) throw ParseError("missing object field 'chern'");
  return j.at("chern");
}

const Json& unwrap_series(const Json& j) {
  if (j.is_object()) {
    if (!j.contains("series")) throw ParseError("record has no 'series' field");
    return j.at("series");
  }
  return j;
}

}  // namespace

ChernData chern_from_json(const Json& j) {
  ChernData m;
  m.dim = small_int(j, "dim");
  for (const auto& [key, value] : chern_map(j).items()) {
    Partition p = parse_partition(key);
    Integer v = integer_from_json(value, "Chern number '" + key + "'");
    if (m.numbers.count(p)) throw ParseError("duplicate Chern key '" + key + "'");
    if (v != 0) m.numbers[p] = v;
  }
  m.validate();
  return m;
}

Json chern_to_json(const ChernData& m) {
  Json chern = Json::object();
  for (const auto& [p, v] : m.numbers) chern[format_partition(p)] = integer_to_json(v);
  return Json{{"dim", m.dim}, {"chern", chern}};
}

SplitChernData split_chern_from_json(const Json& j) {
  SplitChernData x;
  x.dim0 = small_int(j, "dim0");
  x.dim1 = small_int(j, "dim1");
  for (const auto& [key, value] : chern_map(j).items()) {
    auto bar = key.find('|');
    if (bar == std::string::npos || key.find('|', bar + 1) != std::string::npos)
      throw ParseError("split Chern key '" + key + "' must have the form '<lambda>|<mu>'");
    Partition lambda = parse_partition(key.substr(0, bar));
    Partition mu = parse_partition(key.substr(bar + 1));
    Integer v = integer_from_json(value, "split Chern number '" + key + "'");
    if (v != 0) x.numbers[{lambda, mu}] = v;
  }
  x.validate();
  return x;
}

Json split_chern_to_json(const SplitChernData& x) {
  Json chern = Json::object();
  for (const auto& [key, v] : x.numbers)
    chern[format_partition(key.first) + "|" + format_partition(key.second)] = integer_to_json(v);
  return Json{{"dim0", x.dim0}, {"dim1", x.dim1}, {"chern", chern}};
}

Json cyclo_to_json(const Cyclo& c) { return Json(serialize(c)); }

Cyclo cyclo_from_json(const CycloField& field, const Json& j) {
  if (!j.is_array()) throw ParseError("a cyclotomic number is a list of \"num/den\" strings");
  std::vector<std::string> coords;
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError("cyclotomic coordinates must be strings");
    coords.push_back(x.get<std::string>());
  }
  return parse_cyclo(field, coords);
}

Json qseries_to_json(const QSeries& s) {
  Json out = Json::array();
  for (const auto& c : s.coeffs()) out.push_back(cyclo_to_json(c));
  return out;
}

QSeries qseries_from_json(const CycloField& field, const Json& j) {
  const Json& list = unwrap_series(j);
  if (!list.is_array() || list.empty()) throw ParseError("a q-series is a non-empty list of coefficients");
  std::vector<Cyclo> coeffs;
  for (const auto& c : list) coeffs.push_back(cyclo_from_json(field, c));
  return QSeries(field, std::move(coeffs));
}

Json pqseries_to_json(const PQSeries& s) {
  Json out = Json::array();
  for (const auto& row : s.rows()) out.push_back(qseries_to_json(row));
  return out;
}

PQSeries pqseries_from_json(const CycloField& field, const Json& j) {
  const Json& rows = unwrap_series(j);
  if (!rows.is_array() || rows.empty()) throw ParseError("a (p,q)-series is a non-empty list of rows");
  std::vector<QSeries> out;
  for (const auto& r : rows) {
    out.push_back(qseries_from_json(field, r));
    if (out.back().prec() != out.front().prec()) throw ParseError("(p,q)-series rows must have equal length");
  }
  return PQSeries(std::move(out));
}

Json certificate_to_json(const BasisCertificate& c) {
  return Json{{"dimension", c.dimension},
              {"rank", c.rank},
              {"sturm", c.sturm},
              {"prec", c.prec},
              {"candidates", c.candidates}};
}

Json basis_to_json(const ModFormBasis& b) {
  Json elements = Json::array();
  for (const auto& e : b.elements) elements.push_back(qseries_to_json(e));
  return Json{{"level", b.level},
              {"field_level", b.field().level()},
              {"weight", b.weight},
              {"prec", b.prec},
              {"sturm", b.certificate.sturm},
              {"elements", elements},
              {"pivots", b.pivots},
              {"certificate", certificate_to_json(b.certificate)}};
}

std::string basis_hash(const ModFormBasis& b) {
  const std::string text = basis_to_json(b).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

Json uq_report(const UqClass& c) {
  Json residual = Json::array();
  for (const auto& k : c.cosets) residual.push_back(cyclo_to_json(k.rep));
  Json modular = Json::array();
  for (const auto& m : c.modular_part) modular.push_back(cyclo_to_json(m));
  ModFormBasis basis = weight_basis(c.level, c.weight(), c.prec);
  return Json{{"verdict", c.trivial ? "trivial" : "nontrivial"},
              {"level", c.level},
              {"degree", c.degree},
              {"weight", c.weight()},
              {"prec", c.prec},
              {"sturm", c.sturm},
              {"residual", residual},
              {"modular_combination", modular},
              {"basis_certificate", certificate_to_json(c.certificate)},
              {"basis_certificate_hash", basis_hash(basis)}};
}

Json wt_report(const WtClass& c) {
  Json mixed = Json::array();
  for (std::size_t i = 0; i < c.mixed.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < c.mixed[i].size(); ++j) row.push_back(cyclo_to_json(c.mixed[i][j].rep));
    mixed.push_back(row);
  }
  return Json{{"verdict", c.trivial ? "trivial" : "nontrivial"},
              {"level", c.level},
              {"degree", c.degree},
              {"prec_p", c.prec_p},
              {"prec_q", c.prec_q},
              {"sturm", c.p_series.sturm},
              {"p_series", uq_report(c.p_series)},
              {"q_series", uq_report(c.q_series)},
              {"mixed", mixed}};
}

}  // namespace ellgen
