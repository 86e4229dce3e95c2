#pragma once

#include <string>

#include "json.hpp"

#include "ellgen/genus.hpp"
#include "ellgen/modforms.hpp"
#include "ellgen/reduce.hpp"

namespace ellgen {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

/// { "dim": n, "chern": { "2,1": 5, ... } } with integer or string-encoded values.
ChernData chern_from_json(const Json& j);
Json chern_to_json(const ChernData& m);

/// { "dim0": a, "dim1": b, "chern": { "<lambda>|<mu>": value } }.
SplitChernData split_chern_from_json(const Json& j);
Json split_chern_to_json(const SplitChernData& x);

Json cyclo_to_json(const Cyclo& c);
Cyclo cyclo_from_json(const CycloField& field, const Json& j);

/// Ordered list of serialized coefficients; a record with a "series" field is also accepted.
Json qseries_to_json(const QSeries& s);
QSeries qseries_from_json(const CycloField& field, const Json& j);
/// Row-major rectangle: element i is the list of coefficients of p^i q^j over j.
Json pqseries_to_json(const PQSeries& s);
PQSeries pqseries_from_json(const CycloField& field, const Json& j);

Json certificate_to_json(const BasisCertificate& c);
/// level, weight, prec, sturm, elements, pivots, certificate.
Json basis_to_json(const ModFormBasis& b);
/// Hex SHA-256 of the compact basis dump.
std::string basis_hash(const ModFormBasis& b);

/// verdict, residual cosets, modular combination, precisions, sturm bound and basis hash.
Json uq_report(const UqClass& c);
Json wt_report(const WtClass& c);

}  // namespace ellgen
