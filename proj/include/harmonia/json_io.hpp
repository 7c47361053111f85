#pragma once

#include <string>

#include "json.hpp"

#include "harmonia/algebra.hpp"
#include "harmonia/hulls.hpp"
#include "harmonia/line.hpp"
#include "harmonia/polynomial.hpp"
#include "harmonia/seq_spaces.hpp"
#include "harmonia/torus.hpp"

namespace harmonia::io {

using json = nlohmann::ordered_json;

/// Reads a JSON document; ParseError on I/O or syntax failure.
json read_json_file(const std::string& path);
json parse_json(const std::string& text);

json to_json(Complex c);
Complex complex_from_json(const json& j);
/// Accepts [x, ...] (real) or [{re, im}, ...].
std::vector<Complex> complex_list_from_json(const json& j);
std::vector<double> real_list_from_json(const json& j);

json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j);

json to_json(const seq::SeqVector& v);
seq::SeqVector seq_from_json(const json& j);
/// One entry per line: "re" or "re,im"; blank lines and '#' comments skipped.
seq::SeqVector seq_from_csv(const std::string& text);
/// JSON when the text starts with '{', CSV otherwise.
seq::SeqVector read_seq_file(const std::string& path);

json to_json(const torus::TorusFunction& f);
torus::TorusFunction torus_function_from_json(const json& j);
json to_json(const torus::CoeffTable& c);
torus::CoeffTable coeff_table_from_json(const json& j);
json to_json(const torus::TorusAtomicMeasure& mu);
torus::TorusAtomicMeasure torus_measure_from_json(const json& j);

json to_json(const line::LineFunction& f);
line::LineFunction line_function_from_json(const json& j);
json to_json(const line::ClosedFormFn& g);
line::ClosedFormFn closed_form_from_json(const json& j);
json to_json(const line::LineAtomicMeasure& mu);
line::LineAtomicMeasure line_measure_from_json(const json& j);

json matrix_to_json(const alg::Matrix& m);
alg::Matrix matrix_from_json(const json& j);

json to_json(const hull::PointCloud& s);
hull::PointCloud point_cloud_from_json(const json& j);
json to_json(const hull::CircularSample& s);
hull::CircularSample circular_sample_from_json(const json& j);
json to_json(const hull::HullCertificate& c);
hull::HullCertificate certificate_from_json(const json& j);

/// Fixed-format double: 17 significant digits, "inf"/"-inf"/"nan" spelled out.
std::string fmt(double x);
/// JSON text with 17-digit doubles.
std::string dump(const json& j);

}  // namespace harmonia::io
