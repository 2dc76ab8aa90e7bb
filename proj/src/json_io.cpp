#include "bicap/json_io.hpp"

#include <cmath>
#include <fstream>

namespace bicap {

namespace {

using nlohmann::json;

int read_n(const json& j) {
  if (!j.is_object()) throw FormatError("document is not a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw FormatError("missing or non-integer field \"n\"");
  const long long n = j.at("n").get<long long>();
  if (n < 1 || n > max_players())
    throw FormatError("n=" + std::to_string(n) + " outside [1, " +
                      std::to_string(max_players()) + "]");
  return static_cast<int>(n);
}

std::string read_string_field(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_string())
    throw FormatError(std::string("missing or non-string field \"") + field +
                      "\"");
  return j.at(field).get<std::string>();
}

double number_or_throw(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError("non-numeric value at " + where);
  return v.get<double>();
}

std::vector<double> read_dense(const json& values, std::uint64_t expected) {
  if (!values.is_array())
    throw FormatError("dense encoding requires \"values\" to be an array");
  if (values.size() != expected)
    throw FormatError("dense value array has length " +
                      std::to_string(values.size()) + ", expected " +
                      std::to_string(expected));
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < values.size(); ++i)
    out.push_back(number_or_throw(values[i], "values[" + std::to_string(i) +
                                                 "]"));
  return out;
}

std::vector<double> read_sparse_ternary(const json& values, int n) {
  if (!values.is_object())
    throw FormatError("sparse encoding requires \"values\" to be an object");
  std::vector<double> out(pow3(n), 0.0);
  for (auto it = values.begin(); it != values.end(); ++it) {
    std::uint64_t idx;
    try {
      idx = to_index(parse_biset(it.key(), n)).value;
    } catch (const std::invalid_argument& e) {
      throw FormatError("bad key \"" + it.key() + "\": " + e.what());
    }
    out[idx] = number_or_throw(it.value(), "key \"" + it.key() + "\"");
  }
  return out;
}

std::vector<double> read_sparse_binary(const json& values, int n) {
  if (!values.is_object())
    throw FormatError("sparse encoding requires \"values\" to be an object");
  std::vector<double> out(std::uint64_t{1} << n, 0.0);
  for (auto it = values.begin(); it != values.end(); ++it) {
    if (it.key().find('|') != std::string::npos)
      throw FormatError("bad key \"" + it.key() +
                        "\": capacity keys carry a single coalition");
    std::uint64_t mask;
    try {
      mask = parse_player_set(it.key(), n).mask;
    } catch (const std::invalid_argument& e) {
      throw FormatError("bad key \"" + it.key() + "\": " + e.what());
    }
    out[mask] = number_or_throw(it.value(), "key \"" + it.key() + "\"");
  }
  return out;
}

json dense_values(std::span<const double> values) {
  json arr = json::array();
  for (double v : values) arr.push_back(v);
  return arr;
}

json document_shell(int n, const char* kind, bool sparse) {
  json j;
  j["n"] = n;
  j["kind"] = kind;
  j["encoding"] = sparse ? "sparse" : "dense";
  return j;
}

json sparse_ternary_values(std::span<const double> values, int n) {
  json obj = json::object();
  for (std::uint64_t idx = 0; idx < values.size(); ++idx)
    if (values[idx] != 0.0)
      obj[to_string(from_index({idx}, n))] = values[idx];
  return obj;
}

}  // namespace

Document document_from_json(const json& j) {
  const int n = read_n(j);
  const std::string kind = read_string_field(j, "kind");
  const std::string encoding = read_string_field(j, "encoding");
  if (encoding != "dense" && encoding != "sparse")
    throw FormatError("unknown encoding \"" + encoding + "\"");
  if (!j.contains("values")) throw FormatError("missing field \"values\"");
  const json& values = j.at("values");
  const bool dense = encoding == "dense";

  if (kind == "bigame" || kind == "moebius") {
    std::vector<double> data = dense ? read_dense(values, pow3(n))
                                     : read_sparse_ternary(values, n);
    if (kind == "bigame") return BiGame(n, std::move(data));
    return MoebiusRep(n, std::move(data));
  }
  if (kind == "capacity") {
    std::vector<double> data = dense
                                   ? read_dense(values, std::uint64_t{1} << n)
                                   : read_sparse_binary(values, n);
    return Capacity(n, std::move(data));
  }
  throw FormatError("unknown kind \"" + kind + "\"");
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw FormatError("malformed JSON in " + path + ": " + e.what());
  }
  return document_from_json(j);
}

json to_json(const BiGame& v, bool sparse) {
  json j = document_shell(v.n(), "bigame", sparse);
  j["values"] = sparse ? sparse_ternary_values(v.values(), v.n())
                       : dense_values(v.values());
  return j;
}

json to_json(const Capacity& nu, bool sparse) {
  json j = document_shell(nu.n(), "capacity", sparse);
  if (!sparse) {
    j["values"] = dense_values(nu.values());
    return j;
  }
  json obj = json::object();
  const std::uint64_t size = std::uint64_t{1} << nu.n();
  for (std::uint64_t mask = 0; mask < size; ++mask)
    if (nu[mask] != 0.0) obj[to_string(PlayerSet{mask, nu.n()})] = nu[mask];
  j["values"] = obj;
  return j;
}

json to_json(const MoebiusRep& m, bool sparse) {
  json j = document_shell(m.n(), "moebius", sparse);
  j["values"] = sparse ? sparse_ternary_values(m.coeffs(), m.n())
                       : dense_values(m.coeffs());
  return j;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace bicap
