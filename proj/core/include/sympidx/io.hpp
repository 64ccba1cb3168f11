#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "sympidx/decompose.hpp"
#include "sympidx/forms.hpp"
#include "sympidx/index.hpp"
#include "sympidx/oracles.hpp"

namespace sympidx {

using json = nlohmann::json;

// Parsed JSON plus its source text, so schema errors can name a line.
class JsonDocument {
 public:
  static JsonDocument parse(std::string text);  // SchemaError on syntax errors
  static JsonDocument from_file(const std::string& path);
  const json& value() const { return value_; }
  // 1-based line of the value at a JSON pointer ("/theta_list/1/q"); 0 if unknown
  int line_of(const std::string& pointer) const;

 private:
  std::string text_;
  json value_;
};

json to_json(const Angle& a);
Angle angle_from_json(const json& j, const std::string& pointer, const JsonDocument* doc = nullptr);

json to_json(const NormalFormCounts& c);
json to_json(const IndexSeed& s);
IndexSeed seed_from_json(const JsonDocument& doc);
IndexSeed seed_from_json(const json& j);

json to_json(const Matrix& m);
Matrix matrix_from_json(const JsonDocument& doc);

json to_json(const SpectralClassification& s);
json to_json(const Decomposition& d);
json to_json(const IterationResult& r);
json to_json(const OracleRecord& r);

std::string to_string(HyperbolicTail t);

}  // namespace sympidx
