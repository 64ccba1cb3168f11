#include "sympidx/io.hpp"

#include <fstream>
#include <sstream>

#include "sympidx/errors.hpp"

namespace sympidx {
namespace {

// Minimal scanner over the raw text: follows a JSON pointer and reports the
// line where the addressed value starts.
class Locator {
 public:
  explicit Locator(const std::string& t) : t_(t) {}

  int find(const std::vector<std::string>& path) {
    pos_ = 0;
    line_ = 1;
    ws();
    int best = line_;
    for (const std::string& key : path) {
      ws();
      if (pos_ >= t_.size()) return best;
      if (t_[pos_] == '{') {
        if (!enter_object(key)) return best;
      } else if (t_[pos_] == '[') {
        if (!enter_array(key)) return best;
      } else {
        return best;
      }
      ws();
      best = line_;
    }
    return best;
  }

 private:
  void adv() {
    if (t_[pos_] == '\n') ++line_;
    ++pos_;
  }
  void ws() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) adv();
  }
  std::string str() {
    std::string s;
    adv();  // opening quote
    while (pos_ < t_.size() && t_[pos_] != '"') {
      if (t_[pos_] == '\\') adv();
      if (pos_ < t_.size()) {
        s += t_[pos_];
        adv();
      }
    }
    if (pos_ < t_.size()) adv();
    return s;
  }
  void skip_value() {
    ws();
    if (pos_ >= t_.size()) return;
    const char c = t_[pos_];
    if (c == '"') {
      str();
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      adv();
      ws();
      while (pos_ < t_.size() && t_[pos_] != close) {
        if (c == '{') {
          ws();
          str();
          ws();
          if (pos_ < t_.size()) adv();  // ':'
        }
        skip_value();
        ws();
        if (pos_ < t_.size() && t_[pos_] == ',') adv();
        ws();
      }
      if (pos_ < t_.size()) adv();
    } else {
      while (pos_ < t_.size() && !std::strchr(",]} \t\r\n", t_[pos_])) adv();
    }
  }
  bool enter_object(const std::string& key) {
    adv();
    for (;;) {
      ws();
      if (pos_ >= t_.size() || t_[pos_] != '"') return false;
      const std::string k = str();
      ws();
      if (pos_ >= t_.size() || t_[pos_] != ':') return false;
      adv();
      ws();
      if (k == key) return true;
      skip_value();
      ws();
      if (pos_ >= t_.size() || t_[pos_] != ',') return false;
      adv();
    }
  }
  bool enter_array(const std::string& key) {
    std::size_t idx;
    try {
      idx = std::stoul(key);
    } catch (...) {
      return false;
    }
    adv();
    for (std::size_t i = 0;; ++i) {
      ws();
      if (pos_ >= t_.size() || t_[pos_] == ']') return false;
      if (i == idx) return true;
      skip_value();
      ws();
      if (pos_ >= t_.size() || t_[pos_] != ',') return false;
      adv();
    }
  }

  const std::string& t_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::vector<std::string> split_pointer(const std::string& p) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < p.size()) {
    if (p[i] == '/') ++i;
    std::size_t j = p.find('/', i);
    if (j == std::string::npos) j = p.size();
    out.push_back(p.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string field_name(const std::string& pointer) {
  return pointer.empty() ? "<root>" : pointer.substr(pointer[0] == '/' ? 1 : 0);
}

[[noreturn]] void schema_fail(const JsonDocument* doc, const std::string& pointer, const std::string& msg) {
  throw SchemaError(field_name(pointer), doc ? doc->line_of(pointer) : 0, msg);
}

}  // namespace

JsonDocument JsonDocument::parse(std::string text) {
  JsonDocument d;
  d.text_ = std::move(text);
  try {
    d.value_ = json::parse(d.text_);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min(e.byte, d.text_.size());
    int line = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i)
      if (d.text_[i] == '\n') ++line;
    throw SchemaError("<document>", line, "malformed JSON");
  }
  return d;
}

JsonDocument JsonDocument::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("<file>", 0, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

int JsonDocument::line_of(const std::string& pointer) const {
  return Locator(text_).find(split_pointer(pointer));
}

json to_json(const Angle& a) {
  switch (a.kind()) {
    case Angle::Kind::rational: return {{"kind", "rational"}, {"p", a.p()}, {"q", a.q()}};
    case Angle::Kind::algebraic: return {{"kind", "sqrt_expr"}, {"expr", a.expr()}};
    case Angle::Kind::floating: break;
  }
  return {{"kind", "float"}, {"value", a.radians()}, {"irrational", a.declared_irrational()}};
}

Angle angle_from_json(const json& j, const std::string& ptr, const JsonDocument* doc) {
  if (!j.is_object()) schema_fail(doc, ptr, "angle must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) schema_fail(doc, ptr + "/kind", "missing angle kind");
  const std::string kind = j["kind"];
  try {
    if (kind == "rational") {
      for (const char* f : {"p", "q"})
        if (!j.contains(f) || !j[f].is_number_integer())
          schema_fail(doc, ptr + "/" + f, "integer expected");
      return Angle::rational(j["p"].get<long long>(), j["q"].get<long long>());
    }
    if (kind == "sqrt_expr") {
      if (!j.contains("expr") || !j["expr"].is_string()) schema_fail(doc, ptr + "/expr", "string expected");
      return Angle::algebraic(j["expr"].get<std::string>());
    }
    if (kind == "float") {
      if (!j.contains("value") || !j["value"].is_number()) schema_fail(doc, ptr + "/value", "number expected");
      bool irr = true;
      if (j.contains("irrational")) {
        if (!j["irrational"].is_boolean()) schema_fail(doc, ptr + "/irrational", "boolean expected");
        irr = j["irrational"];
      }
      return Angle::floating(j["value"].get<double>(), irr);
    }
  } catch (const DomainError& e) {
    schema_fail(doc, ptr, e.what());
  }
  schema_fail(doc, ptr + "/kind", "unknown angle kind '" + kind + "'");
}

std::string to_string(HyperbolicTail t) {
  return t == HyperbolicTail::positive ? "positive" : "one_negative";
}

json to_json(const NormalFormCounts& c) {
  json j = {{"p_minus", c.p_minus}, {"p_zero", c.p_zero}, {"p_plus", c.p_plus},
            {"q_minus", c.q_minus}, {"q_zero", c.q_zero}, {"q_plus", c.q_plus},
            {"r", c.r},             {"r_star", c.r_star}, {"r_zero", c.r_zero},
            {"s", c.s},             {"hyperbolic_tail", to_string(c.hyperbolic_tail)}};
  for (const auto& [name, list] : {std::pair{"theta_list", &c.theta}, std::pair{"alpha_list", &c.alpha},
                                   std::pair{"beta_list", &c.beta}}) {
    json a = json::array();
    for (const Angle& x : *list) a.push_back(to_json(x));
    j[name] = a;
  }
  return j;
}

json to_json(const IndexSeed& s) {
  json j = to_json(s.counts);
  j["n"] = s.n;
  j["i1"] = s.i1;
  return j;
}

namespace {

IndexSeed seed_impl(const json& j, const JsonDocument* doc) {
  if (!j.is_object()) schema_fail(doc, "", "seed must be a JSON object");
  static const std::vector<std::string> known = {
      "n", "i1", "p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus", "r", "r_star",
      "r_zero", "s", "hyperbolic_tail", "theta_list", "alpha_list", "beta_list", "label", "tau"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end())
      schema_fail(doc, "/" + k, "unknown field");

  IndexSeed s;
  auto integer = [&](const char* f, bool required, int& out) {
    if (!j.contains(f)) {
      if (required) schema_fail(doc, std::string("/") + f, "required field missing");
      return false;
    }
    if (!j[f].is_number_integer()) schema_fail(doc, std::string("/") + f, "integer expected");
    const long long v = j[f];
    if (v < 0) schema_fail(doc, std::string("/") + f, "must be non-negative");
    out = static_cast<int>(v);
    return true;
  };
  integer("n", true, s.n);
  if (s.n < 1) schema_fail(doc, "/n", "must be positive");
  if (!j.contains("i1")) schema_fail(doc, "/i1", "required field missing");
  if (!j["i1"].is_number_integer()) schema_fail(doc, "/i1", "integer expected");
  s.i1 = j["i1"];
  NormalFormCounts& c = s.counts;
  integer("p_minus", false, c.p_minus);
  integer("p_zero", false, c.p_zero);
  integer("p_plus", false, c.p_plus);
  integer("q_minus", false, c.q_minus);
  integer("q_zero", false, c.q_zero);
  integer("q_plus", false, c.q_plus);
  integer("s", false, c.s);

  auto angles = [&](const char* list, const char* count, std::vector<Angle>& out, int& n) {
    const std::string lp = std::string("/") + list;
    if (j.contains(list)) {
      if (!j[list].is_array()) schema_fail(doc, lp, "array expected");
      for (std::size_t i = 0; i < j[list].size(); ++i)
        out.push_back(angle_from_json(j[list][i], lp + "/" + std::to_string(i), doc));
    }
    int declared = -1;
    if (integer(count, false, declared) && declared != static_cast<int>(out.size()))
      schema_fail(doc, std::string("/") + count,
                  "says " + std::to_string(declared) + " but " + list + " has " +
                      std::to_string(out.size()) + " entries");
    n = static_cast<int>(out.size());
  };
  angles("theta_list", "r", c.theta, c.r);
  angles("alpha_list", "r_star", c.alpha, c.r_star);
  angles("beta_list", "r_zero", c.beta, c.r_zero);

  if (j.contains("hyperbolic_tail")) {
    const json& t = j["hyperbolic_tail"];
    const std::string v = t.is_string() ? t.get<std::string>() : "";
    if (v == "positive" || v == "D(2)") c.hyperbolic_tail = HyperbolicTail::positive;
    else if (v == "one_negative" || v == "D(-2)") c.hyperbolic_tail = HyperbolicTail::one_negative;
    else schema_fail(doc, "/hyperbolic_tail", "expected \"positive\" or \"one_negative\"");
  }
  try {
    s.check();
  } catch (const InconsistencyError& e) {
    schema_fail(doc, "/n", e.what());
  }
  try {
    validate(s);
  } catch (const ParityError& e) {
    schema_fail(doc, "/i1", e.what());
  }
  return s;
}

}  // namespace

IndexSeed seed_from_json(const JsonDocument& doc) {
  return seed_impl(doc.value(), &doc);
}

IndexSeed seed_from_json(const json& j) {
  return seed_impl(j, nullptr);
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return {{"n", m.rows() / 2}, {"rows", rows}};
}

Matrix matrix_from_json(const JsonDocument& doc) {
  const json& j = doc.value();
  if (!j.is_object()) schema_fail(&doc, "", "matrix must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    schema_fail(&doc, "/n", "positive integer expected");
  const int n = j["n"];
  if (!j.contains("rows") || !j["rows"].is_array()) schema_fail(&doc, "/rows", "array expected");
  const json& rows = j["rows"];
  if (rows.size() != static_cast<std::size_t>(2 * n))
    schema_fail(&doc, "/rows", "expected " + std::to_string(2 * n) + " rows, got " + std::to_string(rows.size()));
  Matrix m(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const std::string rp = "/rows/" + std::to_string(i);
    if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(2 * n))
      schema_fail(&doc, rp, "expected a row of " + std::to_string(2 * n) + " numbers");
    for (int k = 0; k < 2 * n; ++k) {
      if (!rows[i][k].is_number()) schema_fail(&doc, rp + "/" + std::to_string(k), "number expected");
      m(i, k) = rows[i][k];
    }
  }
  return m;
}

json to_json(const SpectralClassification& s) {
  json cl = json::array();
  for (const EigenCluster& c : s.clusters)
    cl.push_back({{"re", c.value.real()}, {"im", c.value.imag()}, {"multiplicity", c.multiplicity},
                  {"location", to_string(c.location)}});
  return {{"clusters", cl},
          {"floquet_type", to_string(s.floquet_type)},
          {"nondegenerate", s.nondegenerate},
          {"multiplicity_at_one", s.multiplicity_at_one}};
}

json to_json(const Decomposition& d) {
  json c = to_json(d.counts);
  c["n"] = d.n;
  return {{"spectrum", to_json(d.spectrum)}, {"counts", c}};
}

json to_json(const IterationResult& r) {
  return {{"m", r.m}, {"i_maslov", r.maslov_index}, {"nullity", r.nullity},
          {"i_viterbo", r.viterbo_index}, {"good", r.good}};
}

json to_json(const OracleRecord& r) {
  return {{"seed_id", r.seed_id}, {"quantity", r.quantity}, {"m", r.m},
          {"formula_value", r.formula_value}, {"oracle_value", r.oracle_value}, {"agree", r.agree}};
}

}  // namespace sympidx
