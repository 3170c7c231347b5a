#include "fracdelay/config_io.h"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracdelay/errors.h"

namespace fracdelay {
namespace {

using Json = nlohmann::json;

constexpr std::array<const char*, 14> kKeys = {
    "order", "A", "B",    "E",    "C", "D",   "f",
    "g",     "tau1", "tau2", "tau3", "r", "psi", "phi"};

const Json& Require(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(key, "missing required key");
  return *it;
}

double Number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "number must be finite");
  return x;
}

RealVector ParseVector(const Json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(key, "expected a non-empty array of numbers");
  }
  RealVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) =
        Number(v[i], key + "[" + std::to_string(i) + "]");
  }
  return out;
}

RealMatrix ParseMatrix(const Json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(key, "expected a non-empty array of rows");
  }
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row_key = key + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].empty()) {
      throw ConfigError(row_key, "expected a non-empty row array");
    }
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols) {
      throw ConfigError(row_key, "row length " + std::to_string(v[i].size()) +
                                     " differs from " + std::to_string(cols));
    }
  }
  RealMatrix out(static_cast<Eigen::Index>(v.size()),
                 static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Number(v[i][j], key + "[" + std::to_string(i) + "][" +
                              std::to_string(j) + "]");
    }
  }
  return out;
}

TimeExpr ParseExpr(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected an expression string");
  try {
    return TimeExpr::Parse(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ConfigError(key, e.what());
  }
}

std::vector<TimeExpr> ParseExprList(const Json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key, "expected an array of strings");
  std::vector<TimeExpr> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(ParseExpr(v[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json MatrixJson(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json ExprListJson(const std::vector<TimeExpr>& exprs) {
  Json out = Json::array();
  for (const auto& e : exprs) out.push_back(e.source());
  return out;
}

}  // namespace

SystemConfig ParseConfig(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  const std::set<std::string> known(kKeys.begin(), kKeys.end());
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      throw ConfigError(item.key(), "unknown key");
    }
  }

  SystemConfig cfg;
  MultiOrderSystem& s = cfg.system;
  s.order = ParseVector(Require(doc, "order"), "order");
  s.A = ParseMatrix(Require(doc, "A"), "A");
  s.B = ParseMatrix(Require(doc, "B"), "B");
  s.E = ParseMatrix(Require(doc, "E"), "E");
  s.C = ParseMatrix(Require(doc, "C"), "C");
  s.D = ParseMatrix(Require(doc, "D"), "D");
  s.f = ParseExprList(Require(doc, "f"), "f");
  s.g = ParseExprList(Require(doc, "g"), "g");
  s.tau1 = ParseExpr(Require(doc, "tau1"), "tau1");
  s.tau2 = ParseExpr(Require(doc, "tau2"), "tau2");
  s.tau3 = ParseExpr(Require(doc, "tau3"), "tau3");
  s.r = Number(Require(doc, "r"), "r");
  try {
    s.CheckWellFormed();
  } catch (const DimensionError& e) {
    throw ConfigError("", e.what());
  } catch (const DomainError& e) {
    throw ConfigError("", e.what());
  }

  std::vector<TimeExpr> psi = ParseExprList(Require(doc, "psi"), "psi");
  if (static_cast<int>(psi.size()) != s.d()) {
    throw ConfigError("psi", "expected " + std::to_string(s.d()) +
                                 " entries, got " + std::to_string(psi.size()));
  }
  const Json& phi = Require(doc, "phi");
  if (phi.is_string()) {
    if (phi.get<std::string>() != "derived") {
      throw ConfigError("phi", "expected an array of strings or \"derived\"");
    }
    try {
      cfg.init = MakeDerivedInitialData(s, std::move(psi));
    } catch (const SingularMatrixError& e) {
      throw ConfigError("phi", std::string("cannot derive: I - D ") + e.what());
    } catch (const EvalError& e) {
      throw ConfigError("phi", std::string("cannot derive: ") + e.what());
    }
  } else {
    cfg.init.psi = std::move(psi);
    cfg.init.phi = ParseExprList(phi, "phi");
    cfg.init.phi_mode = PhiMode::kExplicit;
    if (static_cast<int>(cfg.init.phi.size()) != s.n()) {
      throw ConfigError("phi", "expected " + std::to_string(s.n()) +
                                   " entries, got " +
                                   std::to_string(cfg.init.phi.size()));
    }
  }
  return cfg;
}

SystemConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string SerializeConfig(const SystemConfig& config) {
  const MultiOrderSystem& s = config.system;
  Json order = Json::array();
  for (Eigen::Index i = 0; i < s.order.size(); ++i) order.push_back(s.order(i));
  const Json phi = config.init.phi_mode == PhiMode::kDerived
                       ? Json("derived")
                       : ExprListJson(config.init.phi);
  const std::vector<std::pair<const char*, Json>> fields = {
      {"order", order},
      {"A", MatrixJson(s.A)},
      {"B", MatrixJson(s.B)},
      {"E", MatrixJson(s.E)},
      {"C", MatrixJson(s.C)},
      {"D", MatrixJson(s.D)},
      {"f", ExprListJson(s.f)},
      {"g", ExprListJson(s.g)},
      {"tau1", s.tau1.source()},
      {"tau2", s.tau2.source()},
      {"tau3", s.tau3.source()},
      {"r", s.r},
      {"psi", ExprListJson(config.init.psi)},
      {"phi", phi},
  };
  std::string out = "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out += "  \"";
    out += fields[i].first;
    out += "\": ";
    out += fields[i].second.dump();
    out += i + 1 < fields.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

}  // namespace fracdelay
