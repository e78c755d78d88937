#pragma once

#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>

#include "tqft.hpp"

namespace abelcs::io {

using json = nlohmann::ordered_json;

inline Rat parse_rational(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rat(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("expected an integer or a rational string, got " + j.dump());
}

inline IntMatrix parse_int_matrix(const json& j) {
  if (!j.is_array()) throw ValidationError("expected a matrix (array of rows)");
  const std::size_t r = j.size(), c = r ? j[0].size() : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw ValidationError("matrix rows have different lengths");
    for (std::size_t k = 0; k < c; ++k) {
      if (!j[i][k].is_number_integer()) throw ValidationError("matrix entries must be integers");
      m(i, k) = Int(j[i][k].get<long long>());
    }
  }
  return m;
}

// A Lagrangian is a list of generating vectors of length 2g, coordinates
// (e_1..e_g, f_1..f_g); rational entries are cleared per vector.
inline Lagrangian parse_lagrangian(const json& j) {
  const json& gens = j.is_object() ? j.at("gens") : j;
  if (!gens.is_array() || gens.empty()) throw ValidationError("Lagrangian needs a nonempty list of vectors");
  const std::size_t n = gens[0].size();
  if (n == 0 || n % 2) throw ValidationError("Lagrangian vectors need even length");
  IntMatrix m(n, gens.size());
  for (std::size_t c = 0; c < gens.size(); ++c) {
    if (!gens[c].is_array() || gens[c].size() != n) throw ValidationError("Lagrangian vectors have different lengths");
    std::vector<Rat> v;
    Int den = 1;
    for (auto& e : gens[c]) {
      v.push_back(parse_rational(e));
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v.back()));
    }
    for (std::size_t r = 0; r < n; ++r) m(r, c) = boost::multiprecision::numerator(Rat(v[r] * den));
  }
  auto chk = is_lagrangian(saturate(m));
  if (!chk) throw ValidationError(chk.diagnostic);
  return Lagrangian::from_span(m);
}

inline json to_json(const IntMatrix& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).convert_to<long long>());
    j.push_back(row);
  }
  return j;
}

inline json rat_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline json to_json(const RatMatrix& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rat_string(m(i, k)));
    j.push_back(row);
  }
  return j;
}

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const CMatrix& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    j.push_back(row);
  }
  return j;
}

// Generator names for a genus-g word: S is gamma, T^p is beta(p I).
inline Token token_from_json(const json& t, std::size_t g) {
  const std::string gen = t.at("gen").get<std::string>();
  if (gen == "S" || gen == "gamma") return Token::gamma(g);
  if (gen == "T") {
    long p = t.contains("power") ? t.at("power").get<long>() : 1;
    IntMatrix B(g, g);
    for (std::size_t i = 0; i < g; ++i) B(i, i) = p;
    return Token::beta(B);
  }
  if (gen == "alpha") {
    IntMatrix A = parse_int_matrix(t.at("A"));
    if (A.rows() != g) throw ValidationError("alpha: A has wrong size for the genus");
    return Token::alpha(A);
  }
  if (gen == "beta") {
    IntMatrix B = parse_int_matrix(t.at("B"));
    if (B.rows() != g) throw ValidationError("beta: B has wrong size for the genus");
    return Token::beta(B);
  }
  throw ValidationError("unknown generator '" + gen + "'");
}

inline SurgeryWord parse_surgery_word(const json& j) {
  SurgeryWord w;
  w.genus = j.at("genus").get<std::size_t>();
  if (w.genus == 0) throw ValidationError("surgery word needs genus >= 1");
  for (auto& t : j.at("word")) w.tokens.push_back(token_from_json(t, w.genus));
  if (j.contains("framings")) {
    for (auto& f : j.at("framings")) w.framings.push_back(f.get<long>());
    if (w.framings.size() != w.tokens.size()) throw ValidationError("need one framing per token");
  }
  return w;
}

// Short text form: "S T^3 S" or "S T T".
inline SurgeryWord parse_word_text(const std::string& text, std::size_t g) {
  SurgeryWord w;
  w.genus = g;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    json t;
    if (tok == "S") {
      t["gen"] = "S";
    } else if (tok[0] == 'T') {
      t["gen"] = "T";
      if (tok.size() > 1) {
        if (tok[1] != '^') throw ValidationError("bad token '" + tok + "'");
        try {
          t["power"] = std::stol(tok.substr(2));
        } catch (const std::exception&) {
          throw ValidationError("bad token '" + tok + "'");
        }
      }
    } else {
      throw ValidationError("bad token '" + tok + "'");
    }
    w.tokens.push_back(token_from_json(t, g));
  }
  return w;
}

// JSON text with every floating point number printed to 17 significant digits.
inline void dump17(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(std::size_t(indent) * 2, ' '), inner(std::size_t(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      os << buf;
      break;
    }
    case json::value_t::array: {
      bool flat = true;
      for (auto& e : j)
        if (e.is_structured() && !(e.is_array() && e.size() == 2 && e[0].is_number_float())) flat = false;
      if (j.empty()) {
        os << "[]";
      } else if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump17(os, j[i], indent + 1);
        }
        os << "]";
      } else {
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          os << inner;
          dump17(os, j[i], indent + 1);
          os << (i + 1 < j.size() ? ",\n" : "\n");
        }
        os << pad << "]";
      }
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        os << inner << json(it.key()).dump() << ": ";
        dump17(os, it.value(), indent + 1);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << "}";
      break;
    }
    default:
      os << j.dump();
  }
}

inline std::string dump17(const json& j) {
  std::ostringstream os;
  dump17(os, j);
  os << "\n";
  return os.str();
}

}  // namespace abelcs::io
