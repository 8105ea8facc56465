#include "kissing/expansion_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "kissing/errors.hpp"

namespace kissing {

namespace {

GegenbauerExpansion from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("expansion: bad JSON: ") + e.what());
  }
  const nlohmann::json* f = nullptr;
  if (j.contains("constants") && j["constants"].contains("f")) f = &j["constants"]["f"];
  else if (j.contains("dim") && j.contains("coeffs")) f = &j;
  if (!f) throw ParseError("expansion: JSON has no expansion");
  try {
    GegenbauerExpansion e((*f)["dim"].get<int>());
    for (const auto& c : (*f)["coeffs"]) e.set(c["k"].get<int>(), Rational::parse(c["c"].get<std::string>()));
    return e;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("expansion: ") + e.what());
  }
}

}  // namespace

std::string write_expansion(const GegenbauerExpansion& e) {
  std::ostringstream out;
  out << "dim " << e.dim() << "\n";
  for (const auto& [k, c] : e.coeffs()) out << k << " " << c.str() << "\n";
  return out.str();
}

GegenbauerExpansion read_expansion(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return from_json(text);

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<GegenbauerExpansion> e;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a) || a[0] == '#') continue;
    if (!(ls >> b) || (ls >> extra)) throw ParseError("expansion line " + std::to_string(lineno) + ": expected two fields");
    try {
      if (a == "dim") {
        if (e) throw ParseError("expansion: duplicate dim header");
        const int d = std::stoi(b);
        if (d < 3) throw ParseError("expansion: dim must be >= 3");
        e.emplace(d);
        continue;
      }
      if (!e) throw ParseError("expansion: missing dim header");
      std::size_t used = 0;
      const int k = std::stoi(a, &used);
      if (used != a.size() || k < 0) throw ParseError("expansion line " + std::to_string(lineno) + ": bad index");
      if (!e->coeff(k).is_zero()) throw ParseError("expansion: duplicate index " + a);
      e->set(k, Rational::parse(b));
    } catch (const std::logic_error& ex) {
      if (dynamic_cast<const ParseError*>(&ex)) throw;
      throw ParseError("expansion line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  if (!e) throw ParseError("expansion: missing dim header");
  return *e;
}

GegenbauerExpansion read_expansion_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_expansion(ss.str());
}

void write_expansion_file(const std::string& path, const GegenbauerExpansion& e) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_expansion(e);
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace kissing
