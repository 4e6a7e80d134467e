#include "sublat/poly_cache.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace sublat {

std::string cache_key(const Partition& alpha) {
  return std::to_string(alpha.n()) + ":" + std::to_string(alpha.k()) + ":" + alpha.to_string();
}

namespace {

int parse_int(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("cache key: bad integer '" + s + "'");
  return std::stoi(s);
}

}  // namespace

Partition parse_cache_key(const std::string& key) {
  const auto c1 = key.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : key.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("cache key: expected n:k:parts, got '" + key + "'");
  const int n = parse_int(key.substr(0, c1));
  const int k = parse_int(key.substr(c1 + 1, c2 - c1 - 1));
  std::vector<int> parts;
  std::stringstream ss(key.substr(c2 + 1));
  for (std::string tok; std::getline(ss, tok, ',');) parts.push_back(parse_int(tok));
  Partition alpha(std::move(parts));
  if (alpha.n() != n || alpha.k() != k) throw std::invalid_argument("cache key: inconsistent '" + key + "'");
  return alpha;
}

nlohmann::json coefficients_json(const IntPoly& p) {
  auto arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) {
    if (c >= INT64_MIN && c <= INT64_MAX)
      arr.push_back(static_cast<std::int64_t>(c));
    else
      arr.push_back(c.str());
  }
  return arr;
}

IntPoly coefficients_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("coefficients: expected an array");
  std::vector<BigInt> coeffs;
  for (const auto& v : j) {
    if (v.is_number_integer()) {
      coeffs.emplace_back(v.get<std::int64_t>());
    } else if (v.is_string()) {
      const auto s = v.get<std::string>();
      const auto digits = s.substr(!s.empty() && s[0] == '-' ? 1 : 0);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("coefficients: bad decimal string");
      coeffs.emplace_back(s);
    } else {
      throw std::invalid_argument("coefficients: expected integers");
    }
  }
  if (!coeffs.empty() && coeffs.back() == 0) throw std::invalid_argument("coefficients: trailing zero");
  return IntPoly(std::move(coeffs));
}

std::size_t load_poly_cache(const std::filesystem::path& path, ClassPolyTable& table, std::ostream& warn) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return 0;
  std::ifstream in(path);
  if (!in) {
    warn << "warning: cannot read cache " << path.string() << ", running cold\n";
    return 0;
  }
  std::vector<std::pair<Partition, IntPoly>> entries;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (!doc.is_object()) throw std::invalid_argument("cache: top level must be an object");
    for (const auto& [key, value] : doc.items()) entries.emplace_back(parse_cache_key(key), coefficients_from_json(value));
  } catch (const std::exception& e) {
    warn << "warning: ignoring corrupted cache " << path.string() << ": " << e.what() << "\n";
    return 0;
  }
  for (const auto& [alpha, g] : entries) table.store(alpha, g);
  return entries.size();
}

void store_poly_cache(const std::filesystem::path& path, const ClassPolyTable& table) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [alpha, g] : table.snapshot()) doc[cache_key(alpha)] = coefficients_json(g);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache " + tmp.string());
    out << doc.dump() << "\n";
    if (!out) throw std::runtime_error("cannot write cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sublat
