#include "sublat/polyalg.hpp"

#include <stdexcept>

namespace sublat {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
  for (auto c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::monomial(unsigned k, const BigInt& c) {
  std::vector<BigInt> v(k + 1, 0);
  v[k] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[k];
}

BigInt IntPoly::eval(const BigInt& at) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

std::string IntPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    const BigInt mag = neg ? BigInt(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (mag != 1 || k == 0) s += mag.str();
    if (k >= 1) s += "T";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(out));
}

IntPoly tau_poly(const Partition& beta, std::span<const int> delta) {
  if (delta.size() != beta.parts().size()) throw std::invalid_argument("tau_poly: length mismatch");
  IntPoly t{1};
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] < 0 || delta[i] > beta[i]) throw std::invalid_argument("tau_poly: need 0 <= delta_i <= beta_i");
    if (delta[i] < beta[i]) {
      const unsigned e = static_cast<unsigned>(beta[i] - delta[i]);
      t = t * (IntPoly::monomial(e) - IntPoly::monomial(e - 1));
    }
  }
  return t;
}

bool ClassPolyTable::lookup(const Partition& alpha, IntPoly& out) const {
  std::lock_guard lock(mu_);
  auto it = table_.find(alpha);
  if (it == table_.end()) return false;
  out = it->second;
  return true;
}

void ClassPolyTable::store(const Partition& alpha, const IntPoly& g) {
  std::lock_guard lock(mu_);
  table_.insert_or_assign(alpha, g);
}

std::map<Partition, IntPoly> ClassPolyTable::snapshot() const {
  std::lock_guard lock(mu_);
  return table_;
}

std::size_t ClassPolyTable::size() const {
  std::lock_guard lock(mu_);
  return table_.size();
}

ClassPolyTable& default_class_poly_table() {
  static ClassPolyTable table;
  return table;
}

IntPoly f_alpha_poly(const Partition& alpha, ClassPolyTable& table) {
  if (alpha.n() < 1) throw std::invalid_argument("f_alpha_poly: empty partition");
  if (alpha.n() == 1) return IntPoly{1};
  IntPoly g;
  if (table.lookup(alpha, g)) return g;
  for_each_recursion_term(alpha, [&](int, const Partition& beta, const std::vector<std::vector<int>>& tset) {
    IntPoly taus;
    for (const auto& delta : tset) taus += tau_poly(beta, delta);
    g += f_alpha_poly(beta, table) * taus;
  });
  table.store(alpha, g);
  return g;
}

IntPoly cocyclic_poly(int n, int r) {
  if (n < 1 || r < 1) throw std::invalid_argument("cocyclic_poly: need n >= 1 and r >= 1");
  const unsigned shift = static_cast<unsigned>((n - 1) * (r - 1));
  IntPoly g;
  for (int i = 0; i < n; ++i) g += IntPoly::monomial(shift + i);
  return g;
}

IntPoly fn_primepower_poly(int n, int r, ClassPolyTable& table) {
  if (n < 1 || r < 0) throw std::invalid_argument("fn_primepower_poly: need n >= 1 and r >= 0");
  IntPoly total;
  for (const auto& alpha : partitions(n, r)) total += f_alpha_poly(alpha, table);
  return total;
}

LeadingTermsReport leading_terms_check(int n, int r, ClassPolyTable& table) {
  if (n < 2 || r < 1) throw std::invalid_argument("leading_terms_check: need n >= 2 and r >= 1");
  LeadingTermsReport rep;
  rep.degree = (n - 1) * r;
  rep.all_sublattices = fn_primepower_poly(n, r, table);
  rep.cocyclic = cocyclic_poly(n, r);
  const int d = rep.degree;
  auto leads = [d](const IntPoly& p) { return p.degree() == d && p.coeff(d) == 1 && p.coeff(d - 1) == 1; };
  const bool a = leads(rep.all_sublattices), b = leads(rep.cocyclic);
  rep.match = a && b;
  rep.detail = "f_n: " + rep.all_sublattices.to_string() + "; cocyclic: " + rep.cocyclic.to_string() +
               "; leading T^" + std::to_string(d) + " + T^" + std::to_string(d - 1) + (rep.match ? " shared" : " not shared");
  return rep;
}

}  // namespace sublat
