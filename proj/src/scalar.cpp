#include "lincost/scalar.hpp"

namespace lincost {

namespace {

Affine add_affine(const Affine& a, const Affine& b) {
  Affine out = a;
  out.constant += b.constant;
  for (const auto& [id, coeff] : b.coeffs) {
    Rat& slot = out.coeffs[id];
    slot += coeff;
    if (slot == 0) out.coeffs.erase(id);
  }
  return out;
}

Affine scale_affine(const Affine& a, const Rat& k) {
  Affine out;
  if (k == 0) return out;
  out.constant = a.constant * k;
  for (const auto& [id, coeff] : a.coeffs) out.coeffs[id] = coeff * k;
  return out;
}

Affine to_affine(const Scalar& s) {
  if (s.is_affine()) return s.affine();
  Affine a;
  a.constant = s.rational();
  return a;
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  // Havoc absorbs addition with anything.
  if (is_havoc() || o.is_havoc()) return havoc();
  if (is_rational() && o.is_rational()) return Scalar(rational() + o.rational());
  return affine(add_affine(to_affine(*this), to_affine(o)));
}

Scalar Scalar::operator*(const Scalar& o) const {
  // Havoc * 0 = 0; havoc absorbs any other factor.
  if (is_havoc() || o.is_havoc()) {
    if ((is_rational() && rational() == 0) || (o.is_rational() && o.rational() == 0))
      return Scalar(Rat(0));
    return havoc();
  }
  if (is_rational() && o.is_rational()) return Scalar(rational() * o.rational());
  if (is_rational()) return affine(scale_affine(o.affine(), rational()));
  if (o.is_rational()) return affine(scale_affine(affine(), o.rational()));
  // Two unknown-bearing entries: the product would be quadratic.
  throw NonlinearTerm(affine().coeffs.begin()->first, o.affine().coeffs.begin()->first);
}

bool Scalar::operator==(const Scalar& o) const {
  if (rep_.index() != o.rep_.index()) return false;
  if (is_rational()) return rational() == o.rational();
  if (is_havoc()) return true;
  return affine().constant == o.affine().constant && affine().coeffs == o.affine().coeffs;
}

std::string Scalar::str() const {
  if (is_havoc()) return "*";
  if (is_rational()) return rat_str(rational());
  std::string out;
  const Affine& a = affine();
  if (a.constant != 0) out = rat_str(a.constant);
  for (const auto& [id, coeff] : a.coeffs) {
    if (!out.empty()) out += " + ";
    if (coeff == 1)
      out += "u" + std::to_string(id);
    else
      out += rat_str(coeff) + "*u" + std::to_string(id);
  }
  return out.empty() ? "0" : out;
}

}  // namespace lincost
