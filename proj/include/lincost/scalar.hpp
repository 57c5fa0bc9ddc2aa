#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "lincost/rational.hpp"

namespace lincost {

using UnknownId = int;

// Affine form over LP unknowns: constant + sum coeff_i * u_i.
struct Affine {
  Rat constant;
  std::map<UnknownId, Rat> coeffs;

  bool is_constant() const { return coeffs.empty(); }
};

// Raised when a product of two unknown-bearing entries would be quadratic.
struct NonlinearTerm : std::runtime_error {
  NonlinearTerm(UnknownId a, UnknownId b)
      : std::runtime_error("nonlinear term: product of unknowns u" +
                           std::to_string(a) + " * u" + std::to_string(b)),
        u1(a), u2(b) {}
  UnknownId u1, u2;
};

// Matrix entry: an exact rational, the havoc marker '*', or an affine form
// over inference unknowns. Havoc absorbs addition and multiplication by
// anything nonzero; havoc * 0 = 0 on both sides.
class Scalar {
 public:
  Scalar() : rep_(Rat(0)) {}
  Scalar(Rat q) : rep_(std::move(q)) {}
  Scalar(long n) : rep_(Rat(n)) {}

  static Scalar havoc() { Scalar s; s.rep_ = Havoc{}; return s; }
  static Scalar unknown(UnknownId id) {
    Affine a;
    a.coeffs[id] = 1;
    return Scalar(std::move(a));
  }
  static Scalar affine(Affine a) {
    if (a.is_constant()) return Scalar(std::move(a.constant));
    return Scalar(std::move(a));
  }

  bool is_rational() const { return std::holds_alternative<Rat>(rep_); }
  bool is_havoc() const { return std::holds_alternative<Havoc>(rep_); }
  bool is_affine() const { return std::holds_alternative<Affine>(rep_); }
  bool is_zero() const { return is_rational() && rational() == 0; }

  const Rat& rational() const { return std::get<Rat>(rep_); }
  const Affine& affine() const { return std::get<Affine>(rep_); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;

  bool operator==(const Scalar& o) const;

  std::string str() const;

 private:
  struct Havoc {
    bool operator==(const Havoc&) const { return true; }
  };
  explicit Scalar(Affine a) : rep_(std::move(a)) {}

  std::variant<Rat, Havoc, Affine> rep_;
};

}  // namespace lincost
