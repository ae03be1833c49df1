#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reglab/symbolic.hpp"
#include "reglab/unipoly.hpp"

namespace reglab::residues {

using symbolic::RatFunc;
using symbolic::Rational;

struct Order {
  enum class Kind { known, unknown_positive, unknown_negative, indeterminate };
  Kind kind = Kind::known;
  long value = 0;

  static Order known(long n) { return {Kind::known, n}; }
  static Order positive() { return {Kind::unknown_positive, 0}; }
  static Order negative() { return {Kind::unknown_negative, 0}; }
  bool is_known() const { return kind == Kind::known; }
  // -1, 0, +1, or nullopt when even the sign is undetermined
  std::optional<int> sign() const;
  Order operator+(const Order& o) const;
  Order times(long e) const;
  bool operator==(const Order& o) const { return kind == o.kind && value == o.value; }
};

// Leading value f·π^{−ord f} restricted to the divisor.
struct Leading {
  enum class Kind { value, root_of_unity, unknown };
  Kind kind = Kind::unknown;
  RatFunc value;

  static Leading of(RatFunc v) { return {Kind::value, std::move(v)}; }
  static Leading root_of_unity() { return {Kind::root_of_unity, RatFunc::constant(1)}; }
};

struct FunctionRecord {
  Order order;
  Leading leading;
};

// Restriction to the divisor.
FunctionRecord product(const std::vector<std::pair<FunctionRecord, long>>& factors, const Rational& constant = 1);

struct DivisorData {
  std::string name;
  std::string parameter = "s";
  std::string note;
  std::map<std::string, FunctionRecord> records;  // keyed by basis-element text
};

std::vector<DivisorData> load_divisors(const std::string& json_text);

// A residue-field element; `modulo_torsion` means the true value is value·ζ for an unknown root of unity ζ.
struct TameValue {
  bool decided = false;
  RatFunc value = RatFunc::constant(1);
  bool modulo_torsion = false;

  bool is_torsion() const;
};

TameValue tame_symbol(const FunctionRecord& f, const FunctionRecord& g);

enum class Reason { steinberg_degenerate, torsion_tensor_factor, exact_cancellation };
std::string to_string(Reason r);

// Formal ℚ-combination of {a}₂ ⊗ b in B₂(k(p)) ⊗ k(p)×_ℚ, b as exponents over a coprime factor set.
class B2Residue {
 public:
  struct Entry {
    RatFunc a;                                        // {a}₂ with a ≤ 1/a
    std::vector<std::pair<std::string, Rational>> b;  // log b over the coprime factors
  };

  void add(const RatFunc& a, const RatFunc& b, const Rational& c);
  bool is_zero() const { return canonical().empty(); }
  std::vector<Entry> canonical(const std::string& var = "s") const;
  std::string str(const std::string& var = "s") const;

 private:
  struct Raw {
    RatFunc a, b;
    Rational c;
  };
  std::vector<Raw> raw_;
};

struct TermCertificate {
  Rational coefficient;
  std::string term;  // {f}₂ ⊗ g∧h
  FunctionRecord f_at_p;
  std::optional<std::string> f_special;  // "0", "1", "inf", "-1"
  TameValue tame;
  std::optional<Reason> reason;  // set when the term vanishes on its own
};

enum class Verdict { trivial, nontrivial, undecidable };
std::string to_string(Verdict v);

struct DivisorCertificate {
  std::string divisor;
  Verdict verdict = Verdict::undecidable;
  std::optional<Reason> reason;
  std::vector<TermCertificate> terms;
  B2Residue residue;
};

struct ResidueReport {
  std::vector<DivisorCertificate> divisors;
  Verdict overall = Verdict::trivial;
};

// ∂_p^{4,3} of ξ; throws InputError on a missing function record.
DivisorCertificate residue_43(const symbolic::B2WedgeElement& xi, const symbolic::MultiplicativeBasis& basis,
                              const std::vector<std::string>& basis_text, const DivisorData& p);
ResidueReport certify_all_residues(const symbolic::B2WedgeElement& xi, const symbolic::MultiplicativeBasis& basis,
                                   const std::vector<std::string>& basis_text, const std::vector<DivisorData>& divisors);
// Recomputes the verdict from the recorded per-term data alone.
Verdict recheck(const DivisorCertificate& cert);

}  // namespace reglab::residues
