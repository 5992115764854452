#ifndef OLMC_FORMULA_HPP
#define OLMC_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace olmc {

/// Binary connectives that are definable from the primitives `~` and `v`.
/// Each one has a fixed arity (2) and a fixed expansion template.
enum class Connective : std::uint8_t {
  Conj,    // A ^ B      ~(~A v ~B)
  Imp0,    // A -0> B    ~A v B                       (classical)
  Imp1,    // A -1> B    ~A v (A ^ B)                 (Sasaki)
  Imp2,    // A -2> B    ~B -1> ~A                    (Dishkant)
  Imp3,    // A -3> B    (~A^B) v (~A^~B) v (A^(~A v B))  (Kalmbach)
  Imp4,    // A -4> B    ~B -3> ~A                    (non-tollens)
  Imp5,    // A -5> B    (A^B) v (~A^B) v (~A^~B)     (relevance)
  EquivQ,  // A = B      (A^B) v (~A^~B)
  Equiv0,  // A =0= B    (A -0> B) ^ (B -0> A)
};

/// Returns the implication connective for index 0..5.
Connective imp_connective(int i);

/// Well-formed formula over variables p0,p1,... with primitive negation and
/// disjunction. Derived connectives are kept as Sugar nodes until `expand`.
/// Formulas are immutable values; copies share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t { Variable, Negation, Disjunction, Sugar };

  static Formula variable(int index);
  static Formula negation(Formula child);
  static Formula disjunction(Formula left, Formula right);
  static Formula sugar(Connective id, Formula left, Formula right);

  Kind kind() const { return node_->kind; }
  int var_index() const;             // Variable only
  Connective connective() const;     // Sugar only
  const Formula& child() const;      // Negation only
  const Formula& left() const;       // Disjunction/Sugar
  const Formula& right() const;      // Disjunction/Sugar

  std::size_t hash() const { return node_->hash; }
  int node_count() const { return node_->count; }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind;
    Connective conn;
    int var;
    std::shared_ptr<const Node> a, b;
    std::size_t hash;
    int count;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Thrown by `parse` with a 0-based byte offset into the input.
struct parse_error : std::runtime_error {
  parse_error(const std::string& what, std::size_t pos)
      : std::runtime_error(what), position(pos) {}
  std::size_t position;
};

/// Parses the ASCII surface syntax (`~ v ^ -0>..-5> = =0=`, variables p0,p1,...).
/// The Unicode connectives are accepted as aliases. Binary connectives of equal
/// precedence may not be chained without parentheses.
Formula parse(std::string_view text);

/// Minimal-parenthesis ASCII text; `parse(render(f)) == f`.
std::string render(const Formula& f);

/// Rewrites every Sugar node through its template, innermost first. The result
/// contains only Variable, Negation and Disjunction nodes.
Formula expand(const Formula& f);

/// Sorted set of variable indices occurring in `f`.
std::vector<int> variables(const Formula& f);

// Convenience builders used throughout the tests and the proof tables.
inline Formula neg(Formula a) { return Formula::negation(std::move(a)); }
inline Formula disj(Formula a, Formula b) {
  return Formula::disjunction(std::move(a), std::move(b));
}
inline Formula conj(Formula a, Formula b) {
  return Formula::sugar(Connective::Conj, std::move(a), std::move(b));
}
inline Formula imp(int i, Formula a, Formula b) {
  return Formula::sugar(imp_connective(i), std::move(a), std::move(b));
}
inline Formula equiv_q(Formula a, Formula b) {
  return Formula::sugar(Connective::EquivQ, std::move(a), std::move(b));
}
inline Formula equiv_0(Formula a, Formula b) {
  return Formula::sugar(Connective::Equiv0, std::move(a), std::move(b));
}
inline Formula var(int index) { return Formula::variable(index); }

}  // namespace olmc

#endif  // OLMC_FORMULA_HPP
