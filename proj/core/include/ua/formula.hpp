#ifndef UA_FORMULA_HPP
#define UA_FORMULA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <ua/algebra.hpp>
#include <ua/class_spec.hpp>

namespace ua {

struct FNode {
  enum class Kind { equation, top, bottom, conj, disj, implies, negation, exists };
  Kind kind = Kind::top;
  Term lhs, rhs;              // equation
  std::vector<FNode> parts;   // conj/disj children; implies has 2; negation 1
  std::vector<int> bound;     // exists

  static FNode eq(Term l, Term r);
  static FNode top();
  static FNode bottom();
  static FNode conj(std::vector<FNode> ps);
  static FNode disj(std::vector<FNode> ps);
  static FNode implies(FNode a, FNode b);
  static FNode negation(FNode a);
  static FNode exists(std::vector<int> vars, FNode body);
};

// A formula owns its variable table; var ids in terms index `vars`.
struct Formula {
  FNode root;
  std::vector<std::string> vars;
  std::vector<int> free;  // sorted ids, cached by finalize()

  int var_id(const std::string& name) const {
    for (int i = 0; i < (int)vars.size(); ++i)
      if (vars[i] == name) return i;
    return -1;
  }
  void finalize();  // recompute the free-variable cache
};

std::string render_formula(const Formula& f);

// Convenience builder used by the gallery and by tests.
class FormulaBuilder {
 public:
  Term v(const std::string& name);
  static Term app(std::string sym, std::vector<Term> args = {}) {
    return Term::app(std::move(sym), std::move(args));
  }
  FNode ex(const std::vector<std::string>& names, FNode body);
  Formula done(FNode root);

 private:
  std::vector<std::string> vars_;
};

// Parses the CLI grammar; `sig` resolves symbols/arities and decides whether
// a bare identifier is a constant or a variable. Errors carry line/column.
Formula parse_formula(const std::string& text, const Signature& sig);

enum class FormulaClass { eq_conjunction, pp, existential_positive, universal, general };
const char* to_string(FormulaClass c);

struct Classification {
  FormulaClass cls;
  std::string note;  // set when the disjunct cap forced "general"
};
Classification classify(const Formula& f, int disjunct_cap = 64);

// Tarskian truth; existentials search the finite universe exhaustively.
// `asg` must cover the free variables (checked).
bool eval_formula(const FiniteAlgebra& A, const Formula& f,
                  const std::vector<std::pair<std::string, int>>& asg);

// ---- normalized existential-positive form ----------------------------------

struct PPFormula {
  std::vector<int> bound;
  std::vector<std::pair<Term, Term>> eqs;
};
struct PPDisjunction {
  std::vector<PPFormula> disjuncts;  // empty vector = ⊥
  bool ok = true;                    // false: not existential positive
  bool capped = false;
};
PPDisjunction to_pp_disjunction(const Formula& f, int cap = 64);

// ---- implicit-operation machinery -------------------------------------------

struct PartialFunctionTable {
  int arity = 0;
  std::vector<std::vector<int>> dom;  // sorted tuples
  std::vector<int> values;            // parallel to dom
  std::shared_ptr<const FiniteAlgebra> carrier;

  bool total() const;
  std::optional<int> at(const std::vector<int>& tuple) const;
  Json to_json() const;
};

// Thrown when implicit_table meets a non-functional formula; carries the
// witnessing (inputs, value, value') triple.
struct functionality_error : input_error {
  functionality_error(std::string msg, Json w)
      : input_error(std::move(msg)), witness(std::move(w)) {}
  Json witness;
};

// Proven iff the formula is functional in every generator, which suffices
// for functionality throughout Q(generators) (cross-pair quasiequations are
// preserved by Q). Refuted carries (generator, inputs, two outputs).
Verdict check_functional(const ClassSpec& K, const Formula& f,
                         const std::vector<std::string>& inputs,
                         const std::string& output);

PartialFunctionTable implicit_table(const FiniteAlgebra& A, const Formula& f,
                                    const std::vector<std::string>& inputs,
                                    const std::string& output);

// Exact via the RSI form of the extendability criterion: every relatively
// subdirectly irreducible member must embed into one on which the operation
// is total, and RSI members all live among subalgebras of the generators.
Verdict check_extendable(const ClassSpec& K, const Formula& f,
                         const std::vector<std::string>& inputs,
                         const std::string& output,
                         const SearchBudget& budget = {});

PartialFunctionTable compose_tables(const PartialFunctionTable& g,
                                    const std::vector<PartialFunctionTable>& fs);

// Shared helper: evaluates a compiled pp disjunction as a partial function
// table on one algebra; last variable role is the output.
PartialFunctionTable table_of_pp(const FiniteAlgebra& A, const Formula& f,
                                 const std::vector<std::string>& inputs,
                                 const std::string& output,
                                 bool* functional_ok, Json* witness);

}  // namespace ua

#endif
