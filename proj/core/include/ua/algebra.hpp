#ifndef UA_ALGEBRA_HPP
#define UA_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <ua/budget.hpp>
#include <ua/verdict.hpp>

namespace ua {

// Universes are always {0..n-1}; element names, when present, are file
// metadata only.
inline constexpr int kDefaultSizeCap = 64;

struct OpSym {
  std::string name;
  int arity = 0;
  bool operator==(const OpSym&) const = default;
};

struct Signature {
  std::vector<OpSym> symbols;

  int index_of(const std::string& name) const {
    for (int i = 0; i < (int)symbols.size(); ++i)
      if (symbols[i].name == name) return i;
    return -1;
  }
  bool operator==(const Signature&) const = default;
  void validate() const;
};

struct FiniteAlgebra {
  std::string name;
  Signature sig;
  int size = 0;
  std::vector<std::vector<int>> tables;  // per symbol, row-major over argument digits

  int arity(int sym) const { return sig.symbols[sym].arity; }
  int num_symbols() const { return (int)sig.symbols.size(); }

  int apply(int sym, const int* args) const {
    const auto& t = tables[sym];
    int idx = 0;
    for (int i = 0; i < sig.symbols[sym].arity; ++i) idx = idx * size + args[i];
    return t[idx];
  }
  int apply(int sym, const std::vector<int>& args) const {
    return apply(sym, args.data());
  }

  bool is_trivial() const { return size == 1; }
  void validate() const;  // throws input_error with a located diagnostic
};

FiniteAlgebra trivial_algebra(Signature sig, std::string name = "trivial");

inline std::shared_ptr<const FiniteAlgebra> share(FiniteAlgebra a) {
  return std::make_shared<const FiniteAlgebra>(std::move(a));
}

// ---- terms ----------------------------------------------------------------

// Operation nodes carry the symbol by name so a term can be evaluated on any
// algebra whose signature declares it (reducts, expansions).
struct Term {
  std::string sym;
  int var = -1;  // >= 0 => variable leaf
  std::vector<Term> args;

  static Term variable(int v) {
    Term t;
    t.var = v;
    return t;
  }
  static Term app(std::string s, std::vector<Term> a = {}) {
    Term t;
    t.sym = std::move(s);
    t.args = std::move(a);
    return t;
  }
  bool is_var() const { return var >= 0; }
  bool operator==(const Term&) const = default;
};

int eval_term(const FiniteAlgebra& A, const Term& t, const std::vector<int>& asg);
int max_var(const Term& t);  // -1 when variable-free
std::string render_term(const Term& t, const std::vector<std::string>& var_names);

// ---- homomorphisms ---------------------------------------------------------

struct Homomorphism {
  std::shared_ptr<const FiniteAlgebra> source, target;
  std::vector<int> map;

  int operator()(int a) const { return map[a]; }
  bool check() const;  // full table scan of the defining equations
  bool is_injective() const;
  bool is_surjective() const;
};

bool is_homomorphism(const FiniteAlgebra& A, const FiniteAlgebra& B,
                     const std::vector<int>& map);

struct HomList {
  std::vector<Homomorphism> homs;  // canonically ordered (lex on value vector)
  bool complete = true;            // false => budget exhausted, list partial
};

HomList enumerate_homs(const FiniteAlgebra& A, const FiniteAlgebra& B,
                       const SearchBudget& budget = {},
                       const std::vector<std::pair<int, int>>& constraint = {});
HomList enumerate_embeddings(const FiniteAlgebra& A, const FiniteAlgebra& B,
                             const SearchBudget& budget = {});
Verdict is_isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B,
                      const SearchBudget& budget = {});

// ---- subuniverses ----------------------------------------------------------

// Least subuniverse containing X (may be empty when X is empty and the
// signature has no constants).
std::vector<int> sg(const FiniteAlgebra& A, std::vector<int> X);

FiniteAlgebra induced_subalgebra(const FiniteAlgebra& A,
                                 const std::vector<int>& universe,
                                 std::string name = {});

// All nonempty subuniverses, sorted; sets complete=false on budget exhaustion.
struct SubuniverseList {
  std::vector<std::vector<int>> sets;
  bool complete = true;
};
SubuniverseList all_subuniverses(const FiniteAlgebra& A,
                                 const SearchBudget& budget = {});

// Greedy generating sequence: repeatedly adjoin the least element outside the
// running closure.
std::vector<int> generating_set(const FiniteAlgebra& A);

// ---- products --------------------------------------------------------------

struct Product {
  FiniteAlgebra alg;
  std::vector<Homomorphism> projections;
  std::vector<int> sizes;

  int index(const std::vector<int>& tuple) const;
  std::vector<int> tuple(int index) const;
};

Product product(const std::vector<FiniteAlgebra>& factors,
                int size_cap = kDefaultSizeCap,
                const Signature* sig_if_empty = nullptr);

// ---- canonical forms -------------------------------------------------------

// Key identifying the isomorphism class: exact (minimum over permutations)
// for size <= 8, otherwise a permutation-invariant fingerprint refined by
// explicit isomorphism checks in dedup_up_to_iso.
std::vector<long long> canonical_key(const FiniteAlgebra& A);
std::vector<FiniteAlgebra> dedup_up_to_iso(std::vector<FiniteAlgebra> algs,
                                           const SearchBudget& budget = {});

}  // namespace ua

#endif
