#include <ua/algebra.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ua {

void Signature::validate() const {
  std::set<std::string> seen;
  for (const auto& s : symbols) {
    if (s.name.empty()) throw input_error("empty symbol name");
    if (s.arity < 0) throw input_error("negative arity for symbol " + s.name);
    if (!seen.insert(s.name).second)
      throw input_error("duplicate symbol " + s.name);
  }
}

static long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void FiniteAlgebra::validate() const {
  sig.validate();
  if (size < 1) throw input_error("algebra " + name + ": size must be >= 1");
  if ((int)tables.size() != num_symbols())
    throw input_error("algebra " + name + ": missing table (expected " +
                      std::to_string(num_symbols()) + " tables, got " +
                      std::to_string(tables.size()) + ")");
  for (int s = 0; s < num_symbols(); ++s) {
    long long want = ipow(size, sig.symbols[s].arity);
    if ((long long)tables[s].size() != want)
      throw input_error("algebra " + name + ", symbol " + sig.symbols[s].name +
                        ": wrong table shape (expected " +
                        std::to_string(want) + " entries, got " +
                        std::to_string(tables[s].size()) + ")");
    for (size_t i = 0; i < tables[s].size(); ++i)
      if (tables[s][i] < 0 || tables[s][i] >= size)
        throw input_error("algebra " + name + ", symbol " +
                          sig.symbols[s].name + ", entry " + std::to_string(i) +
                          ": value out of range");
  }
}

FiniteAlgebra trivial_algebra(Signature sig, std::string name) {
  FiniteAlgebra a;
  a.name = std::move(name);
  a.sig = std::move(sig);
  a.size = 1;
  for (const auto& s : a.sig.symbols)
    a.tables.emplace_back((size_t)ipow(1, s.arity), 0);
  return a;
}

// ---- terms ----------------------------------------------------------------

int eval_term(const FiniteAlgebra& A, const Term& t, const std::vector<int>& asg) {
  if (t.is_var()) {
    if (t.var >= (int)asg.size()) throw input_error("unbound variable in term");
    return asg[t.var];
  }
  int sym = A.sig.index_of(t.sym);
  if (sym < 0) throw input_error("unknown symbol " + t.sym);
  if ((int)t.args.size() != A.arity(sym))
    throw input_error("arity mismatch at symbol " + t.sym);
  std::vector<int> vals(t.args.size());
  for (size_t i = 0; i < t.args.size(); ++i)
    vals[i] = eval_term(A, t.args[i], asg);
  return A.apply(sym, vals);
}

int max_var(const Term& t) {
  int m = t.var;
  for (const auto& a : t.args) m = std::max(m, max_var(a));
  return m;
}

std::string render_term(const Term& t, const std::vector<std::string>& names) {
  if (t.is_var())
    return t.var < (int)names.size() ? names[t.var]
                                     : "v" + std::to_string(t.var);
  if (t.args.empty()) return t.sym;
  std::string out = t.sym + "(";
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += render_term(t.args[i], names);
  }
  return out + ")";
}

// ---- homomorphisms ---------------------------------------------------------

bool is_homomorphism(const FiniteAlgebra& A, const FiniteAlgebra& B,
                     const std::vector<int>& map) {
  if ((int)map.size() != A.size) return false;
  for (int e : map)
    if (e < 0 || e >= B.size) return false;
  for (int s = 0; s < A.num_symbols(); ++s) {
    int r = A.arity(s);
    std::vector<int> args(r, 0), imgs(r, 0);
    long long count = ipow(A.size, r);
    for (long long idx = 0; idx < count; ++idx) {
      long long rem = idx;
      for (int i = r - 1; i >= 0; --i) {
        args[i] = (int)(rem % A.size);
        rem /= A.size;
      }
      for (int i = 0; i < r; ++i) imgs[i] = map[args[i]];
      if (map[A.apply(s, args)] != B.apply(s, imgs)) return false;
    }
  }
  return true;
}

bool Homomorphism::check() const {
  return source && target && is_homomorphism(*source, *target, map);
}

bool Homomorphism::is_injective() const {
  std::vector<char> seen(target->size, 0);
  for (int v : map) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool Homomorphism::is_surjective() const {
  std::vector<char> seen(target->size, 0);
  for (int v : map) seen[v] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

// Derivation record for closure elements: which op applied to which earlier
// elements first produced a given element.
namespace {
struct Derivation {
  int sym = -1;                // -1 => seed element
  std::vector<int> args;
};

// Closure of the seed set under all operations, recording one derivation per
// element, in deterministic round order.
struct ClosureInfo {
  std::vector<int> elems;               // discovery order
  std::vector<int> pos;                 // element -> index in elems, or -1
  std::vector<Derivation> deriv;        // parallel to elems
};

ClosureInfo close_with_derivations(const FiniteAlgebra& A,
                                   const std::vector<int>& seeds) {
  ClosureInfo ci;
  ci.pos.assign(A.size, -1);
  auto add = [&](int e, Derivation d) {
    if (ci.pos[e] >= 0) return false;
    ci.pos[e] = (int)ci.elems.size();
    ci.elems.push_back(e);
    ci.deriv.push_back(std::move(d));
    return true;
  };
  for (int s : seeds) add(s, {});
  for (int s = 0; s < A.num_symbols(); ++s)
    if (A.arity(s) == 0) {
      Derivation d;
      d.sym = s;
      add(A.tables[s][0], std::move(d));
    }
  size_t frontier_start = 0;
  while (frontier_start < ci.elems.size()) {
    size_t frontier_end = ci.elems.size();
    for (int s = 0; s < A.num_symbols(); ++s) {
      int r = A.arity(s);
      std::vector<int> idx(r, 0), args(r, 0);
      // all tuples over current elements with at least one index in the
      // frontier (or any tuple on the first pass)
      long long count = ipow((long long)frontier_end, r);
      for (long long k = 0; k < count; ++k) {
        long long rem = k;
        bool touches = frontier_start == 0 || r == 0;
        for (int i = r - 1; i >= 0; --i) {
          idx[i] = (int)(rem % frontier_end);
          rem /= frontier_end;
          if (idx[i] >= (int)frontier_start) touches = true;
        }
        if (!touches) continue;
        for (int i = 0; i < r; ++i) args[i] = ci.elems[idx[i]];
        int v = A.apply(s, args);
        if (ci.pos[v] < 0) {
          Derivation d;
          d.sym = s;
          d.args = args;
          add(v, std::move(d));
        }
      }
    }
    frontier_start = frontier_end;
  }
  return ci;
}
}  // namespace

std::vector<int> sg(const FiniteAlgebra& A, std::vector<int> X) {
  for (int x : X)
    if (x < 0 || x >= A.size) throw input_error("sg: element out of range");
  auto ci = close_with_derivations(A, X);
  std::vector<int> out = ci.elems;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> generating_set(const FiniteAlgebra& A) {
  std::vector<int> gens;
  std::vector<char> in(A.size, 0);
  for (int e : sg(A, {})) in[e] = 1;
  for (int e = 0; e < A.size; ++e) {
    if (in[e]) continue;
    gens.push_back(e);
    for (int c : sg(A, gens)) in[c] = 1;
  }
  return gens;
}

// Backtracking over generator images with constraint propagation along the
// derivation dag, then a full table verification of each candidate.
HomList enumerate_homs(const FiniteAlgebra& A, const FiniteAlgebra& B,
                       const SearchBudget& budget,
                       const std::vector<std::pair<int, int>>& constraint) {
  if (!(A.sig == B.sig)) throw input_error("enumerate_homs: signature mismatch");
  BudgetMeter meter(budget);
  HomList out;

  auto src = share(A);
  auto tgt = share(B);

  std::vector<int> gens = generating_set(A);
  auto ci = close_with_derivations(A, gens);
  if ((int)ci.elems.size() != A.size) {
    // no constants and empty generating closure happens only for size-0
    // algebras, which validate() rejects
    throw input_error("internal: generating closure incomplete");
  }

  std::vector<int> partial(A.size, -1);

  // propagate images along derivations in discovery order; returns false on
  // conflict. `fixed` marks entries assigned before propagation.
  auto propagate = [&](std::vector<int>& img) -> bool {
    for (size_t i = 0; i < ci.elems.size(); ++i) {
      if (!meter.step()) return false;
      const auto& d = ci.deriv[i];
      int e = ci.elems[i];
      if (d.sym < 0) {
        if (img[e] < 0) return false;  // unassigned generator: caller bug
        continue;
      }
      std::vector<int> imgs(d.args.size());
      for (size_t j = 0; j < d.args.size(); ++j) {
        int v = img[d.args[j]];
        if (v < 0) return false;
        imgs[j] = v;
      }
      int want = B.apply(d.sym, imgs);
      if (img[e] >= 0 && img[e] != want) return false;
      img[e] = want;
    }
    return true;
  };

  std::vector<int> base(A.size, -1);
  for (auto [a, b] : constraint) {
    if (a < 0 || a >= A.size || b < 0 || b >= B.size)
      throw input_error("enumerate_homs: constraint out of range");
    if (base[a] >= 0 && base[a] != b) return out;  // contradictory constraint
    base[a] = b;
  }

  std::vector<int> choice(gens.size(), 0);
  // depth-first over generator images, lexicographic
  std::vector<int> stack_img;
  std::vector<std::vector<int>> imgs_at_depth(gens.size() + 1);
  imgs_at_depth[0] = base;

  size_t depth = 0;
  if (gens.empty()) {
    auto img = base;
    if (propagate(img) && is_homomorphism(A, B, img)) {
      bool ok = true;
      for (int e = 0; e < A.size; ++e)
        if (base[e] >= 0 && img[e] != base[e]) ok = false;
      if (ok) out.homs.push_back({src, tgt, img});
    }
    out.complete = !meter.exhausted();
    return out;
  }

  while (true) {
    if (meter.exhausted()) {
      out.complete = false;
      break;
    }
    if (choice[depth] >= B.size) {
      if (depth == 0) break;
      choice[depth] = 0;
      --depth;
      ++choice[depth];
      continue;
    }
    auto img = imgs_at_depth[depth];
    int g = gens[depth];
    int v = choice[depth];
    meter.step();
    if (img[g] >= 0 && img[g] != v) {
      ++choice[depth];
      continue;
    }
    img[g] = v;
    if (depth + 1 < gens.size()) {
      imgs_at_depth[depth + 1] = img;
      ++depth;
      choice[depth] = 0;
      continue;
    }
    // all generators assigned: close and verify
    if (propagate(img) && is_homomorphism(A, B, img)) {
      bool ok = true;
      for (int e = 0; e < A.size; ++e)
        if (base[e] >= 0 && img[e] != base[e]) ok = false;
      if (ok) out.homs.push_back({src, tgt, img});
    }
    ++choice[depth];
  }

  std::sort(out.homs.begin(), out.homs.end(),
            [](const Homomorphism& x, const Homomorphism& y) {
              return x.map < y.map;
            });
  if (meter.exhausted()) out.complete = false;
  return out;
}

HomList enumerate_embeddings(const FiniteAlgebra& A, const FiniteAlgebra& B,
                             const SearchBudget& budget) {
  HomList all = enumerate_homs(A, B, budget);
  HomList out;
  out.complete = all.complete;
  for (auto& h : all.homs)
    if (h.is_injective()) out.homs.push_back(std::move(h));
  return out;
}

Verdict is_isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B,
                      const SearchBudget& budget) {
  if (!(A.sig == B.sig)) throw input_error("is_isomorphic: signature mismatch");
  if (A.size != B.size)
    return Verdict::refuted({{"reason", "sizes differ"},
                             {"left", A.size},
                             {"right", B.size}});
  HomList emb = enumerate_embeddings(A, B, budget);
  for (const auto& h : emb.homs)
    if (h.is_surjective())
      return Verdict::proven({{"map", h.map}});
  if (!emb.complete) return Verdict::unknown("embedding search budget exhausted");
  return Verdict::refuted({{"reason", "no bijective homomorphism"}});
}

// ---- subuniverses ----------------------------------------------------------

FiniteAlgebra induced_subalgebra(const FiniteAlgebra& A,
                                 const std::vector<int>& universe,
                                 std::string name) {
  if (universe.empty())
    throw input_error("induced_subalgebra: empty universe");
  std::vector<int> u = universe;
  std::sort(u.begin(), u.end());
  std::vector<int> back(A.size, -1);
  for (int i = 0; i < (int)u.size(); ++i) back[u[i]] = i;

  FiniteAlgebra S;
  S.name = name.empty() ? A.name + "|sub" : std::move(name);
  S.sig = A.sig;
  S.size = (int)u.size();
  S.tables.resize(A.num_symbols());
  for (int s = 0; s < A.num_symbols(); ++s) {
    int r = A.arity(s);
    long long count = ipow(S.size, r);
    S.tables[s].resize(count);
    std::vector<int> args(r);
    for (long long idx = 0; idx < count; ++idx) {
      long long rem = idx;
      for (int i = r - 1; i >= 0; --i) {
        args[i] = u[rem % S.size];
        rem /= S.size;
      }
      int v = A.apply(s, args);
      if (back[v] < 0)
        throw input_error("induced_subalgebra: set is not a subuniverse");
      S.tables[s][idx] = back[v];
    }
  }
  return S;
}

SubuniverseList all_subuniverses(const FiniteAlgebra& A,
                                 const SearchBudget& budget) {
  BudgetMeter meter(budget);
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> queue;
  auto push = [&](std::vector<int> s) {
    if (s.empty()) return;
    if (found.insert(s).second) queue.push_back(std::move(s));
  };
  push(sg(A, {}));
  for (int e = 0; e < A.size; ++e) push(sg(A, {e}));
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    auto cur = queue[qi];  // copy: queue reallocates
    for (int e = 0; e < A.size; ++e) {
      if (std::binary_search(cur.begin(), cur.end(), e)) continue;
      if (!meter.step(A.size)) break;
      auto ext = cur;
      ext.push_back(e);
      push(sg(A, ext));
    }
    if (meter.exhausted()) break;
    if (!meter.add_elements(0)) break;
  }
  SubuniverseList out;
  out.sets.assign(found.begin(), found.end());
  std::sort(out.sets.begin(), out.sets.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  out.complete = !meter.exhausted();
  return out;
}

// ---- products --------------------------------------------------------------

int Product::index(const std::vector<int>& t) const {
  int idx = 0;
  for (size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + t[i];
  return idx;
}

std::vector<int> Product::tuple(int index) const {
  std::vector<int> t(sizes.size());
  for (int i = (int)sizes.size() - 1; i >= 0; --i) {
    t[i] = index % sizes[i];
    index /= sizes[i];
  }
  return t;
}

Product product(const std::vector<FiniteAlgebra>& factors, int size_cap,
                const Signature* sig_if_empty) {
  Product P;
  if (factors.empty()) {
    if (!sig_if_empty)
      throw input_error("product of an empty family needs a signature");
    P.alg = trivial_algebra(*sig_if_empty);
    return P;
  }
  const Signature& sig = factors[0].sig;
  long long total = 1;
  for (const auto& f : factors) {
    if (!(f.sig == sig)) throw input_error("product: signature mismatch");
    total *= f.size;
    if (total > size_cap)
      throw input_error("product size " + std::to_string(total) +
                        " exceeds cap " + std::to_string(size_cap));
    P.sizes.push_back(f.size);
  }

  FiniteAlgebra R;
  R.sig = sig;
  R.size = (int)total;
  R.name = "(";
  for (size_t i = 0; i < factors.size(); ++i)
    R.name += (i ? "x" : "") + factors[i].name;
  R.name += ")";
  R.tables.resize(sig.symbols.size());
  for (int s = 0; s < (int)sig.symbols.size(); ++s) {
    int r = sig.symbols[s].arity;
    long long count = ipow(total, r);
    R.tables[s].resize(count);
    std::vector<int> argidx(r), digits(factors.size());
    std::vector<std::vector<int>> argtuples(r);
    for (long long idx = 0; idx < count; ++idx) {
      long long rem = idx;
      for (int i = r - 1; i >= 0; --i) {
        argidx[i] = (int)(rem % total);
        rem /= total;
      }
      for (int i = 0; i < r; ++i) argtuples[i] = P.tuple(argidx[i]);
      std::vector<int> restuple(factors.size());
      std::vector<int> args(r);
      for (size_t fi = 0; fi < factors.size(); ++fi) {
        for (int i = 0; i < r; ++i) args[i] = argtuples[i][fi];
        restuple[fi] = factors[fi].apply(s, args);
      }
      R.tables[s][idx] = P.index(restuple);
    }
  }
  P.alg = std::move(R);

  auto whole = share(P.alg);
  for (size_t fi = 0; fi < factors.size(); ++fi) {
    Homomorphism pr;
    pr.source = whole;
    pr.target = share(factors[fi]);
    pr.map.resize(P.alg.size);
    for (int e = 0; e < P.alg.size; ++e) pr.map[e] = P.tuple(e)[fi];
    P.projections.push_back(std::move(pr));
  }
  return P;
}

// ---- canonical forms -------------------------------------------------------

static std::vector<long long> table_key(const FiniteAlgebra& A,
                                        const std::vector<int>& perm) {
  // perm maps old -> new element numbers
  std::vector<int> inv(A.size);
  for (int i = 0; i < A.size; ++i) inv[perm[i]] = i;
  std::vector<long long> key;
  key.push_back(A.size);
  for (int s = 0; s < A.num_symbols(); ++s) {
    int r = A.arity(s);
    long long count = ipow(A.size, r);
    std::vector<int> args(r);
    for (long long idx = 0; idx < count; ++idx) {
      long long rem = idx;
      for (int i = r - 1; i >= 0; --i) {
        args[i] = inv[rem % A.size];
        rem /= A.size;
      }
      key.push_back(perm[A.apply(s, args)]);
    }
  }
  return key;
}

std::vector<long long> canonical_key(const FiniteAlgebra& A) {
  if (A.size <= 8) {
    std::vector<int> perm(A.size);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<long long> best = table_key(A, perm);
    while (std::next_permutation(perm.begin(), perm.end()))
      best = std::min(best, table_key(A, perm));
    return best;
  }
  // permutation-invariant fingerprint: multiset of row multisets per symbol
  std::vector<long long> key;
  key.push_back(A.size);
  for (int s = 0; s < A.num_symbols(); ++s) {
    std::vector<long long> rows;
    int r = A.arity(s);
    for (int e = 0; e < A.size; ++e) {
      long long h = 1469598103934665603LL;
      long long count = ipow(A.size, r);
      std::vector<int> args(r);
      long long cnt_e = 0;
      for (long long idx = 0; idx < count; ++idx) {
        long long rem = idx;
        bool uses = r == 0;
        for (int i = r - 1; i >= 0; --i) {
          args[i] = (int)(rem % A.size);
          rem /= A.size;
          if (args[i] == e) uses = true;
        }
        if (uses && A.apply(s, args) == e) ++cnt_e;
      }
      h = h * 1099511628211LL + cnt_e;
      rows.push_back(h);
    }
    std::sort(rows.begin(), rows.end());
    key.insert(key.end(), rows.begin(), rows.end());
  }
  return key;
}

std::vector<FiniteAlgebra> dedup_up_to_iso(std::vector<FiniteAlgebra> algs,
                                           const SearchBudget& budget) {
  std::vector<FiniteAlgebra> out;
  std::vector<std::vector<long long>> keys;
  for (auto& a : algs) {
    auto k = canonical_key(a);
    bool dup = false;
    for (size_t i = 0; i < out.size(); ++i) {
      if (keys[i] != k) continue;
      if (a.size <= 8 || is_isomorphic(out[i], a, budget).is_proven()) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      out.push_back(std::move(a));
      keys.push_back(std::move(k));
    }
  }
  // canonical order: by size, then key
  std::vector<size_t> order(out.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (out[x].size != out[y].size) return out[x].size < out[y].size;
    return keys[x] < keys[y];
  });
  std::vector<FiniteAlgebra> sorted;
  for (size_t i : order) sorted.push_back(std::move(out[i]));
  return sorted;
}

}  // namespace ua
