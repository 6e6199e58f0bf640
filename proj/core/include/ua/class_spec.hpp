#ifndef UA_CLASS_SPEC_HPP
#define UA_CLASS_SPEC_HPP

#include <string>
#include <vector>

#include <ua/algebra.hpp>

namespace ua {

// A finitely generated class: generators plus a closure operator tag.
// For Q and U the description is exact (ultraproducts of a finite set of
// finite algebras are isomorphic copies, so Q = ISP and U = IS over the
// generators); bounded-V membership is explicitly approximate.
struct ClassSpec {
  enum class Op { Q, U, Vb };
  std::vector<FiniteAlgebra> generators;
  Op op = Op::Q;

  void validate() const {
    if (generators.empty()) throw input_error("ClassSpec: no generators");
    for (const auto& g : generators) {
      g.validate();
      if (!(g.sig == generators[0].sig))
        throw input_error("ClassSpec: generator signature mismatch");
    }
  }
  const Signature& sig() const { return generators[0].sig; }
  std::string describe() const {
    std::string s = op == Op::Q ? "Q({" : (op == Op::U ? "U({" : "Vb({");
    for (size_t i = 0; i < generators.size(); ++i)
      s += (i ? "," : "") + generators[i].name;
    return s + "})";
  }
};

}  // namespace ua

#endif
