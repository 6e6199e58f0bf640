#ifndef UA_VERDICT_HPP
#define UA_VERDICT_HPP

#include <string>
#include <utility>

#include <json.hpp>

namespace ua {

// Reports are emitted with insertion-ordered keys so that identical inputs
// produce byte-identical bytes.
using Json = nlohmann::ordered_json;

enum class Outcome { proven, refuted, unknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::proven: return "proven";
    case Outcome::refuted: return "refuted";
    case Outcome::unknown: return "unknown";
  }
  return "?";
}

// Three-valued search result. Proven/Refuted carry a machine-checkable
// witness payload; Unknown records which bound was reached.
struct Verdict {
  Outcome outcome = Outcome::unknown;
  Json witness;
  std::string note;

  static Verdict proven(Json w = {}, std::string n = {}) {
    return {Outcome::proven, std::move(w), std::move(n)};
  }
  static Verdict refuted(Json w = {}, std::string n = {}) {
    return {Outcome::refuted, std::move(w), std::move(n)};
  }
  static Verdict unknown(std::string n = {}, Json w = {}) {
    return {Outcome::unknown, std::move(w), std::move(n)};
  }

  bool is_proven() const { return outcome == Outcome::proven; }
  bool is_refuted() const { return outcome == Outcome::refuted; }
  bool is_unknown() const { return outcome == Outcome::unknown; }

  Json to_json() const {
    Json j;
    j["outcome"] = to_string(outcome);
    if (!note.empty()) j["note"] = note;
    if (!witness.is_null()) j["witness"] = witness;
    return j;
  }
};

}  // namespace ua

#endif
