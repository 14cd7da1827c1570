#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace asrefine {

// Valuation of the state vector, aligned with Model::vars.
struct State
{
  std::vector<int64_t> values;

  bool operator==(const State&) const = default;
  bool operator<(const State& o) const { return values < o.values; }
};

struct StateHash
{
  size_t operator()(const State& s) const
  {
    uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (int64_t v : s.values) {
      h ^= static_cast<uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Observable step label: action name applied to concrete arguments.
struct Event
{
  std::string label;
  std::vector<int64_t> args;

  bool operator==(const Event&) const = default;
};

// The step a mutant can take but the original cannot: taken from the unsafe
// state, it leads to `post`.
struct Witness
{
  Event event;
  State post;

  bool operator==(const Witness&) const = default;
};

struct Verdict
{
  enum class Kind { NonConforming, Conforming, Inconclusive };

  Kind kind = Kind::Conforming;
  // NonConforming: the reached unsafe state, the shortest trace from init to
  // it, and one diverging step out of it.
  State unsafe;
  std::vector<Event> trace;
  Witness witness;
  // Conforming: the exhausted depth bound.
  int depth = 0;
  // Inconclusive: what resource ran out / which check could not complete.
  std::string reason;
};

std::string to_string(const Event& e);    // 'after'(20)
std::string to_string(const State& s);    // [6, 0, 0, 0, 0, 0]
std::string to_string(const Verdict& v);  // one-line summary

}  // namespace asrefine
