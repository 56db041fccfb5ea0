#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace klrw {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// floor(a) for an exact rational
inline Int rat_floor(const Rat& a) {
  Int n = numerator(a), d = denominator(a);
  Int q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

// a reduced into [0,1)
inline Rat rat_mod1(const Rat& a) { return a - Rat(rat_floor(a)); }

// number of integers strictly between a and b (a,b not integers themselves)
inline long integers_between(const Rat& a, const Rat& b) {
  const Rat& lo = a < b ? a : b;
  const Rat& hi = a < b ? b : a;
  Int c = rat_floor(hi) - rat_floor(lo);
  return static_cast<long>(c);
}

inline std::string rat_str(const Rat& a) {
  std::string s = numerator(a).str();
  if (denominator(a) != 1) s += "/" + denominator(a).str();
  return s;
}

// input validation failures; `code` identifies the violated invariant
enum class Err {
  LoopEdge,
  DuplicateEdge,
  UnknownNode,
  NegativeDimension,
  RedCollision,
  BlackCollision,
  BlackOnRed,
  IndexOutOfRange,
  MismatchedConfigurations,
  NotABijection,
  RankMismatch,
  InvalidWord,
  BadInput,
  Internal,
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::LoopEdge: return "LoopEdge";
    case Err::DuplicateEdge: return "DuplicateEdge";
    case Err::UnknownNode: return "UnknownNode";
    case Err::NegativeDimension: return "NegativeDimension";
    case Err::RedCollision: return "RedCollision";
    case Err::BlackCollision: return "BlackCollision";
    case Err::BlackOnRed: return "BlackOnRed";
    case Err::IndexOutOfRange: return "IndexOutOfRange";
    case Err::MismatchedConfigurations: return "MismatchedConfigurations";
    case Err::NotABijection: return "NotABijection";
    case Err::RankMismatch: return "RankMismatch";
    case Err::InvalidWord: return "InvalidWord";
    case Err::BadInput: return "BadInput";
    case Err::Internal: return "Internal";
  }
  return "?";
}

}  // namespace klrw
