#pragma once

#include <string>
#include <vector>

#include "certinum/program.hpp"

namespace certinum::lang {

/// Static sort of an expression. Int covers integer-valued reals
/// (floor/ceil results, differences of naturals).
enum class StaticSort { Nat, Int, Real, Vec, Unknown };

struct Diagnostic {
  enum class Kind {
    UnboundVariable,
    VariantSort,
    MissingAnnotation,
    PowExponentSort,
    NameClash,
    SortMismatch,
    BadApply,
    BadIndex,
    EmptyName,
    BadQuantifierBound,
  };
  Kind kind;
  std::string message;
};

/// Empty result iff the program invariants hold: parameter/local names are
/// disjoint, every variable read is bound, whiles carry both annotations,
/// variants are integer-sorted, pow exponents are integer-sorted, vector
/// operations target vec-sorted names.
std::vector<Diagnostic> well_formed(const Program& p);

}  // namespace certinum::lang
