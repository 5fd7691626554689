#ifndef DLR_TEST_UTIL_HPP
#define DLR_TEST_UTIL_HPP

#include <string>

#include "dlr/concept.hpp"
#include "dlr/parser.hpp"

namespace dlr::test {

inline Concept C(const std::string& text) { return parse_concept(text); }
inline TBox T(const std::string& text) { return parse_tbox(text); }
inline Concept atom(const std::string& a) { return Concept::atom(a); }
inline Concept neg(const Concept& c) { return Concept::negation(c); }

inline const char* kSurgery =
    "(define-concept o-procedure (and procedure (some (inv performs) o-surgeon)))\n"
    "(define-concept o-surgeon (and surgeon (all performs o-procedure)))\n";

}  // namespace dlr::test

#endif
