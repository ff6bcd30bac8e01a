#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace lfree {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a guaranteed internal invariant fails to hold.
struct InternalInvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Floor division for arbitrary signs.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }
inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// The two-argument Rat constructor rejects negative denominators.
inline Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw PreconditionError("zero denominator");
    return d < 0 ? Rat(-n, -d) : Rat(n, d);
}

// a^e for non-negative e.
inline Int ipow(const Int& a, unsigned long e) {
    Int r = 1, b = a;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rat rpow(const Rat& a, unsigned long e) {
    return Rat(ipow(num(a), e), ipow(den(a), e));
}

}  // namespace lfree
