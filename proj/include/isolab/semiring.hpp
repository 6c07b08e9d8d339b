#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace isolab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

/// Exact rational scalar. mpq_class keeps values canonical (reduced,
/// positive denominator) under arithmetic, so == is structural equality.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// {0,1} with v as addition and ^ as multiplication.
struct Boolean {
    bool v = false;

    Boolean() = default;
    explicit constexpr Boolean(bool b) : v(b) {}
    explicit constexpr Boolean(int b) : v(b != 0) {}

    friend constexpr Boolean operator+(Boolean a, Boolean b) { return Boolean(a.v || b.v); }
    friend constexpr Boolean operator*(Boolean a, Boolean b) { return Boolean(a.v && b.v); }
    Boolean& operator+=(Boolean o) { v = v || o.v; return *this; }
    Boolean& operator*=(Boolean o) { v = v && o.v; return *this; }
    friend constexpr bool operator==(Boolean a, Boolean b) { return a.v == b.v; }
    friend constexpr bool operator!=(Boolean a, Boolean b) { return a.v != b.v; }
};

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(Boolean x) { return !x.v; }

inline bool is_negative(const Rat& x) { return sgn(x) < 0; }
inline bool is_negative(Boolean) { return false; }

template <class T> T semiring_zero();
template <> inline Rat semiring_zero<Rat>() { return Rat(0); }
template <> inline Boolean semiring_zero<Boolean>() { return Boolean(false); }

template <class T> T semiring_one();
template <> inline Rat semiring_one<Rat>() { return Rat(1); }
template <> inline Boolean semiring_one<Boolean>() { return Boolean(true); }

inline std::string to_string(const Rat& x) { return x.get_str(); }
inline std::string to_string(Boolean x) { return x.v ? "1" : "0"; }

} // namespace isolab
