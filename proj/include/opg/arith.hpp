#ifndef OPG_ARITH_HPP
#define OPG_ARITH_HPP

#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace opg {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Requested size exceeds a configured brute-force or series ceiling.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller violated an operation contract.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An internal consistency assertion failed (e.g. non-unique Hamiltonian
// cycle on input claimed to be outerplanar).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Int factorial(long n) {
    if (n < 0) throw DomainError("factorial of negative");
    Int r;
    mpz_fac_ui(r.backend().data(), static_cast<unsigned long>(n));
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.backend().data(), base.backend().data(), e);
    return r;
}

inline bool is_integral(const Rat& q) { return denominator(q) == 1; }

inline Int to_int(const Rat& q) {
    if (!is_integral(q)) throw StructuralError("expected integral rational, got " + q.str());
    return numerator(q);
}

} // namespace opg

#endif
