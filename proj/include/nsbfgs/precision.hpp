#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ios>
#include <limits>
#include <string>

#include "nsbfgs/errors.hpp"

namespace nsbfgs {

namespace bmp = boost::multiprecision;

// Variable-precision real. Every value carries its own precision (decimal
// digits), fixed at construction from the active context.
using mpfloat = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

// Scalar precision configuration governing all arithmetic in a run.
// machine  -> IEEE double
// extended -> mpfloat with `digits` significant decimal digits (>= 32)
struct PrecisionContext {
    enum class Mode { machine, extended };

    Mode mode = Mode::machine;
    int digits = 0;

    static PrecisionContext machine() { return PrecisionContext{Mode::machine, 0}; }

    static PrecisionContext extended(int digits) {
        if (digits < 32)
            throw ConfigError("PrecisionContext: extended mode requires digits >= 32, got " +
                              std::to_string(digits));
        return PrecisionContext{Mode::extended, digits};
    }

    bool is_machine() const { return mode == Mode::machine; }

    // Digits needed to serialize a scalar of this context losslessly.
    int roundtrip_digits() const { return is_machine() ? 17 : digits + 3; }
};

inline constexpr int kDefaultExtendedDigits = 520;

// RAII activation of a context: sets the default construction precision for
// mpfloat while alive. Values already constructed keep their precision.
// The default precision is process-global, so guards must not be nested with
// different digit counts across threads running concurrently.
class ContextGuard {
  public:
    explicit ContextGuard(const PrecisionContext& ctx)
        : prev_(mpfloat::default_precision()) {
        if (!ctx.is_machine()) mpfloat::default_precision(static_cast<unsigned>(ctx.digits));
    }
    ~ContextGuard() { mpfloat::default_precision(prev_); }

    ContextGuard(const ContextGuard&) = delete;
    ContextGuard& operator=(const ContextGuard&) = delete;

  private:
    unsigned prev_;
};

// Uniform access to the two scalar kinds. Generic code is templated on S and
// goes through these helpers where double and mpfloat differ.
template <class S> struct scalar_ops;

template <> struct scalar_ops<double> {
    static constexpr bool is_machine = true;

    static bool finite(double v) { return std::isfinite(v); }
    static double from_double(double v) { return v; }
    static double to_double(double v) { return v; }
    // Context tag used to detect mixing; all doubles share one context.
    static long precision_of(double) { return 0; }
    static double pow10(double e) { return std::pow(10.0, e); }
    // Unit roundoff of the value's own precision.
    static double eps_of(double) { return std::numeric_limits<double>::epsilon(); }

    static std::string str(double v, int significant) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*e", significant - 1, v);
        return buf;
    }
    static double parse(const std::string& s) {
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw ParseError("not a number: '" + s + "'");
        return v;
    }
};

template <> struct scalar_ops<mpfloat> {
    static constexpr bool is_machine = false;

    static bool finite(const mpfloat& v) { return mpfr_number_p(v.backend().data()) != 0; }
    static mpfloat from_double(double v) { return mpfloat(v); } // exact lift
    static double to_double(const mpfloat& v) { return v.template convert_to<double>(); }
    static long precision_of(const mpfloat& v) { return static_cast<long>(v.precision()); }
    static mpfloat pow10(const mpfloat& e) { return pow(mpfloat(10), e); }
    static mpfloat eps_of(const mpfloat& v) {
        const mpfr_prec_t bits = mpfr_get_prec(v.backend().data());
        return pow(mpfloat(2), 1 - static_cast<long>(bits));
    }

    static std::string str(const mpfloat& v, int significant) {
        return v.str(significant, std::ios_base::scientific);
    }
    static mpfloat parse(const std::string& s) {
        try {
            return mpfloat(s);
        } catch (const std::runtime_error&) {
            throw ParseError("not a number: '" + s + "'");
        }
    }
};

template <class S>
void require_same_precision(const S& a, const S& b, const char* where) {
    if (scalar_ops<S>::precision_of(a) != scalar_ops<S>::precision_of(b))
        throw PrecisionMismatchError(std::string(where) + ": operands from different precision contexts");
}

template <class S>
S ensure_finite(S v, const char* what) {
    if (!scalar_ops<S>::finite(v)) throw NonFiniteError(std::string(what) + " is not finite");
    return v;
}

// Context-derived default tolerances. The paper fixes none of these; the
// machine values are conventional and the extended values scale with the
// digit count so that every check tightens as precision grows.
template <class S> struct Tolerances {
    S tie_tol;      // relative tie detection for active sets
    S grad_tol;     // relative gradient agreement for I_g
    S hull_tol;     // duality-gap stop for the min-norm-point solver
    S crit_tol;     // criticality threshold on the min-norm residual
    S eigen_tol;    // off-diagonal stop for the Jacobi eigensolver
    S rank_tol;     // relative singular-value cutoff for numerical rank
    int hull_max_iter = 10000;

    static Tolerances defaults(const PrecisionContext& ctx) {
        Tolerances t;
        if (ctx.is_machine()) {
            t.tie_tol = S(1e-10);
            t.grad_tol = S(1e-10);
            t.hull_tol = S(1e-12);
            t.crit_tol = S(1e-8);
            t.eigen_tol = S(1e-14);
            t.rank_tol = S(1e-10);
        } else {
            const int d = ctx.digits;
            t.tie_tol = scalar_ops<S>::pow10(S(-(d - 20)));
            t.grad_tol = t.tie_tol;
            t.hull_tol = scalar_ops<S>::pow10(S(-(d / 2)));
            t.crit_tol = t.hull_tol;
            t.eigen_tol = scalar_ops<S>::pow10(S(-(d - 10)));
            t.rank_tol = scalar_ops<S>::pow10(S(-(d / 2)));
        }
        return t;
    }
};

} // namespace nsbfgs
