#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace dpic {

using Rational = mpq_class;

// Residues modulo a process-wide prime. Set the modulus once, before any
// arithmetic; values do not remember which modulus produced them.
class ModP {
public:
    ModP() = default;
    ModP(long long x) {
        long long p = static_cast<long long>(modulus());
        long long r = x % p;
        if (r < 0) r += p;
        v_ = static_cast<std::uint64_t>(r);
    }

    static std::uint64_t& modulus() {
        static std::uint64_t p = 2147483647ULL;
        return p;
    }
    static void set_modulus(std::uint64_t p) {
        if (p <= 2 || p >= (1ULL << 32)) throw std::invalid_argument("modulus must be an odd prime below 2^32");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("modulus is not prime");
        modulus() = p;
    }

    std::uint64_t value() const { return v_; }

    friend ModP operator+(ModP a, ModP b) {
        std::uint64_t s = a.v_ + b.v_;
        if (s >= modulus()) s -= modulus();
        return raw(s);
    }
    friend ModP operator-(ModP a, ModP b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + modulus() - b.v_); }
    friend ModP operator*(ModP a, ModP b) { return raw(a.v_ * b.v_ % modulus()); }
    friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
    ModP operator-() const { return raw(v_ == 0 ? 0 : modulus() - v_); }
    ModP& operator+=(ModP b) { return *this = *this + b; }
    ModP& operator-=(ModP b) { return *this = *this - b; }
    ModP& operator*=(ModP b) { return *this = *this * b; }
    ModP& operator/=(ModP b) { return *this = *this / b; }
    friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }
    friend bool operator!=(ModP a, ModP b) { return a.v_ != b.v_; }

    ModP inverse() const {
        if (v_ == 0) throw std::domain_error("division by zero in GF(p)");
        std::uint64_t r = 1, b = v_, e = modulus() - 2;
        while (e) {
            if (e & 1) r = r * b % modulus();
            b = b * b % modulus();
            e >>= 1;
        }
        return raw(r);
    }

private:
    static ModP raw(std::uint64_t v) {
        ModP x;
        x.v_ = v;
        return x;
    }
    std::uint64_t v_ = 0;
};

template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static std::string str(const Rational& x) { return x.get_str(); }
    static std::string name() { return "rational"; }
    static Rational parse(const std::string& s) {
        Rational q(s);
        q.canonicalize();
        return q;
    }
};

template <>
struct FieldOps<ModP> {
    static bool is_zero(const ModP& x) { return x.value() == 0; }
    static std::string str(const ModP& x) {
        std::uint64_t v = x.value(), p = ModP::modulus();
        // print the symmetric representative so that -1 reads as -1
        if (v > p / 2) return "-" + std::to_string(p - v);
        return std::to_string(v);
    }
    static std::string name() { return "gfp:" + std::to_string(ModP::modulus()); }
    static ModP parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return ModP(std::stoll(s));
        return ModP(std::stoll(s.substr(0, slash))) / ModP(std::stoll(s.substr(slash + 1)));
    }
};

template <class F>
inline bool is_zero(const F& x) {
    return FieldOps<F>::is_zero(x);
}

template <class F>
inline std::string to_string(const F& x) {
    return FieldOps<F>::str(x);
}

// A random nonzero scalar drawn from a small symmetric range; enough for
// generic-point arguments over either field.
template <class F>
inline F random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(1, 997);
    int v = dist(rng);
    return F(static_cast<long>((rng() & 1) ? v : -v));
}

}  // namespace dpic
