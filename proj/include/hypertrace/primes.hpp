#ifndef HYPERTRACE_PRIMES_HPP
#define HYPERTRACE_PRIMES_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hypertrace {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// Prime factorization by trial division; fine for the desk-scale inputs here.
inline std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline std::vector<std::uint64_t> prime_divisors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (auto& [p, e] : factorize_u64(n)) ps.push_back(p);
    return ps;
}

inline std::uint64_t euler_phi_u64(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto& [p, e] : factorize_u64(n)) r -= r / p;
    return r;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

/// Selection of primes, parsed from "a mod M in lo..hi", "lo..hi" or "p1,p2,...".
struct PrimeSelection {
    std::uint64_t residue = 0;   // 0 means no congruence filter
    std::uint64_t modulus = 1;
    std::uint64_t lo = 2, hi = 2;
    std::vector<std::uint64_t> explicit_list;

    bool has_list() const { return !explicit_list.empty(); }
};

inline PrimeSelection parse_prime_selection(const std::string& spec) {
    PrimeSelection sel;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string s = trim(spec);
    if (s.empty()) throw UsageError("empty prime selection");
    if (s.find(',') != std::string::npos) {
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t c = s.find(',', pos);
            std::string tok = trim(s.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
            if (!tok.empty()) sel.explicit_list.push_back(std::stoull(tok));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        return sel;
    }
    size_t in_pos = s.find(" in ");
    std::string range = s;
    if (in_pos != std::string::npos) {
        std::string cong = trim(s.substr(0, in_pos));
        range = trim(s.substr(in_pos + 4));
        size_t mod_pos = cong.find(" mod ");
        if (mod_pos == std::string::npos) throw UsageError("expected 'a mod M in lo..hi': " + spec);
        sel.residue = std::stoull(trim(cong.substr(0, mod_pos)));
        sel.modulus = std::stoull(trim(cong.substr(mod_pos + 5)));
        if (sel.modulus == 0 || std::gcd(sel.residue, sel.modulus) != 1)
            throw UsageError("congruence class not coprime to modulus: " + spec);
    }
    size_t dots = range.find("..");
    if (dots == std::string::npos) {
        sel.explicit_list.push_back(std::stoull(range));
        return sel;
    }
    sel.lo = std::stoull(trim(range.substr(0, dots)));
    sel.hi = std::stoull(trim(range.substr(dots + 2)));
    if (sel.hi < sel.lo) throw UsageError("empty range: " + spec);
    return sel;
}

/// Deterministic ascending list of primes matching the selection.
inline std::vector<std::uint64_t> prime_stream(const PrimeSelection& sel) {
    std::vector<std::uint64_t> out;
    if (sel.has_list()) {
        for (std::uint64_t p : sel.explicit_list)
            if (is_prime_u64(p)) out.push_back(p);
        std::sort(out.begin(), out.end());
        return out;
    }
    if (sel.hi > 100000000ull) throw UsageError("prime range upper bound too large");
    std::vector<bool> composite(sel.hi + 1, false);
    for (std::uint64_t p = 2; p * p <= sel.hi; ++p) {
        if (!composite[p])
            for (std::uint64_t q = p * p; q <= sel.hi; q += p) composite[q] = true;
    }
    for (std::uint64_t p = std::max<std::uint64_t>(2, sel.lo); p <= sel.hi; ++p) {
        if (composite[p]) continue;
        if (sel.modulus > 1 && p % sel.modulus != sel.residue % sel.modulus) continue;
        out.push_back(p);
    }
    return out;
}

inline std::vector<std::uint64_t> prime_stream(const std::string& spec) {
    return prime_stream(parse_prime_selection(spec));
}

}  // namespace hypertrace

#endif
