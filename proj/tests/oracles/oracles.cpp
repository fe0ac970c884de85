#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace normic::oracle {

namespace {

std::int64_t md(std::int64_t x, std::int64_t m) {
    x %= m;
    return x < 0 ? x + m : x;
}

Tuple add(const Orders& orders, const Tuple& x, const Tuple& y) {
    Tuple out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + y[i]) % orders[i];
    return out;
}

Tuple times(const Orders& orders, std::int64_t k, const Tuple& x) {
    Tuple out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<std::int64_t>((static_cast<__int128>(k) * x[i]) % orders[i]);
    return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

std::vector<Tuple> all_tuples(const Orders& orders) {
    std::vector<Tuple> out{Tuple(orders.size(), 0)};
    for (std::size_t i = 0; i < orders.size(); ++i) {
        std::vector<Tuple> next;
        for (std::int64_t v = 0; v < orders[i]; ++v)
            for (const auto& t : out) {
                Tuple u = t;
                u[i] = v;
                next.push_back(u);
            }
        out = std::move(next);
    }
    // mixed radix with coordinate 0 fastest
    std::sort(out.begin(), out.end(), [](const Tuple& a, const Tuple& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

Orders quotient_invariants(const Orders& orders, const std::vector<Tuple>& M, const std::vector<Tuple>& C) {
    const std::set<Tuple> cset(C.begin(), C.end());
    const auto qorder = static_cast<std::int64_t>(M.size() / C.size());
    if (static_cast<std::int64_t>(C.size()) * qorder != static_cast<std::int64_t>(M.size()))
        throw std::logic_error("oracle: |C| does not divide |M|");

    std::map<std::int64_t, std::vector<std::int64_t>> parts;  // prime -> p-power cyclic orders, descending
    for (std::int64_t p : prime_divisors(qorder)) {
        std::vector<int> logs{0};  // log_p |Q[p^j]|
        std::int64_t pj = 1;
        while (true) {
            pj *= p;
            std::int64_t killed = 0;
            for (const auto& x : M)
                if (cset.count(times(orders, pj, x))) ++killed;
            std::int64_t count = killed / static_cast<std::int64_t>(C.size());
            int lg = 0;
            while (count > 1) {
                if (count % p) throw std::logic_error("oracle: torsion count is not a p-power");
                count /= p;
                ++lg;
            }
            if (lg == logs.back()) break;
            logs.push_back(lg);
        }
        // factors of order >= p^j number logs[j] - logs[j-1]
        const std::size_t top = logs.size() - 1;
        std::vector<std::int64_t> at_least(top + 2, 0);
        for (std::size_t j = 1; j <= top; ++j) at_least[j] = logs[j] - logs[j - 1];
        std::int64_t power = 1;
        std::vector<std::int64_t> orders_p;
        for (std::size_t j = 1; j <= top; ++j) {
            power *= p;
            for (std::int64_t c = 0; c < at_least[j] - at_least[j + 1]; ++c) orders_p.push_back(power);
        }
        std::sort(orders_p.rbegin(), orders_p.rend());
        parts[p] = orders_p;
    }
    std::size_t width = 0;
    for (const auto& [p, v] : parts) width = std::max(width, v.size());
    Orders inv(width, 1);
    for (const auto& [p, v] : parts)
        for (std::size_t i = 0; i < v.size(); ++i) inv[i] *= v[i];
    std::sort(inv.begin(), inv.end());
    return inv;
}

Orders group_invariants(const Orders& orders) {
    return quotient_invariants(orders, all_tuples(orders), {Tuple(orders.size(), 0)});
}

std::vector<Tuple> cyclic_span(const Orders& orders, const Tuple& g) {
    std::vector<Tuple> out{Tuple(orders.size(), 0)};
    Tuple cur = g;
    while (cur != out.front()) {
        out.push_back(cur);
        cur = add(orders, cur, g);
    }
    return out;
}

BrauerOracle brauer_quotient(std::int64_t n, const Orders& d, const Orders& r) {
    std::vector<Tuple> members;
    for (const auto& t : all_tuples(r)) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < t.size(); ++i) s += d[i] * t[i];
        if (s % n == 0) members.push_back(t);
    }
    Tuple ones(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) ones[i] = 1 % r[i];
    const auto kernel = cyclic_span(r, ones);
    BrauerOracle out;
    out.membership = quotient_invariants(r, members, {Tuple(r.size(), 0)});
    out.quotient = quotient_invariants(r, members, kernel);
    out.kernel_order = static_cast<std::int64_t>(kernel.size());
    out.membership_order = static_cast<std::int64_t>(members.size());
    return out;
}

int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p) {
    if (a == 0 || b == 0 || p % 2 == 0) throw std::invalid_argument("oracle hilbert_symbol: bad input");
    auto strip_squares = [p](std::int64_t x) {
        while (x % (p * p) == 0) x /= p * p;
        return x;
    };
    a = strip_squares(a);
    b = strip_squares(b);
    const std::int64_t M = p * p * p;
    std::vector<bool> square(static_cast<std::size_t>(M), false);
    for (std::int64_t z = 0; z < M; ++z) square[static_cast<std::size_t>(z * z % M)] = true;
    const std::int64_t am = md(a, M), bm = md(b, M);
    // w = 1: z^2 = a y^2 + b
    for (std::int64_t y = 0; y < M; ++y)
        if (square[static_cast<std::size_t>((am * (y * y % M) + bm) % M)]) return 1;
    // y = 1: z^2 = a + b w^2
    for (std::int64_t w = 0; w < M; ++w)
        if (square[static_cast<std::size_t>((am + bm * (w * w % M)) % M)]) return 1;
    // z = 1: a y^2 + b w^2 = 1
    std::vector<bool> bw(static_cast<std::size_t>(M), false);
    for (std::int64_t w = 0; w < M; ++w) bw[static_cast<std::size_t>(bm * (w * w % M) % M)] = true;
    for (std::int64_t y = 0; y < M; ++y)
        if (bw[static_cast<std::size_t>(md(1 - am * (y * y % M), M))]) return 1;
    return -1;
}

std::int64_t count_subgroups_by_subsets(const Orders& orders) {
    const auto elems = all_tuples(orders);
    const std::size_t N = elems.size();
    if (N > 12) throw std::invalid_argument("oracle: group too large for subset enumeration");
    std::map<Tuple, std::size_t> index;
    for (std::size_t i = 0; i < N; ++i) index[elems[i]] = i;
    std::int64_t count = 0;
    for (std::uint32_t mask = 1; mask < (1u << N); ++mask) {
        if (!(mask & 1u)) continue;  // must contain 0 (index 0)
        bool closed = true;
        for (std::size_t i = 0; i < N && closed; ++i) {
            if (!(mask >> i & 1u)) continue;
            for (std::size_t j = 0; j < N; ++j) {
                if (!(mask >> j & 1u)) continue;
                if (!(mask >> index[add(orders, elems[i], elems[j])] & 1u)) {
                    closed = false;
                    break;
                }
            }
        }
        if (closed) ++count;
    }
    return count;
}

std::vector<std::int64_t> find_monic_factor(const std::vector<std::int64_t>& f) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg < 2 || f.back() != 1) throw std::invalid_argument("oracle: need monic polynomial of degree >= 2");
    std::int64_t bound = 0;
    for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(f[static_cast<std::size_t>(i)]));
    bound += 1;

    auto divides = [&](const std::vector<std::int64_t>& g) {
        std::vector<__int128> rem(f.begin(), f.end());
        const int dg = static_cast<int>(g.size()) - 1;
        for (int i = deg; i >= dg; --i) {
            const __int128 c = rem[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            for (int j = 0; j <= dg; ++j) rem[static_cast<std::size_t>(i - dg + j)] -= c * g[static_cast<std::size_t>(j)];
        }
        for (int i = 0; i < dg; ++i)
            if (rem[static_cast<std::size_t>(i)] != 0) return false;
        return true;
    };

    for (int k = 1; k <= deg / 2; ++k) {
        // |coefficient of x^j| <= C(k, j) * bound^(k-j) for a monic factor of degree k
        std::vector<std::int64_t> limit(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
            double binom = 1;
            for (int t = 0; t < j; ++t) binom = binom * (k - t) / (t + 1);
            limit[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(binom * std::pow(static_cast<double>(bound), k - j)) + 1;
        }
        std::vector<std::int64_t> g(static_cast<std::size_t>(k + 1), 0);
        g[static_cast<std::size_t>(k)] = 1;
        std::vector<std::int64_t> found;
        std::function<bool(int)> rec = [&](int j) -> bool {
            if (j < 0) {
                if (divides(g)) {
                    found = g;
                    return true;
                }
                return false;
            }
            const auto L = limit[static_cast<std::size_t>(j)];
            for (std::int64_t c = -L; c <= L; ++c) {
                if (j == 0 && (c == 0 ? f[0] != 0 : f[0] % c != 0)) continue;
                g[static_cast<std::size_t>(j)] = c;
                if (rec(j - 1)) return true;
            }
            return false;
        };
        if (rec(k - 1)) return found;
    }
    return {};
}

std::vector<std::int64_t> fp_multiply(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = md(out[i + j] + a[i] * b[j], p);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

bool fp_is_irreducible(const std::vector<std::int64_t>& coeffs, std::int64_t p) {
    std::vector<std::int64_t> f;
    for (auto c : coeffs) f.push_back(md(c, p));
    while (!f.empty() && f.back() == 0) f.pop_back();
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1) throw std::invalid_argument("oracle: degree must be positive");
    auto divides = [&](const std::vector<std::int64_t>& g) {
        std::vector<std::int64_t> rem = f;
        const int dg = static_cast<int>(g.size()) - 1;
        for (int i = deg; i >= dg; --i) {
            const std::int64_t c = rem[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            for (int j = 0; j <= dg; ++j)
                rem[static_cast<std::size_t>(i - dg + j)] = md(rem[static_cast<std::size_t>(i - dg + j)] - c * g[static_cast<std::size_t>(j)], p);
        }
        for (int i = 0; i < dg; ++i)
            if (rem[static_cast<std::size_t>(i)] != 0) return false;
        return true;
    };
    for (int k = 1; 2 * k <= deg; ++k) {
        std::vector<std::int64_t> g(static_cast<std::size_t>(k + 1), 0);
        g[static_cast<std::size_t>(k)] = 1;
        while (true) {
            if (divides(g)) return false;
            int i = 0;
            while (i < k && ++g[static_cast<std::size_t>(i)] == p) g[static_cast<std::size_t>(i++)] = 0;
            if (i == k) break;
        }
    }
    return true;
}

std::int64_t affine_points(std::int64_t q, const std::vector<std::vector<std::int64_t>>& f,
                           const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& eps) {
    const std::size_t L = f.size();
    auto eval = [q](const std::vector<std::int64_t>& poly, std::int64_t x) {
        std::int64_t acc = 0;
        for (std::size_t i = poly.size(); i-- > 0;) acc = md(acc * x + poly[i], q);
        return acc;
    };
    auto power = [q](std::int64_t x, std::int64_t e) {
        std::int64_t acc = 1;
        for (std::int64_t i = 0; i < e; ++i) acc = acc * x % q;
        return acc;
    };
    std::int64_t count = 0;
    std::vector<std::int64_t> y(L, 0);
    for (std::int64_t c = 0; c < q; ++c) {
        std::vector<std::int64_t> target(L);
        for (std::size_t i = 0; i < L; ++i) target[i] = eval(f[i], c);
        std::fill(y.begin(), y.end(), 0);
        while (true) {
            bool ok = true;
            for (std::size_t i = 0; i < L && ok; ++i) ok = md(eps[i] * power(y[i], r[i]), q) == target[i];
            if (ok) ++count;
            std::size_t i = 0;
            while (i < L && ++y[i] == q) y[i++] = 0;
            if (i == L) break;
        }
    }
    return count;
}

}  // namespace normic::oracle
