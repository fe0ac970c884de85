#include "normic/abelian.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "normic/errors.hpp"

namespace normic {

namespace {

std::int64_t dot_mod(const IntMatrix& m, Eigen::Index row, const std::vector<std::int64_t>& x,
                     std::int64_t modulus) {
    std::int64_t acc = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        acc = mod(acc + mulmod(m(row, j), x[static_cast<std::size_t>(j)], modulus), modulus);
    return acc;
}

}  // namespace

FinAbGroup::FinAbGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
    for (auto r : orders_) require(r >= 1, "group orders must be positive");
}

std::int64_t FinAbGroup::order() const {
    std::int64_t n = 1;
    for (auto r : orders_) {
        if (__builtin_mul_overflow(n, r, &n)) throw InputError("group order overflows");
    }
    return n;
}

std::int64_t FinAbGroup::exponent() const {
    std::int64_t e = 1;
    for (auto r : orders_) e = std::lcm(e, r);
    return e;
}

GroupElement FinAbGroup::zero() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }

GroupElement FinAbGroup::element(std::vector<std::int64_t> coords) const {
    require(coords.size() == rank(), "element has wrong number of coordinates");
    for (std::size_t i = 0; i < rank(); ++i) coords[i] = mod(coords[i], orders_[i]);
    return GroupElement{std::move(coords)};
}

bool FinAbGroup::contains(const GroupElement& x) const {
    if (x.coords.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
        if (x.coords[i] < 0 || x.coords[i] >= orders_[i]) return false;
    return true;
}

GroupElement FinAbGroup::add(const GroupElement& x, const GroupElement& y) const {
    GroupElement out = zero();
    for (std::size_t i = 0; i < rank(); ++i) out.coords[i] = mod(x.coords[i] + y.coords[i], orders_[i]);
    return out;
}

GroupElement FinAbGroup::negate(const GroupElement& x) const {
    GroupElement out = zero();
    for (std::size_t i = 0; i < rank(); ++i) out.coords[i] = mod(-x.coords[i], orders_[i]);
    return out;
}

GroupElement FinAbGroup::scale(std::int64_t k, const GroupElement& x) const {
    GroupElement out = zero();
    for (std::size_t i = 0; i < rank(); ++i) out.coords[i] = mulmod(k, x.coords[i], orders_[i]);
    return out;
}

std::int64_t FinAbGroup::index_of(const GroupElement& x) const {
    std::int64_t idx = 0;
    for (std::size_t i = rank(); i-- > 0;) idx = idx * orders_[i] + mod(x.coords[i], orders_[i]);
    return idx;
}

GroupElement FinAbGroup::element_at(std::int64_t index) const {
    GroupElement out = zero();
    for (std::size_t i = 0; i < rank(); ++i) {
        out.coords[i] = index % orders_[i];
        index /= orders_[i];
    }
    return out;
}

std::string FinAbGroup::str() const {
    std::string out;
    for (auto r : orders_) {
        if (r == 1) continue;
        if (!out.empty()) out += " + ";
        out += "Z/" + std::to_string(r);
    }
    return out.empty() ? "0" : out;
}

GroupElement CanonicalForm::to_canonical(const FinAbGroup& source, const GroupElement& x) const {
    require(source.contains(x), "to_canonical: element not in source group");
    GroupElement y = group.zero();
    for (std::size_t t = 0; t < group.rank(); ++t)
        y.coords[t] = dot_mod(forward, static_cast<Eigen::Index>(t), x.coords, group.orders()[t]);
    return y;
}

GroupElement CanonicalForm::from_canonical(const FinAbGroup& source, const GroupElement& y) const {
    require(group.contains(y), "from_canonical: element not in canonical group");
    GroupElement x = source.zero();
    for (std::size_t j = 0; j < source.rank(); ++j)
        x.coords[j] = dot_mod(backward, static_cast<Eigen::Index>(j), y.coords, source.orders()[j]);
    return x;
}

CanonicalForm canonical_form(const FinAbGroup& G) {
    const auto m = static_cast<Eigen::Index>(G.rank());
    const IntMatrix rel = relation_matrix(G);
    const auto snf = smith_normal_form(rel);
    std::vector<Eigen::Index> keep;
    std::vector<std::int64_t> factors;
    for (Eigen::Index t = 0; t < m; ++t) {
        ensure(snf.diagonal(t) > 0, "canonical_form: singular relation matrix");
        if (snf.diagonal(t) > 1) {
            keep.push_back(t);
            factors.push_back(snf.diagonal(t));
        }
    }
    CanonicalForm out;
    out.group = FinAbGroup(factors);
    const auto t_count = static_cast<Eigen::Index>(keep.size());
    out.forward = IntMatrix(t_count, m);
    out.backward = IntMatrix(m, t_count);
    for (Eigen::Index k = 0; k < t_count; ++k) {
        out.forward.row(k) = snf.U.row(keep[static_cast<std::size_t>(k)]);
        out.backward.col(k) = snf.U_inv.col(keep[static_cast<std::size_t>(k)]);
    }
    return out;
}

std::int64_t element_order(const FinAbGroup& G, const GroupElement& x) {
    require(G.contains(x), "element_order: element not in group");
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        const std::int64_t r = G.orders()[i];
        ord = std::lcm(ord, r / std::gcd(x.coords[i], r));
    }
    return ord;
}

GroupElement Homomorphism::apply(const GroupElement& x) const {
    require(source.contains(x), "homomorphism: element not in source");
    GroupElement y = target.zero();
    for (std::size_t i = 0; i < target.rank(); ++i)
        y.coords[i] = dot_mod(matrix, static_cast<Eigen::Index>(i), x.coords, target.orders()[i]);
    return y;
}

bool Homomorphism::is_well_defined() const {
    if (matrix.rows() != static_cast<Eigen::Index>(target.rank()) ||
        matrix.cols() != static_cast<Eigen::Index>(source.rank()))
        return false;
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < matrix.cols(); ++j)
            if (mulmod(matrix(i, j), source.orders()[static_cast<std::size_t>(j)],
                       target.orders()[static_cast<std::size_t>(i)]) != 0)
                return false;
    return true;
}

bool Homomorphism::is_surjective() const {
    return subgroup_invariants(matrix, relation_matrix(target)).order() == target.order();
}

GroupElement max_order_image(const FinAbGroup& A, const std::vector<Homomorphism>& projections) {
    std::int64_t target_exponent = 1;
    for (const auto& phi : projections) {
        require(phi.source == A, "max_order_image: projection has the wrong source");
        require(phi.is_well_defined(), "max_order_image: projection is not well defined");
        require(phi.is_surjective(), "max_order_image: projection is not surjective");
        target_exponent = std::lcm(target_exponent, phi.target.exponent());
    }
    const std::int64_t exp_a = A.exponent();

    auto image_order = [&](const GroupElement& a) {
        std::int64_t ord = 1;
        for (const auto& phi : projections) ord = std::lcm(ord, element_order(phi.target, phi.apply(a)));
        return ord;
    };

    GroupElement result = A.zero();
    for (auto [p, e] : factorize(target_exponent)) {
        // CRT idempotent for p in Z/exp(A): keeps exactly the p-part of any order,
        // and the idempotents sum to 1, so a cyclic generator comes back unchanged
        std::int64_t coprime_part = exp_a, p_part = 1;
        while (coprime_part % p == 0) {
            coprime_part /= p;
            p_part *= p;
        }
        const std::int64_t idempotent =
            p_part == 1 ? coprime_part : mulmod(coprime_part, invmod(coprime_part % p_part, p_part), exp_a);

        const std::int64_t pe = [&] {
            std::int64_t v = 1;
            for (int i = 0; i < e; ++i) v *= p;
            return v;
        }();
        bool found = false;
        for (const auto& phi : projections) {
            if (phi.target.exponent() % pe != 0) continue;
            for (std::size_t j = 0; j < A.rank() && !found; ++j) {
                GroupElement basis = A.zero();
                basis.coords[j] = 1 % A.orders()[j];
                const GroupElement candidate = A.scale(idempotent, basis);
                if (element_order(phi.target, phi.apply(candidate)) == pe) {
                    result = A.add(result, candidate);
                    found = true;
                }
            }
            if (found) break;
        }
        ensure(found, "max_order_image: no element realizes the p-part of the exponent");
    }
    ensure(image_order(result) == target_exponent, "max_order_image: assembled element has wrong order");
    return result;
}

RatModOne DualGroup::pair(const Character& chi, const GroupElement& x) const {
    require(chi.coords.size() == group.rank() && x.coords.size() == group.rank(), "pairing: rank mismatch");
    RatModOne acc;
    for (std::size_t i = 0; i < group.rank(); ++i) {
        const std::int64_t r = group.orders()[i];
        acc = acc + RatModOne(mulmod(chi.coords[i], x.coords[i], r), r);
    }
    return acc;
}

Character DualGroup::character(std::vector<std::int64_t> coords) const {
    return Character{group.element(std::move(coords)).coords};
}

std::vector<Character> DualGroup::all() const {
    std::vector<Character> out;
    out.reserve(static_cast<std::size_t>(group.order()));
    for (std::int64_t i = 0; i < group.order(); ++i) out.push_back(Character{group.element_at(i).coords});
    return out;
}

DualGroup dual_group(const FinAbGroup& G) { return DualGroup{G}; }

bool Subgroup::is_subset_of(const Subgroup& other) const {
    ensure(members.size() == other.members.size(), "subgroups of different groups");
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i] && !other.members[i]) return false;
    return true;
}

std::vector<std::int64_t> Subgroup::member_indices() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i]) out.push_back(static_cast<std::int64_t>(i));
    return out;
}

namespace {

// H + <g> as a union of cosets H + k g.
void adjoin(const FinAbGroup& G, std::vector<bool>& members, const GroupElement& g) {
    std::vector<std::int64_t> base;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i]) base.push_back(static_cast<std::int64_t>(i));
    GroupElement step = g;
    while (!members[G.index_of(step)]) {
        for (auto idx : base) members[G.index_of(G.add(G.element_at(idx), step))] = true;
        step = G.add(step, g);
    }
}

}  // namespace

Subgroup generated_subgroup(const FinAbGroup& G, const std::vector<GroupElement>& generators) {
    Subgroup H;
    H.members.assign(static_cast<std::size_t>(G.order()), false);
    H.members[0] = true;
    for (const auto& g : generators) {
        require(G.contains(g), "generator not in group");
        adjoin(G, H.members, g);
        if (g != G.zero()) H.generators.push_back(g);
    }
    H.order = static_cast<std::int64_t>(std::count(H.members.begin(), H.members.end(), true));
    return H;
}

std::vector<Subgroup> enumerate_subgroups(const FinAbGroup& G, std::int64_t cap) {
    if (G.order() > cap)
        throw SearchExhausted("enumerate_subgroups: |G| = " + std::to_string(G.order()) + " exceeds cap " +
                              std::to_string(cap));
    std::map<std::vector<bool>, Subgroup> seen;
    std::deque<std::vector<bool>> queue;
    Subgroup trivial = generated_subgroup(G, {});
    queue.push_back(trivial.members);
    seen.emplace(trivial.members, std::move(trivial));
    while (!queue.empty()) {
        const auto key = queue.front();
        queue.pop_front();
        const Subgroup H = seen.at(key);
        for (std::int64_t idx = 0; idx < G.order(); ++idx) {
            if (H.members[static_cast<std::size_t>(idx)]) continue;
            Subgroup bigger = H;
            const GroupElement x = G.element_at(idx);
            adjoin(G, bigger.members, x);
            if (seen.contains(bigger.members)) continue;
            bigger.generators.push_back(x);
            bigger.order = static_cast<std::int64_t>(std::count(bigger.members.begin(), bigger.members.end(), true));
            queue.push_back(bigger.members);
            seen.emplace(bigger.members, std::move(bigger));
        }
    }
    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (auto& [k, H] : seen) out.push_back(std::move(H));
    std::sort(out.begin(), out.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.member_indices() < b.member_indices(); });
    return out;
}

GroupElement Quotient::project(const std::vector<std::int64_t>& coords) const {
    require(static_cast<Eigen::Index>(coords.size()) == projection.cols(), "project: wrong number of coordinates");
    GroupElement y = group.zero();
    for (std::size_t t = 0; t < group.rank(); ++t)
        y.coords[t] = dot_mod(projection, static_cast<Eigen::Index>(t), coords, group.orders()[t]);
    return y;
}

Quotient cokernel(const IntMatrix& relations) {
    const Eigen::Index m = relations.rows();
    Quotient out;
    if (m == 0) {
        out.projection = IntMatrix(0, 0);
        return out;
    }
    const auto snf = smith_normal_form(relations);
    std::vector<std::int64_t> factors;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index t = 0; t < m; ++t) {
        const std::int64_t s = snf.diagonal(t);
        require(s != 0, "cokernel: relations do not present a finite group");
        if (s > 1) {
            factors.push_back(s);
            keep.push_back(t);
        }
    }
    out.group = FinAbGroup(factors);
    out.projection = IntMatrix(static_cast<Eigen::Index>(keep.size()), m);
    for (std::size_t k = 0; k < keep.size(); ++k) out.projection.row(static_cast<Eigen::Index>(k)) = snf.U.row(keep[k]);
    return out;
}

FinAbGroup subgroup_invariants(const IntMatrix& generators, const IntMatrix& relations) {
    ensure(generators.rows() == relations.rows(), "subgroup_invariants: row mismatch");
    const Eigen::Index k = generators.cols();
    if (k == 0) return FinAbGroup{};
    IntMatrix stacked(generators.rows(), k + relations.cols());
    stacked << generators, relations;
    const IntMatrix kernel = integer_kernel(stacked);
    const IntMatrix among_generators = kernel.topRows(k);
    return cokernel(among_generators).group;
}

IntMatrix relation_matrix(const FinAbGroup& G) {
    const auto m = static_cast<Eigen::Index>(G.rank());
    IntMatrix rel = IntMatrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) rel(i, i) = G.orders()[static_cast<std::size_t>(i)];
    return rel;
}

Quotient quotient_by_cyclic(const FinAbGroup& G, const GroupElement& g) {
    require(G.contains(g), "quotient_by_cyclic: element not in group");
    const auto m = static_cast<Eigen::Index>(G.rank());
    IntMatrix rel(m, m + 1);
    rel.leftCols(m) = relation_matrix(G);
    for (Eigen::Index i = 0; i < m; ++i) rel(i, m) = g.coords[static_cast<std::size_t>(i)];
    return cokernel(rel);
}

std::vector<Character> annihilator(const FinAbGroup& G, const Subgroup& H) {
    const DualGroup dual = dual_group(G);
    std::vector<Character> out;
    for (const auto& chi : dual.all()) {
        bool kills = true;
        for (const auto& h : H.generators)
            if (!dual.pair(chi, h).is_zero()) {
                kills = false;
                break;
            }
        if (kills) out.push_back(chi);
    }
    return out;
}

}  // namespace normic
