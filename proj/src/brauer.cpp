#include "normic/brauer.hpp"

#include <numeric>

#include "normic/errors.hpp"

namespace normic {

NormicBundleDesc NormicBundleDesc::numeric(std::int64_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& dr) {
    NormicBundleDesc desc;
    desc.n = n;
    for (auto [d, r] : dr) desc.factors.push_back(FactorData{std::nullopt, d, r, std::nullopt, "given"});
    desc.validate();
    return desc;
}

std::vector<std::int64_t> NormicBundleDesc::degrees() const {
    std::vector<std::int64_t> out;
    for (const auto& f : factors) out.push_back(f.d);
    return out;
}

std::vector<std::int64_t> NormicBundleDesc::splitting_degrees() const {
    std::vector<std::int64_t> out;
    for (const auto& f : factors) out.push_back(f.r);
    return out;
}

void NormicBundleDesc::validate() const {
    require(n >= 1, "desc: n must be positive");
    require(!factors.empty(), "desc: at least one factor is needed");
    require(c != 0, "desc: leading constant must be nonzero");
    std::int64_t total = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        const std::string where = "desc: factor " + std::to_string(i) + ": ";
        require(f.d >= 1, where + "degree must be positive");
        require(f.r >= 1 && n % f.r == 0, where + "r must divide n");
        require((f.d * f.r) % n == 0, where + "n must divide d*r");
        total += f.d;
        if (f.poly) {
            require(f.poly->degree() == f.d, where + "degree does not match the polynomial");
            require(f.poly->is_monic(), where + "polynomial must be monic");
        }
        if (f.certificate) {
            require(kummer.has_value(), where + "certificate without a field");
            require(f.poly && kpoly_equal(f.certificate->poly, to_kpoly(kummer->a, kummer->n, *f.poly)),
                    where + "certificate is for a different polynomial");
            require(f.certificate->field == CertField::base, where + "certificate must be over k");
            const std::string why = verify_certificate(*kummer, *f.certificate);
            require(why.empty(), where + "certificate rejected: " + why);
        }
    }
    require(total % n == 0, "desc: total degree must be divisible by n");
    if (kummer) require(kummer->n == n, "desc: Kummer degree differs from n");
    const bool all_polys = std::all_of(factors.begin(), factors.end(), [](const FactorData& f) { return f.poly.has_value(); });
    if (all_polys) {
        RatPoly product = RatPoly::constant(1);
        for (const auto& f : factors) product = product * *f.poly;
        require(is_separable(product), "desc: product of the factors is not separable");
    }
}

ResidueProfile residue_profile(const NormicBundleDesc& desc, const std::vector<std::int64_t>& chis) {
    require(chis.size() == desc.factors.size(), "residue_profile: one character per factor expected");
    ResidueProfile out;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < chis.size(); ++i) {
        out.at_factors.push_back(mod(chis[i], desc.factors[i].r));
        s = mod(s + mod(desc.factors[i].d, desc.n) * mod(chis[i], desc.n), desc.n);
    }
    out.at_infinity = mod(-s, desc.n);
    return out;
}

bool BrauerPresentation::is_member(const GroupElement& x) const {
    if (!ambient.contains(x)) return false;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < functional.size(); ++i) s = mod(s + mod(functional[i], n) * x.coords[i], n);
    return s == 0;
}

GroupElement BrauerPresentation::project(const GroupElement& x) const {
    require(is_member(x), "project: tuple is not in the membership group");
    // solve lattice_basis * y = x with U B V = S
    const auto snf = smith_normal_form(lattice_basis);
    const Eigen::Index m = lattice_basis.rows();
    IntVector xv(m);
    for (Eigen::Index i = 0; i < m; ++i) xv(i) = x.coords[static_cast<std::size_t>(i)];
    IntVector ux = snf.U * xv, z(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        ensure(ux(i) % snf.S(i, i) == 0, "project: member outside the lattice");
        z(i) = ux(i) / snf.S(i, i);
    }
    const IntVector y = snf.V * z;
    return quotient.project(std::vector<std::int64_t>(y.data(), y.data() + y.size()));
}

BrauerPresentation compute_brauer(const NormicBundleDesc& desc) {
    desc.validate();
    BrauerPresentation out;
    out.n = desc.n;
    out.ambient = FinAbGroup(desc.splitting_degrees());
    out.functional = desc.degrees();
    const auto m = static_cast<Eigen::Index>(desc.factors.size());

    // {x in Z^m : sum d_i x_i = 0 mod n} as the projection of ker [d_1 .. d_m n]
    IntMatrix row(1, m + 1);
    for (Eigen::Index i = 0; i < m; ++i) row(0, i) = out.functional[static_cast<std::size_t>(i)];
    row(0, m) = desc.n;
    out.lattice_basis = integer_kernel(row).topRows(m);
    ensure(out.lattice_basis.cols() == m, "membership lattice has the wrong rank");

    const IntMatrix diag = relation_matrix(out.ambient);
    out.membership = canonical_form(subgroup_invariants(out.lattice_basis, diag)).group;

    out.kernel_generator = out.ambient.element(std::vector<std::int64_t>(static_cast<std::size_t>(m), 1));
    ensure(out.is_member(out.kernel_generator), "diagonal generator failed membership");
    out.kernel_order = element_order(out.ambient, out.kernel_generator);

    // relations among basis columns modulo diag(r) and the diagonal
    IntMatrix rels(m, m + 1);
    rels << diag, IntMatrix::Ones(m, 1);
    IntMatrix stacked(m, 2 * m + 1);
    stacked << out.lattice_basis, rels;
    out.quotient = cokernel(IntMatrix(integer_kernel(stacked).topRows(m)));
    ensure(out.quotient.group.order() * out.kernel_order == out.membership.order(), "quotient order mismatch");

    out.generator_lifting = desc.c == 1 || (desc.norm_witness && desc.kummer &&
                                            is_norm_constant(*desc.kummer, CycloElement(desc.kummer->a.conductor(), desc.c),
                                                             desc.norm_witness) == NormVerdict::yes);
    for (Eigen::Index i = 0; i < m; ++i) {
        std::vector<std::int64_t> e(static_cast<std::size_t>(m), 0);
        e[static_cast<std::size_t>(i)] = 1;
        const GroupElement g = out.ambient.element(e);
        if (out.is_member(g))
            out.generators.push_back(out.project(g));
        else
            out.generators.push_back(std::nullopt);
    }
    return out;
}

BrauerPresentation brauer_after_base_change(std::int64_t n, std::int64_t n_prime,
                                            const std::vector<std::pair<std::int64_t, std::int64_t>>& refined) {
    require(n >= 1 && n_prime >= 1 && n % n_prime == 0, "base change: n' must divide n");
    return compute_brauer(NormicBundleDesc::numeric(n_prime, refined));
}

bool membership_test(const NormicBundleDesc& desc, const std::vector<std::int64_t>& tuple) {
    require(tuple.size() == desc.factors.size(), "membership_test: tuple has the wrong length");
    auto test = [&](const std::vector<std::int64_t>& lift) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < lift.size(); ++i) s = mod(s + mod(desc.factors[i].d, desc.n) * mod(lift[i], desc.n), desc.n);
        return s == 0;
    };
    std::vector<std::int64_t> lift(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        require(desc.factors[i].r >= 1 && (desc.factors[i].d * desc.factors[i].r) % desc.n == 0,
                "membership_test: n must divide d_i r_i");
        lift[i] = mod(tuple[i], desc.factors[i].r);
    }
    const bool verdict = test(lift);
    for (std::size_t i = 0; i < lift.size(); ++i) {
        auto shifted = lift;
        shifted[i] += desc.factors[i].r;
        ensure(test(shifted) == verdict, "membership depends on the lift");
    }
    return verdict;
}

}  // namespace normic
